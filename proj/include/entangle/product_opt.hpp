#pragma once

#include "entangle/state.hpp"
#include "entangle/types.hpp"

#include <cstdint>
#include <vector>

namespace entangle {

enum class Direction { Maximize, Minimize };

struct ProductOptResult {
    double value = 0.0;            // best <e,f|H|e,f> found
    ProductVector argbest;         // attaining product vector
    int restarts_used = 0;
    double converged_fraction = 0.0;  // restarts landing within tol of the best
    double certified_upper_bound = 0.0;  // lambda_max(H): true max never exceeds this
    double certified_lower_bound = 0.0;  // lambda_min(H): true min never below this
};

struct ProductOptOptions {
    int restarts = 512;
    std::uint64_t seed = 0;
    int max_iterations = 500;
    double convergence_tol = 1e-12;  // stop when the overlap change is below this
    /// Per-restart escape retries: after the iteration converges, kick the
    /// point by a seeded perturbation of this magnitude and re-iterate,
    /// keeping the result only when it improves.
    int hops = 8;
    double hop_magnitude = 1.0;
    /// Extra starting points (e.g. the product terms of a known mixture);
    /// always iterated in addition to the random restarts.
    std::vector<ProductVector> initial_candidates;
};

/// Extremize <e,f|H|e,f> over normalized product vectors by alternating
/// eigen-iteration: with e fixed, the optimal f is the extremal eigenvector of
/// the compressed N x N operator B(e) = <e|H|e>, and symmetrically for e.
/// Each half-step solves its subproblem exactly and hop retries are accepted
/// only on improvement, so the running best within a restart is monotone.
/// Multi-restart from Haar-random product starts; results are heuristic (no
/// global certificate) but deterministic for a fixed seed.
ProductOptResult extremize_product_overlap(const Matrix& h, int dim_a, int dim_b,
                                           Direction direction, const ProductOptOptions& opts = {},
                                           const ToleranceConfig& tol = {});

}  // namespace entangle
