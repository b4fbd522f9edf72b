#pragma once

#include "entangle/product_opt.hpp"
#include "entangle/state.hpp"
#include "entangle/types.hpp"

namespace entangle {

enum class WitnessConstruction { Edge, Lemma1 };

/// Hermitian witness with the sign contract Tr(E rho_sep) >= 0 and
/// Tr(E rho) < 0 for the target state. epsilon and confidence describe the
/// heuristic product-overlap minimization the construction rests on.
struct WitnessOperator {
    Matrix e_matrix;
    int dim_a = 0;
    int dim_b = 0;
    double epsilon = 0.0;  // subtracted offset (edge construction)
    double r = 0.0;        // best product overlap (lemma1 construction)
    WitnessConstruction construction = WitnessConstruction::Edge;
    double confidence = 0.0;  // converged fraction of the underlying optimization
    bool degenerate = false;  // epsilon <= tol.zero: construction carries no weight
};

/// Edge-state witness E = P_K(rho) + (P_K(rho^TA))^TA - epsilon * 1, with
/// epsilon the minimal product overlap of the first two terms. The "- epsilon"
/// is read as "- epsilon * identity". A nonpositive epsilon marks the witness
/// degenerate (e.g. full-rank input states, where both kernels vanish).
WitnessOperator build_edge_witness(const BipartiteState& state, const ProductOptOptions& opts = {},
                                   const ToleranceConfig& tol = {});

/// Trace-criterion witness X = 1 - rho / r with r the best product overlap.
/// Requires the trace criterion to hold (max trace quantity > r); otherwise
/// the construction is refused.
WitnessOperator build_lemma1_witness(const BipartiteState& state,
                                     const ProductOptOptions& opts = {},
                                     const ToleranceConfig& tol = {});

/// Tr(E rho). Throws on dimension mismatch.
double evaluate_witness(const WitnessOperator& w, const BipartiteState& state);
double evaluate_witness(const WitnessOperator& w, const Matrix& rho);

}  // namespace entangle
