#pragma once

#include "entangle/state.hpp"
#include "entangle/types.hpp"

#include <array>
#include <cstdint>

namespace entangle {

/// Werner-family parameters on N x N: rho(alpha) = (P_S + alpha P_A) / m(alpha),
/// with beta = N (alpha - 1) / (alpha + 1) parametrizing the partial transpose
/// (1 - beta P) / n(beta). Valid ranges: alpha >= 0, -N <= beta <= N.
struct WernerParams {
    int n = 2;
    double alpha = 1.0;

    double beta() const { return n * (alpha - 1.0) / (alpha + 1.0); }

    /// m(alpha) = dim(P_S) + alpha dim(P_A); fixes Tr rho = 1.
    double normalization() const {
        return n * (n + 1) / 2.0 + alpha * n * (n - 1) / 2.0;
    }

    static WernerParams from_beta(int n, double beta);

    void validate() const;
};

/// Flip operator V = sum_ij |ij><ji| on N x N; P_S = (1+V)/2, P_A = (1-V)/2.
Matrix flip_operator(int n);

/// |Psi_max> = sum_i |ii> / sqrt(m).
Vector max_entangled(int m);

/// Projector onto |Psi_max> on m x m.
Matrix max_entangled_projector(int m);

BipartiteState werner_state(const WernerParams& params);

/// (1 - beta P) / n(beta) with n(beta) = N^2 - beta. Hermitian; not PSD for
/// beta > 1. Equals partial_transpose(werner_state) for matching parameters.
Matrix werner_pt(int n, double beta);

/// Unnormalized single-copy operator 1 - beta P, the K-copy building block.
Matrix werner_pt_numerator(int n, double beta);

/// The five 3x3 "tiles" unextendible product basis vectors.
std::array<ProductVector, 5> tiles_upb_vectors();

/// rho = (1 - sum_i |e_i,f_i><e_i,f_i|) / 4 on 3x3: rank 4, PPT, invariant
/// under partial transposition on B, entangled.
BipartiteState tiles_upb_state();

/// Reproducible random state of the given rank: rho = G G^dag / Tr(G G^dag)
/// with complex Gaussian G of shape (mn, rank).
BipartiteState random_state(int m, int n, int rank, std::uint64_t seed);

ProductVector random_product_vector(int m, int n, std::uint64_t seed);

/// Convex mixture of `terms` random product-vector projectors, separable by
/// construction. Weights drawn uniformly on the simplex.
BipartiteState random_separable_state(int m, int n, int terms, std::uint64_t seed);

}  // namespace entangle
