#pragma once

#include "entangle/types.hpp"

#include <utility>

namespace entangle {

enum class Subsystem { A, B };

/// Bipartite density matrix with declared local dimensions (M, N).
/// rho acts on C^M (x) C^N with row index a*N + b.
/// The usual convention is M <= N; either order is accepted.
struct BipartiteState {
    int dim_a = 0;
    int dim_b = 0;
    Matrix rho;

    BipartiteState() = default;
    BipartiteState(int m, int n, Matrix r) : dim_a(m), dim_b(n), rho(std::move(r)) {}

    int dim() const { return dim_a * dim_b; }

    /// Hermitian, lambda_min >= -tol.psd, |Tr rho - 1| <= 1e-9, sizes consistent.
    void validate(const ToleranceConfig& tol = {}) const;
};

/// Pair of normalized local vectors (e, f); the product vector |e,f> = e (x) f.
struct ProductVector {
    Vector e;
    Vector f;

    ProductVector() = default;
    ProductVector(Vector ee, Vector ff) : e(std::move(ee)), f(std::move(ff)) {}

    Vector kron() const;

    /// |e*, f>: conjugate on the first factor (the partial-transpose companion).
    ProductVector conjugate_a() const { return {e.conjugate(), f}; }

    void validate(const ToleranceConfig& tol = {}) const;
};

/// Normalized e (x) f as a projector matrix.
Matrix product_projector(const ProductVector& pv);

}  // namespace entangle
