#pragma once

#include "entangle/state.hpp"
#include "entangle/types.hpp"

#include <vector>

namespace entangle {

/// rho^TA or rho^TB; Hermitian and trace preserving, spectrum basis-independent.
Matrix partial_transpose(const Matrix& rho, int dim_a, int dim_b, Subsystem which);
Matrix partial_transpose(const BipartiteState& state, Subsystem which);

/// Tr_A rho or Tr_B rho: reduced density matrix of the subsystem that is kept.
/// `traced` names the subsystem that is summed over.
Matrix partial_trace(const Matrix& rho, int dim_a, int dim_b, Subsystem traced);
Matrix partial_trace(const BipartiteState& state, Subsystem traced);

/// Regrouped tensor product of bipartite operators: factors m_k on M x N spaces
/// combine into an operator on (M^K) x (N^K) with all Alice copies grouped
/// together and all Bob copies grouped together. Copy 1 is the slowest-varying
/// index on each side, i.e. the Alice composite index is
///   a_1 * M^(K-1) + ... + a_K.
Matrix tensor_product_regrouped(const std::vector<Matrix>& factors, int dim_a, int dim_b);

/// K-fold regrouped tensor power of a single bipartite operator.
/// Throws when (M*N)^K exceeds dimension_cap().
Matrix tensor_power(const Matrix& m, int copies, int dim_a, int dim_b);

/// Apply m^(x)K to a vector on the regrouped space without materializing the
/// K-copy matrix: one single-copy contraction per copy.
Vector apply_tensor_power(const Matrix& m, int copies, int dim_a, int dim_b, const Vector& psi);

struct KernelInfo {
    int rank = 0;
    Matrix kernel_basis;      // columns span the kernel (size d x (d - rank))
    Matrix kernel_projector;  // orthogonal projector onto the kernel
};

/// Spectral kernel/rank of a Hermitian matrix. An eigenvalue counts toward the
/// rank when |lambda| > tol.rank * max|lambda|; the cutoff is relative so
/// unnormalized intermediates behave the same as states.
KernelInfo numerical_kernel(const Matrix& m, const ToleranceConfig& tol = {});

/// Eigenvalues of a Hermitian matrix, ascending.
RealVector hermitian_eigenvalues(const Matrix& m);

double min_eigenvalue(const Matrix& m);
double max_eigenvalue(const Matrix& m);

/// Kronecker product (no regrouping): rows indexed (i_a * cols_b + i_b).
Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

}  // namespace entangle
