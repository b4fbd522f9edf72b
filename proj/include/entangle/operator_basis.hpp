#pragma once

#include "entangle/state.hpp"
#include "entangle/types.hpp"

#include <vector>

namespace entangle {

/// Orthonormal Hermitian operator basis under the trace inner product,
/// first element proportional to the identity.
class OperatorBasis {
  public:
    /// identity/sqrt(d) plus the generalized Gell-Mann matrices (symmetric,
    /// antisymmetric and diagonal families), normalized to Tr(Oi Oj) = delta_ij.
    static OperatorBasis gell_mann(int dim);

    /// Custom basis; validated lazily by realign_to_correlation.
    explicit OperatorBasis(std::vector<Matrix> elements);

    int dim() const { return dim_; }
    int size() const { return static_cast<int>(elements_.size()); }
    const Matrix& operator[](int i) const { return elements_[static_cast<size_t>(i)]; }
    const std::vector<Matrix>& elements() const { return elements_; }

    /// Gram matrix deviates from identity by at most tol.zero, all elements
    /// Hermitian, first element proportional to identity.
    bool is_valid(const ToleranceConfig& tol = {}) const;

  private:
    int dim_ = 0;
    std::vector<Matrix> elements_;
};

/// Coefficient matrix R[i][j] = Tr(op (Oi^A (x) Oj^B)), size M^2 x N^2.
/// Reconstruction sum_ij R[i][j] Oi^A (x) Oj^B reproduces op.
/// Rejects bases whose Gram matrix deviates from the identity beyond tol.zero.
RealMatrix realign_to_correlation(const Matrix& op, const OperatorBasis& basis_a,
                                  const OperatorBasis& basis_b, const ToleranceConfig& tol = {});
RealMatrix realign_to_correlation(const BipartiteState& state, const ToleranceConfig& tol = {});

/// Inverse of realign_to_correlation: rebuild the operator from coefficients.
Matrix reconstruct_from_correlation(const RealMatrix& coeffs, const OperatorBasis& basis_a,
                                    const OperatorBasis& basis_b);

}  // namespace entangle
