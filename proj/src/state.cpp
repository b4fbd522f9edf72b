#include "entangle/state.hpp"

#include "entangle/tensor.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace entangle {

void BipartiteState::validate(const ToleranceConfig& tol) const {
    tol.validate();
    if (dim_a < 2 || dim_b < 2) {
        throw std::invalid_argument("BipartiteState: local dimensions must be >= 2");
    }
    if (rho.rows() != dim() || rho.cols() != dim()) {
        throw std::invalid_argument("BipartiteState: matrix is " + std::to_string(rho.rows()) +
                                    "x" + std::to_string(rho.cols()) + " but dim_a*dim_b = " +
                                    std::to_string(dim()));
    }
    if (!is_hermitian(rho)) {
        throw std::invalid_argument("BipartiteState: density matrix must be Hermitian");
    }
    if (std::abs(rho.trace().real() - 1.0) > 1e-9 || std::abs(rho.trace().imag()) > 1e-9) {
        throw std::invalid_argument("BipartiteState: trace must be 1");
    }
    if (min_eigenvalue(rho) < -tol.psd) {
        throw std::invalid_argument("BipartiteState: density matrix must be positive semidefinite");
    }
}

Vector ProductVector::kron() const {
    Vector out(e.size() * f.size());
    for (Eigen::Index i = 0; i < e.size(); ++i) {
        out.segment(i * f.size(), f.size()) = e[i] * f;
    }
    return out;
}

void ProductVector::validate(const ToleranceConfig& tol) const {
    tol.validate();
    if (e.size() == 0 || f.size() == 0) {
        throw std::invalid_argument("ProductVector: empty factor");
    }
    if (std::abs(e.norm() - 1.0) > tol.zero || std::abs(f.norm() - 1.0) > tol.zero) {
        throw std::invalid_argument("ProductVector: factors must be normalized");
    }
}

Matrix product_projector(const ProductVector& pv) {
    const Vector v = pv.kron();
    return v * v.adjoint();
}

}  // namespace entangle
