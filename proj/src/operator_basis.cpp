#include "entangle/operator_basis.hpp"

#include "entangle/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace entangle {

OperatorBasis::OperatorBasis(std::vector<Matrix> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) throw std::invalid_argument("OperatorBasis: empty basis");
    dim_ = static_cast<int>(elements_.front().rows());
    for (const Matrix& m : elements_) {
        if (m.rows() != dim_ || m.cols() != dim_) {
            throw std::invalid_argument("OperatorBasis: inconsistent element sizes");
        }
    }
}

OperatorBasis OperatorBasis::gell_mann(int dim) {
    if (dim < 2) throw std::invalid_argument("OperatorBasis::gell_mann: dim must be >= 2");
    std::vector<Matrix> els;
    els.reserve(static_cast<size_t>(dim) * dim);

    els.push_back(Matrix::Identity(dim, dim) / std::sqrt(static_cast<double>(dim)));

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < dim; ++j) {
        for (int k = j + 1; k < dim; ++k) {
            Matrix sym = Matrix::Zero(dim, dim);
            sym(j, k) = inv_sqrt2;
            sym(k, j) = inv_sqrt2;
            els.push_back(sym);

            Matrix asym = Matrix::Zero(dim, dim);
            asym(j, k) = cxd(0.0, -inv_sqrt2);
            asym(k, j) = cxd(0.0, inv_sqrt2);
            els.push_back(asym);
        }
    }
    for (int l = 1; l < dim; ++l) {
        Matrix diag = Matrix::Zero(dim, dim);
        const double norm = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
        for (int m = 0; m < l; ++m) diag(m, m) = norm;
        diag(l, l) = -static_cast<double>(l) * norm;
        els.push_back(diag);
    }
    return OperatorBasis(std::move(els));
}

bool OperatorBasis::is_valid(const ToleranceConfig& tol) const {
    if (size() != dim_ * dim_) return false;
    for (const Matrix& m : elements_) {
        if (!is_hermitian(m)) return false;
    }
    // First element proportional to the identity.
    const Matrix& first = elements_.front();
    const cxd lead = first(0, 0);
    if (std::abs(lead) < tol.zero) return false;
    if (max_abs(first - lead * Matrix::Identity(dim_, dim_)) > tol.zero) return false;
    // Gram matrix must be the identity.
    for (int i = 0; i < size(); ++i) {
        for (int j = i; j < size(); ++j) {
            const cxd g = (elements_[static_cast<size_t>(i)] * elements_[static_cast<size_t>(j)])
                              .trace();
            const double want = (i == j) ? 1.0 : 0.0;
            if (std::abs(g - want) > tol.zero) return false;
        }
    }
    return true;
}

RealMatrix realign_to_correlation(const Matrix& op, const OperatorBasis& basis_a,
                                  const OperatorBasis& basis_b, const ToleranceConfig& tol) {
    tol.validate();
    if (!basis_a.is_valid(tol) || !basis_b.is_valid(tol)) {
        throw std::invalid_argument(
            "realign_to_correlation: operator basis must be orthonormal, Hermitian, with "
            "identity-proportional first element");
    }
    const int m = basis_a.dim();
    const int n = basis_b.dim();
    if (op.rows() != static_cast<Eigen::Index>(m) * n || op.cols() != op.rows()) {
        throw std::invalid_argument("realign_to_correlation: operator size mismatch");
    }
    RealMatrix coeffs(m * m, n * n);
    for (int i = 0; i < m * m; ++i) {
        // Tr(op (Oi (x) Oj)) contracted without forming the Kronecker product.
        const Matrix& oa = basis_a[i];
        for (int j = 0; j < n * n; ++j) {
            const Matrix& ob = basis_b[j];
            cxd acc(0.0, 0.0);
            for (int a = 0; a < m; ++a)
                for (int ap = 0; ap < m; ++ap) {
                    if (oa(ap, a) == cxd(0.0, 0.0)) continue;
                    for (int b = 0; b < n; ++b)
                        for (int bp = 0; bp < n; ++bp) {
                            acc += op(static_cast<Eigen::Index>(a) * n + b,
                                      static_cast<Eigen::Index>(ap) * n + bp) *
                                   oa(ap, a) * ob(bp, b);
                        }
                }
            coeffs(i, j) = acc.real();
        }
    }
    return coeffs;
}

RealMatrix realign_to_correlation(const BipartiteState& state, const ToleranceConfig& tol) {
    return realign_to_correlation(state.rho, OperatorBasis::gell_mann(state.dim_a),
                                  OperatorBasis::gell_mann(state.dim_b), tol);
}

Matrix reconstruct_from_correlation(const RealMatrix& coeffs, const OperatorBasis& basis_a,
                                    const OperatorBasis& basis_b) {
    const int m = basis_a.dim();
    const int n = basis_b.dim();
    if (coeffs.rows() != m * m || coeffs.cols() != n * n) {
        throw std::invalid_argument("reconstruct_from_correlation: coefficient size mismatch");
    }
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(m) * n, static_cast<Eigen::Index>(m) * n);
    for (int i = 0; i < m * m; ++i)
        for (int j = 0; j < n * n; ++j) {
            if (coeffs(i, j) == 0.0) continue;
            out += coeffs(i, j) * kron(basis_a[i], basis_b[j]);
        }
    return out;
}

}  // namespace entangle
