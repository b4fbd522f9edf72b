#include "entangle/tensor.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace entangle {

namespace {

void check_dims(const Matrix& rho, int dim_a, int dim_b, const std::string& who) {
    if (dim_a < 1 || dim_b < 1) throw std::invalid_argument(who + ": dimensions must be positive");
    const Eigen::Index d = static_cast<Eigen::Index>(dim_a) * dim_b;
    if (rho.rows() != d || rho.cols() != d) {
        throw std::invalid_argument(who + ": matrix is " + std::to_string(rho.rows()) + "x" +
                                    std::to_string(rho.cols()) + ", expected " + std::to_string(d) +
                                    "x" + std::to_string(d) + " from (" + std::to_string(dim_a) +
                                    ", " + std::to_string(dim_b) + ")");
    }
}

long checked_power(long base, int exp, long cap) {
    long v = 1;
    for (int i = 0; i < exp; ++i) {
        v *= base;
        if (v > cap) return cap + 1;
    }
    return v;
}

}  // namespace

Matrix partial_transpose(const Matrix& rho, int dim_a, int dim_b, Subsystem which) {
    check_dims(rho, dim_a, dim_b, "partial_transpose");
    Matrix out(rho.rows(), rho.cols());
    for (int i = 0; i < dim_a; ++i)
        for (int j = 0; j < dim_a; ++j)
            for (int k = 0; k < dim_b; ++k)
                for (int l = 0; l < dim_b; ++l) {
                    const Eigen::Index row = static_cast<Eigen::Index>(i) * dim_b + k;
                    const Eigen::Index col = static_cast<Eigen::Index>(j) * dim_b + l;
                    // <ik| rho^TA |jl> = <jk| rho |il>,  <ik| rho^TB |jl> = <il| rho |jk>
                    if (which == Subsystem::A) {
                        out(row, col) = rho(static_cast<Eigen::Index>(j) * dim_b + k,
                                            static_cast<Eigen::Index>(i) * dim_b + l);
                    } else {
                        out(row, col) = rho(static_cast<Eigen::Index>(i) * dim_b + l,
                                            static_cast<Eigen::Index>(j) * dim_b + k);
                    }
                }
    return out;
}

Matrix partial_transpose(const BipartiteState& state, Subsystem which) {
    return partial_transpose(state.rho, state.dim_a, state.dim_b, which);
}

Matrix partial_trace(const Matrix& rho, int dim_a, int dim_b, Subsystem traced) {
    check_dims(rho, dim_a, dim_b, "partial_trace");
    if (traced == Subsystem::B) {
        Matrix out = Matrix::Zero(dim_a, dim_a);
        for (int i = 0; i < dim_a; ++i)
            for (int j = 0; j < dim_a; ++j)
                for (int k = 0; k < dim_b; ++k)
                    out(i, j) += rho(static_cast<Eigen::Index>(i) * dim_b + k,
                                     static_cast<Eigen::Index>(j) * dim_b + k);
        return out;
    }
    Matrix out = Matrix::Zero(dim_b, dim_b);
    for (int k = 0; k < dim_b; ++k)
        for (int l = 0; l < dim_b; ++l)
            for (int i = 0; i < dim_a; ++i)
                out(k, l) += rho(static_cast<Eigen::Index>(i) * dim_b + k,
                                 static_cast<Eigen::Index>(i) * dim_b + l);
    return out;
}

Matrix partial_trace(const BipartiteState& state, Subsystem traced) {
    return partial_trace(state.rho, state.dim_a, state.dim_b, traced);
}

Matrix tensor_product_regrouped(const std::vector<Matrix>& factors, int dim_a, int dim_b) {
    if (factors.empty()) throw std::invalid_argument("tensor_product_regrouped: no factors");
    const int copies = static_cast<int>(factors.size());
    for (const Matrix& m : factors) check_dims(m, dim_a, dim_b, "tensor_product_regrouped");

    const long cap = dimension_cap();
    const long total = checked_power(static_cast<long>(dim_a) * dim_b, copies, cap);
    if (total > cap) {
        throw std::invalid_argument("tensor_product_regrouped: (M*N)^K exceeds dimension cap " +
                                    std::to_string(cap) + " (set ENTANGLE_MAX_DIM to raise it)");
    }

    const long da = checked_power(dim_a, copies, cap);
    const long db = checked_power(dim_b, copies, cap);
    const long dim = da * db;

    // Composite index: (a_1..a_K, b_1..b_K) with copy 1 slowest on each side.
    std::vector<int> a(copies), ap(copies), b(copies), bp(copies);
    Matrix out(dim, dim);
    for (long row = 0; row < dim; ++row) {
        long ra = row / db, rb = row % db;
        for (int k = copies - 1; k >= 0; --k) {
            a[k] = static_cast<int>(ra % dim_a);
            ra /= dim_a;
            b[k] = static_cast<int>(rb % dim_b);
            rb /= dim_b;
        }
        for (long col = 0; col < dim; ++col) {
            long ca = col / db, cb = col % db;
            for (int k = copies - 1; k >= 0; --k) {
                ap[k] = static_cast<int>(ca % dim_a);
                ca /= dim_a;
                bp[k] = static_cast<int>(cb % dim_b);
                cb /= dim_b;
            }
            cxd v(1.0, 0.0);
            for (int k = 0; k < copies; ++k) {
                v *= factors[static_cast<size_t>(k)](
                    static_cast<Eigen::Index>(a[k]) * dim_b + b[k],
                    static_cast<Eigen::Index>(ap[k]) * dim_b + bp[k]);
                if (v == cxd(0.0, 0.0)) break;
            }
            out(row, col) = v;
        }
    }
    return out;
}

Matrix tensor_power(const Matrix& m, int copies, int dim_a, int dim_b) {
    if (copies < 1) throw std::invalid_argument("tensor_power: copies must be >= 1");
    return tensor_product_regrouped(std::vector<Matrix>(static_cast<size_t>(copies), m), dim_a,
                                    dim_b);
}

Vector apply_tensor_power(const Matrix& m, int copies, int dim_a, int dim_b, const Vector& psi) {
    if (copies < 1) throw std::invalid_argument("apply_tensor_power: copies must be >= 1");
    check_dims(m, dim_a, dim_b, "apply_tensor_power");
    const long cap = dimension_cap();
    const long da = checked_power(dim_a, copies, cap);
    const long db = checked_power(dim_b, copies, cap);
    if (da * db > cap || psi.size() != da * db) {
        throw std::invalid_argument("apply_tensor_power: vector size mismatch or cap exceeded");
    }

    // Contract one copy at a time. Copy k (copy 0 slowest) has digit strides
    // dim_a^(K-1-k) on the Alice side and dim_b^(K-1-k) on Bob's.
    Vector cur = psi;
    Vector next(psi.size());
    for (int k = 0; k < copies; ++k) {
        long stride_a = 1, stride_b = 1;
        for (int s = 0; s < copies - 1 - k; ++s) {
            stride_a *= dim_a;
            stride_b *= dim_b;
        }
        next.setZero();
        for (long ia = 0; ia < da; ++ia) {
            const int ak = static_cast<int>((ia / stride_a) % dim_a);
            const long base_a = ia - static_cast<long>(ak) * stride_a;
            for (long ib = 0; ib < db; ++ib) {
                const int bk = static_cast<int>((ib / stride_b) % dim_b);
                const long base_b = ib - static_cast<long>(bk) * stride_b;
                cxd acc(0.0, 0.0);
                for (int apk = 0; apk < dim_a; ++apk) {
                    for (int bpk = 0; bpk < dim_b; ++bpk) {
                        const cxd coef = m(static_cast<Eigen::Index>(ak) * dim_b + bk,
                                           static_cast<Eigen::Index>(apk) * dim_b + bpk);
                        if (coef == cxd(0.0, 0.0)) continue;
                        const long ja = base_a + static_cast<long>(apk) * stride_a;
                        const long jb = base_b + static_cast<long>(bpk) * stride_b;
                        acc += coef * cur[ja * db + jb];
                    }
                }
                next[ia * db + ib] = acc;
            }
        }
        cur.swap(next);
    }
    return cur;
}

KernelInfo numerical_kernel(const Matrix& m, const ToleranceConfig& tol) {
    tol.validate();
    require_square(m, "numerical_kernel");
    require_hermitian(m, "numerical_kernel");

    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("numerical_kernel: eigendecomposition failed");
    }
    const RealVector evals = solver.eigenvalues();
    const double scale = evals.cwiseAbs().maxCoeff();
    const double cutoff = tol.rank * scale;

    KernelInfo info;
    std::vector<Eigen::Index> kernel_cols;
    for (Eigen::Index i = 0; i < evals.size(); ++i) {
        if (std::abs(evals[i]) > cutoff) {
            ++info.rank;
        } else {
            kernel_cols.push_back(i);
        }
    }
    info.kernel_basis.resize(m.rows(), static_cast<Eigen::Index>(kernel_cols.size()));
    for (size_t c = 0; c < kernel_cols.size(); ++c) {
        info.kernel_basis.col(static_cast<Eigen::Index>(c)) =
            solver.eigenvectors().col(kernel_cols[c]);
    }
    info.kernel_projector = info.kernel_basis * info.kernel_basis.adjoint();
    if (info.kernel_projector.size() == 0) {
        info.kernel_projector = Matrix::Zero(m.rows(), m.cols());
    }
    return info;
}

RealVector hermitian_eigenvalues(const Matrix& m) {
    require_square(m, "hermitian_eigenvalues");
    require_hermitian(m, "hermitian_eigenvalues");
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

double min_eigenvalue(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double max_eigenvalue(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().maxCoeff();
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Vector kron(const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a[i] * b;
    return out;
}

}  // namespace entangle
