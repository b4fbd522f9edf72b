#include "entangle/states.hpp"

#include "entangle/rng.hpp"
#include "entangle/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace entangle {

WernerParams WernerParams::from_beta(int n, double beta) {
    if (n < 2) throw std::invalid_argument("WernerParams: N must be >= 2");
    if (beta < -n || beta >= n) {
        throw std::invalid_argument("WernerParams: beta must lie in [-N, N)");
    }
    WernerParams p;
    p.n = n;
    p.alpha = (n + beta) / (n - beta);
    return p;
}

void WernerParams::validate() const {
    if (n < 2) throw std::invalid_argument("WernerParams: N must be >= 2");
    if (alpha < 0.0) throw std::invalid_argument("WernerParams: alpha must be >= 0");
}

Matrix flip_operator(int n) {
    Matrix v = Matrix::Zero(static_cast<Eigen::Index>(n) * n, static_cast<Eigen::Index>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            v(static_cast<Eigen::Index>(i) * n + j, static_cast<Eigen::Index>(j) * n + i) = 1.0;
        }
    return v;
}

Vector max_entangled(int m) {
    if (m < 2) throw std::invalid_argument("max_entangled: dimension must be >= 2");
    Vector psi = Vector::Zero(static_cast<Eigen::Index>(m) * m);
    const double amp = 1.0 / std::sqrt(static_cast<double>(m));
    for (int i = 0; i < m; ++i) psi[static_cast<Eigen::Index>(i) * m + i] = amp;
    return psi;
}

Matrix max_entangled_projector(int m) {
    const Vector psi = max_entangled(m);
    return psi * psi.adjoint();
}

BipartiteState werner_state(const WernerParams& params) {
    params.validate();
    const int n = params.n;
    const Matrix v = flip_operator(n);
    const Matrix id = Matrix::Identity(v.rows(), v.cols());
    const Matrix p_sym = 0.5 * (id + v);
    const Matrix p_asym = 0.5 * (id - v);
    return BipartiteState(n, n, (p_sym + params.alpha * p_asym) / params.normalization());
}

Matrix werner_pt_numerator(int n, double beta) {
    if (n < 2) throw std::invalid_argument("werner_pt: N must be >= 2");
    const Eigen::Index d = static_cast<Eigen::Index>(n) * n;
    return Matrix::Identity(d, d) - beta * max_entangled_projector(n);
}

Matrix werner_pt(int n, double beta) {
    const double norm = static_cast<double>(n) * n - beta;
    if (norm <= 0.0) throw std::invalid_argument("werner_pt: normalization N^2 - beta <= 0");
    return werner_pt_numerator(n, beta) / norm;
}

std::array<ProductVector, 5> tiles_upb_vectors() {
    const double s = 1.0 / std::sqrt(2.0);
    const double t = 1.0 / std::sqrt(3.0);
    auto vec3 = [](double x, double y, double z) {
        Vector v(3);
        v << cxd(x, 0), cxd(y, 0), cxd(z, 0);
        return v;
    };
    // |0>(|0>-|1>), |2>(|1>-|2>), (|0>-|1>)|2>, (|1>-|2>)|0>, (|0>+|1>+|2>)^(x)2 / 3.
    return {
        ProductVector(vec3(1, 0, 0), s * vec3(1, -1, 0)),
        ProductVector(vec3(0, 0, 1), s * vec3(0, 1, -1)),
        ProductVector(s * vec3(1, -1, 0), vec3(0, 0, 1)),
        ProductVector(s * vec3(0, 1, -1), vec3(1, 0, 0)),
        ProductVector(t * vec3(1, 1, 1), t * vec3(1, 1, 1)),
    };
}

BipartiteState tiles_upb_state() {
    Matrix p = Matrix::Identity(9, 9);
    for (const ProductVector& pv : tiles_upb_vectors()) {
        p -= product_projector(pv);
    }
    return BipartiteState(3, 3, p / 4.0);
}

BipartiteState random_state(int m, int n, int rank, std::uint64_t seed) {
    if (m < 2 || n < 2) throw std::invalid_argument("random_state: dimensions must be >= 2");
    if (rank < 1 || rank > m * n) {
        throw std::invalid_argument("random_state: rank must lie in [1, m*n]");
    }
    Rng rng(seed);
    const Eigen::Index d = static_cast<Eigen::Index>(m) * n;
    Matrix g(d, rank);
    for (Eigen::Index i = 0; i < d; ++i)
        for (int j = 0; j < rank; ++j) g(i, j) = rng.cnormal();
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return BipartiteState(m, n, std::move(rho));
}

ProductVector random_product_vector(int m, int n, std::uint64_t seed) {
    Rng rng(seed);
    Vector e = rng.unit_vector(m);
    Vector f = rng.unit_vector(n);
    return {std::move(e), std::move(f)};
}

BipartiteState random_separable_state(int m, int n, int terms, std::uint64_t seed) {
    if (terms < 1) throw std::invalid_argument("random_separable_state: terms must be >= 1");
    Rng rng(seed);
    const Eigen::Index d = static_cast<Eigen::Index>(m) * n;
    Matrix rho = Matrix::Zero(d, d);
    double total = 0.0;
    std::vector<double> weights(static_cast<size_t>(terms));
    for (double& w : weights) {
        w = -std::log(1.0 - rng.uniform());  // exponential: uniform on the simplex
        total += w;
    }
    for (int t = 0; t < terms; ++t) {
        ProductVector pv{rng.unit_vector(m), rng.unit_vector(n)};
        rho += (weights[static_cast<size_t>(t)] / total) * product_projector(pv);
    }
    return BipartiteState(m, n, std::move(rho));
}

}  // namespace entangle
