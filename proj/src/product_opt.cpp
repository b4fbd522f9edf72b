#include "entangle/product_opt.hpp"

#include "entangle/rng.hpp"
#include "entangle/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace entangle {

namespace {

// B(e)_{kl} = sum_{ij} conj(e_i) H[(i,k),(j,l)] e_j, the N x N compression.
Matrix compress_on_a(const Matrix& h, const Vector& e, int dim_a, int dim_b) {
    Matrix b = Matrix::Zero(dim_b, dim_b);
    for (int i = 0; i < dim_a; ++i)
        for (int j = 0; j < dim_a; ++j) {
            const cxd w = std::conj(e[i]) * e[j];
            if (w == cxd(0.0, 0.0)) continue;
            for (int k = 0; k < dim_b; ++k)
                for (int l = 0; l < dim_b; ++l) {
                    b(k, l) += w * h(static_cast<Eigen::Index>(i) * dim_b + k,
                                     static_cast<Eigen::Index>(j) * dim_b + l);
                }
        }
    return b;
}

// A(f)_{ij} = sum_{kl} conj(f_k) H[(i,k),(j,l)] f_l, the M x M compression.
Matrix compress_on_b(const Matrix& h, const Vector& f, int dim_a, int dim_b) {
    Matrix a = Matrix::Zero(dim_a, dim_a);
    for (int k = 0; k < dim_b; ++k)
        for (int l = 0; l < dim_b; ++l) {
            const cxd w = std::conj(f[k]) * f[l];
            if (w == cxd(0.0, 0.0)) continue;
            for (int i = 0; i < dim_a; ++i)
                for (int j = 0; j < dim_a; ++j) {
                    a(i, j) += w * h(static_cast<Eigen::Index>(i) * dim_b + k,
                                     static_cast<Eigen::Index>(j) * dim_b + l);
                }
        }
    return a;
}

Vector extremal_eigenvector(const Matrix& m, Direction direction) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    const Eigen::Index idx =
        direction == Direction::Maximize ? solver.eigenvalues().size() - 1 : 0;
    return solver.eigenvectors().col(idx);
}

double overlap(const Matrix& h, const ProductVector& pv) {
    const Vector v = pv.kron();
    return (v.adjoint() * h * v)(0, 0).real();
}

struct LocalRun {
    double value = 0.0;
    ProductVector arg;
};

LocalRun iterate_from(const Matrix& h, int dim_a, int dim_b, Direction direction,
                      ProductVector start, const ProductOptOptions& opts) {
    LocalRun run;
    run.arg = std::move(start);
    run.value = overlap(h, run.arg);
    for (int it = 0; it < opts.max_iterations; ++it) {
        run.arg.f = extremal_eigenvector(compress_on_a(h, run.arg.e, dim_a, dim_b), direction);
        run.arg.e = extremal_eigenvector(compress_on_b(h, run.arg.f, dim_a, dim_b), direction);
        const double v = overlap(h, run.arg);
        if (std::abs(v - run.value) < opts.convergence_tol) {
            run.value = v;
            break;
        }
        run.value = v;
    }
    return run;
}

// One restart: alternating iteration plus monotone-accepted escape kicks.
LocalRun run_from(const Matrix& h, int dim_a, int dim_b, Direction direction, ProductVector start,
                  const ProductOptOptions& opts, Rng& rng) {
    LocalRun best = iterate_from(h, dim_a, dim_b, direction, std::move(start), opts);
    const bool maximize = direction == Direction::Maximize;
    for (int hop = 0; hop < opts.hops; ++hop) {
        ProductVector kicked{
            (best.arg.e + opts.hop_magnitude * rng.unit_vector(dim_a)).normalized(),
            (best.arg.f + opts.hop_magnitude * rng.unit_vector(dim_b)).normalized()};
        LocalRun cand = iterate_from(h, dim_a, dim_b, direction, std::move(kicked), opts);
        const bool better = maximize ? cand.value > best.value + opts.convergence_tol
                                     : cand.value < best.value - opts.convergence_tol;
        if (better) best = std::move(cand);
    }
    return best;
}

}  // namespace

ProductOptResult extremize_product_overlap(const Matrix& h, int dim_a, int dim_b,
                                           Direction direction, const ProductOptOptions& opts,
                                           const ToleranceConfig& tol) {
    tol.validate();
    if (opts.restarts < 1) {
        throw std::invalid_argument("extremize_product_overlap: restarts must be >= 1");
    }
    if (h.rows() != static_cast<Eigen::Index>(dim_a) * dim_b || h.rows() != h.cols()) {
        throw std::invalid_argument("extremize_product_overlap: operator size mismatch");
    }
    require_hermitian(h, "extremize_product_overlap");

    const RealVector spectrum = hermitian_eigenvalues(h);

    std::vector<double> values;
    values.reserve(static_cast<size_t>(opts.restarts) + opts.initial_candidates.size());

    ProductOptResult result;
    result.certified_upper_bound = spectrum[spectrum.size() - 1];
    result.certified_lower_bound = spectrum[0];

    const bool maximize = direction == Direction::Maximize;
    bool have_best = false;
    auto consider = [&](const LocalRun& run) {
        values.push_back(run.value);
        const bool better = maximize ? run.value > result.value : run.value < result.value;
        if (!have_best || better) {
            result.value = run.value;
            result.argbest = run.arg;
            have_best = true;
        }
    };

    std::uint64_t start_index = 0;
    for (const ProductVector& cand : opts.initial_candidates) {
        Rng rng(derive_seed(opts.seed ^ 0xCA4D1DA7E5ULL, start_index++));
        ProductVector pv = cand;
        pv.e.normalize();
        pv.f.normalize();
        consider(run_from(h, dim_a, dim_b, direction, std::move(pv), opts, rng));
    }
    for (int r = 0; r < opts.restarts; ++r) {
        Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(r)));
        ProductVector pv{rng.unit_vector(dim_a), rng.unit_vector(dim_b)};
        consider(run_from(h, dim_a, dim_b, direction, std::move(pv), opts, rng));
    }

    result.restarts_used = static_cast<int>(values.size());
    const double near = 1e-9 * (1.0 + std::abs(result.value));
    int close = 0;
    for (double v : values) {
        if (std::abs(v - result.value) <= near) ++close;
    }
    result.converged_fraction = static_cast<double>(close) / static_cast<double>(values.size());
    return result;
}

}  // namespace entangle
