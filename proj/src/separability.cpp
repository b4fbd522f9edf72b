#include "entangle/separability.hpp"

#include "entangle/operator_basis.hpp"
#include "entangle/rng.hpp"
#include "entangle/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entangle {

std::string to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::SeparableCertified: return "separable_certified";
        case VerdictStatus::EntangledCertified: return "entangled_certified";
        case VerdictStatus::EntangledHeuristic: return "entangled_heuristic";
        case VerdictStatus::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

Verdict ppt_check(const BipartiteState& state, const ToleranceConfig& tol) {
    tol.validate();
    Verdict v;
    v.criterion = "ppt";
    v.margin = min_eigenvalue(partial_transpose(state, Subsystem::A));
    v.details["lambda_min_pt"] = v.margin;
    if (v.margin < -tol.psd) {
        v.status = VerdictStatus::EntangledCertified;
        v.label = to_string(v.status);
    } else if (state.dim() <= 6) {
        // PPT is sufficient for separability in 2x2 and 2x3.
        v.status = VerdictStatus::SeparableCertified;
        v.label = to_string(v.status);
    } else {
        v.status = VerdictStatus::Inconclusive;
        v.label = "inconclusive-PPT";
    }
    return v;
}

Verdict reduction_check(const BipartiteState& state, const ToleranceConfig& tol) {
    tol.validate();
    const Matrix rho_a = partial_trace(state, Subsystem::B);
    const Matrix rho_b = partial_trace(state, Subsystem::A);
    const Matrix id_a = Matrix::Identity(state.dim_a, state.dim_a);
    const Matrix id_b = Matrix::Identity(state.dim_b, state.dim_b);

    const double lam_b = min_eigenvalue(kron(id_a, rho_b) - state.rho);
    const double lam_a = min_eigenvalue(kron(rho_a, id_b) - state.rho);

    Verdict v;
    v.criterion = "reduction";
    v.margin = std::min(lam_a, lam_b);
    v.details["lambda_min_side_a"] = lam_a;
    v.details["lambda_min_side_b"] = lam_b;
    if (v.margin < -tol.psd) {
        v.status = VerdictStatus::EntangledCertified;
        v.distillable = true;
    } else {
        v.status = VerdictStatus::Inconclusive;
    }
    v.label = to_string(v.status);
    return v;
}

Verdict rank_criterion_check(const BipartiteState& state, const ToleranceConfig& tol) {
    tol.validate();
    const int r_full = numerical_kernel(state.rho, tol).rank;
    const int r_a = numerical_kernel(partial_trace(state, Subsystem::B), tol).rank;
    const int r_b = numerical_kernel(partial_trace(state, Subsystem::A), tol).rank;

    Verdict v;
    v.criterion = "rank";
    v.margin = static_cast<double>(std::max(r_a, r_b) - r_full);
    v.details["rank_rho"] = r_full;
    v.details["rank_rho_a"] = r_a;
    v.details["rank_rho_b"] = r_b;
    if (v.margin > 0.0) {
        v.status = VerdictStatus::EntangledCertified;
        v.distillable = true;
    } else {
        v.status = VerdictStatus::Inconclusive;
    }
    v.label = to_string(v.status);
    return v;
}

Verdict lemma1_check(const BipartiteState& state, const ProductOptOptions& opts,
                     const ToleranceConfig& tol) {
    tol.validate();
    const Matrix pt_b = partial_transpose(state, Subsystem::B);
    const double tr_rho2 = (state.rho * state.rho).trace().real();
    const double tr_pt2 = (pt_b * pt_b).trace().real();
    const double tr_cross = (state.rho * pt_b).trace().real();
    const double lhs = std::max({tr_rho2, tr_pt2, tr_cross});

    const ProductOptResult best = extremize_product_overlap(
        state.rho, state.dim_a, state.dim_b, Direction::Maximize, opts, tol);

    Verdict v;
    v.criterion = "lemma1";
    v.margin = lhs - best.value;
    v.details["tr_rho_sq"] = tr_rho2;
    v.details["tr_ptb_sq"] = tr_pt2;
    v.details["tr_rho_ptb"] = tr_cross;
    v.details["lhs"] = lhs;
    v.details["max_product_overlap"] = best.value;
    v.details["converged_fraction"] = best.converged_fraction;
    v.details["restarts"] = best.restarts_used;
    if (v.margin > tol.zero) {
        // Sound only if the heuristic overlap is the global maximum.
        v.status = VerdictStatus::EntangledHeuristic;
    } else {
        v.status = VerdictStatus::Inconclusive;
    }
    v.label = to_string(v.status);
    return v;
}

namespace {

// Largest s >= 0 (direction dir = +-1) keeping lambda_min(base + dir*s*x) >= -tol.psd.
double psd_boundary(const Matrix& base, const Matrix& x, double dir, double psd_tol) {
    const double scale = std::max(base.norm() / std::max(x.norm(), 1e-300), 1e-12);
    auto feasible = [&](double s) { return min_eigenvalue(base + dir * s * x) >= -psd_tol; };

    double lo = 0.0;
    double hi = scale * 0x1.0p-20;
    int doublings = 0;
    while (feasible(hi)) {
        lo = hi;
        hi *= 2.0;
        if (++doublings > 140) return lo;  // direction numerically unbounded
    }
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (feasible(mid)) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return lo;
}

// Largest p with rho_x - p*mu PSD, positivity restricted to the range of rho_x.
double max_subtract_weight(const Matrix& rho_x, const Matrix& mu, const ToleranceConfig& tol) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho_x);
    const RealVector evals = es.eigenvalues();
    const double cutoff = tol.rank * evals.cwiseAbs().maxCoeff();

    std::vector<Eigen::Index> range_cols;
    for (Eigen::Index i = 0; i < evals.size(); ++i) {
        if (evals[i] > cutoff) range_cols.push_back(i);
    }
    if (range_cols.empty()) return 0.0;

    Matrix w(rho_x.rows(), static_cast<Eigen::Index>(range_cols.size()));
    Matrix v(rho_x.rows(), static_cast<Eigen::Index>(range_cols.size()));
    for (size_t c = 0; c < range_cols.size(); ++c) {
        const Eigen::Index i = range_cols[c];
        v.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(i);
        w.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(i) / std::sqrt(evals[i]);
    }
    // mu must live inside the range of rho_x.
    const Matrix proj_kernel = Matrix::Identity(rho_x.rows(), rho_x.cols()) - v * v.adjoint();
    if (max_abs(proj_kernel * mu * proj_kernel) > tol.psd) return 0.0;

    const double g = max_eigenvalue(w.adjoint() * mu * w);
    if (g <= tol.zero) return 1.0;
    return std::min(1.0, 1.0 / g);
}

struct BranchAttempt {
    bool psd_pair = false;  // found mu, nu both states
    bool has_p = false;
    BinaryMixtureSolution solution;
    double reconstruction_error = 0.0;
};

BranchAttempt try_branch(const BipartiteState& state, const Matrix& rho_a, const Matrix& rho_b,
                         const Matrix& x, const Matrix& y, double dir,
                         const ToleranceConfig& tol) {
    BranchAttempt out;
    // mu(s) = rho_A + dir*s*x stays PSD on [0, s_mu]; take the extreme point.
    const double s_mu = psd_boundary(rho_a, x, dir, tol.psd);
    if (s_mu <= 0.0) return out;
    const double s = dir * s_mu;

    Matrix mu = rho_a + s * x;
    Matrix nu = rho_b - y / s;
    mu = 0.5 * (mu + mu.adjoint());
    nu = 0.5 * (nu + nu.adjoint());
    if (min_eigenvalue(nu) < -10.0 * tol.psd) return out;  // branch interval empty
    out.psd_pair = true;

    // mixing-weight range: rho_A - p mu >= 0 and rho_B - (1-p) nu >= 0.
    const double p_hi = max_subtract_weight(rho_a, mu, tol);
    const double q_hi = max_subtract_weight(rho_b, nu, tol);
    const double lo = std::max(0.0, 1.0 - q_hi);
    const double hi = std::min(1.0, p_hi);
    if (lo > hi + 1e-9) return out;

    const double p = std::clamp(0.5 * (lo + hi), 0.0, 1.0);
    const Matrix rebuilt =
        kron(mu, rho_b - (1.0 - p) * nu) + kron(rho_a - p * mu, nu);
    out.has_p = true;
    out.solution = {std::move(mu), std::move(nu), p, dir > 0 ? '+' : '-'};
    out.reconstruction_error = max_abs(rebuilt - state.rho);
    return out;
}

}  // namespace

BinaryMixtureResult binary_mixture_check(const BipartiteState& state, const ToleranceConfig& tol) {
    tol.validate();
    const int m = state.dim_a;
    const int n = state.dim_b;
    const Matrix rho_a = partial_trace(state, Subsystem::B);
    const Matrix rho_b = partial_trace(state, Subsystem::A);
    const Matrix corr = state.rho - kron(rho_a, rho_b);

    BinaryMixtureResult result;
    result.verdict.criterion = "binary_mixture";

    const OperatorBasis basis_a = OperatorBasis::gell_mann(m);
    const OperatorBasis basis_b = OperatorBasis::gell_mann(n);
    const RealMatrix coeffs = realign_to_correlation(corr, basis_a, basis_b, tol);

    Eigen::JacobiSVD<RealMatrix> svd(coeffs, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RealVector sv = svd.singularValues();
    const double s1 = sv.size() > 0 ? sv[0] : 0.0;
    const double s2 = sv.size() > 1 ? sv[1] : 0.0;
    result.verdict.details["sigma_1"] = s1;
    result.verdict.details["sigma_2"] = s2;

    if (s1 <= tol.zero) {
        // C = 0: exact product state rho_A (x) rho_B.
        result.verdict.status = VerdictStatus::SeparableCertified;
        result.verdict.label = to_string(result.verdict.status);
        result.verdict.margin = tol.rank;
        result.solutions.push_back({rho_a, rho_b, 1.0, '+'});
        return result;
    }

    const double ratio = s2 / s1;
    result.verdict.margin = tol.rank - ratio;
    result.verdict.details["sigma_ratio"] = ratio;
    if (ratio > tol.rank) {
        // Correlation operator has tensor rank >= 2: not a binary mixture.
        result.verdict.status = VerdictStatus::Inconclusive;
        result.verdict.label = to_string(result.verdict.status);
        return result;
    }

    // C = x (x) y with traceless Hermitian factors. M(mu,nu) = 0 is then
    // solved by mu = rho_A + s x, nu = rho_B - y/s for every s != 0; the PSD
    // requirements carve out at most one interval per sign of s, and for true
    // binary mixtures the extreme points are exactly the two factor pairs.
    Matrix x = Matrix::Zero(m, m);
    Matrix y = Matrix::Zero(n, n);
    for (int i = 0; i < m * m; ++i) x += (s1 * svd.matrixU()(i, 0)) * basis_a[i];
    for (int j = 0; j < n * n; ++j) y += svd.matrixV()(j, 0) * basis_b[j];

    bool any_psd_pair = false;
    double best_error = 0.0;
    for (double dir : {+1.0, -1.0}) {
        BranchAttempt attempt = try_branch(state, rho_a, rho_b, x, y, dir, tol);
        any_psd_pair = any_psd_pair || attempt.psd_pair;
        if (attempt.has_p) {
            best_error = result.solutions.empty() ? attempt.reconstruction_error
                                                  : std::min(best_error, attempt.reconstruction_error);
            result.solutions.push_back(std::move(attempt.solution));
        }
    }

    if (!result.solutions.empty() && best_error <= 1e-8) {
        result.verdict.status = VerdictStatus::SeparableCertified;
        result.verdict.label = to_string(result.verdict.status);
        result.verdict.details["reconstruction_error"] = best_error;
    } else if (any_psd_pair) {
        // State solutions exist but no valid mixing weight; reported as a
        // pseudomixture with no entanglement claim attached.
        result.verdict.status = VerdictStatus::Inconclusive;
        result.verdict.label = "nonseparable binary pseudomixture";
    } else {
        result.verdict.status = VerdictStatus::Inconclusive;
        result.verdict.label = to_string(result.verdict.status);
    }
    return result;
}

SubtractionResult subtract_product_vector(const Matrix& rho, int dim_a, int dim_b,
                                          const ProductVector& pv, const ToleranceConfig& tol) {
    tol.validate();
    pv.validate(tol);
    const Matrix proj = product_projector(pv);
    const Matrix proj_pt = product_projector(pv.conjugate_a());  // = proj^TA
    const Matrix rho_pt = partial_transpose(rho, dim_a, dim_b, Subsystem::A);

    auto feasible = [&](double lam) {
        return min_eigenvalue(rho - lam * proj) >= -tol.psd &&
               min_eigenvalue(rho_pt - lam * proj_pt) >= -tol.psd;
    };

    SubtractionResult out;
    if (feasible(1.0)) {
        out.lambda_max = 1.0;
    } else {
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (feasible(mid)) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        out.lambda_max = lo;
    }
    out.residual = rho - out.lambda_max * proj;
    return out;
}

SubtractionResult subtract_product_vector(const BipartiteState& state, const ProductVector& pv,
                                          const ToleranceConfig& tol) {
    return subtract_product_vector(state.rho, state.dim_a, state.dim_b, pv, tol);
}

namespace {

ProductVector rank_one_factors(const Vector& v, int dim_a, int dim_b) {
    Matrix mat(dim_a, dim_b);
    for (int i = 0; i < dim_a; ++i)
        for (int k = 0; k < dim_b; ++k) mat(i, k) = v[static_cast<Eigen::Index>(i) * dim_b + k];
    Eigen::JacobiSVD<Matrix> svd(mat, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return {svd.matrixU().col(0), svd.matrixV().col(0).conjugate()};
}

// Alternating projections onto {|e,f> in R(rho)} and {|e*,f> in R(rho^TA)}:
// the optimizer lands within ~1e-6 of a feasible product vector, and the
// subtractable weight is only as large as that residue allows, so snap the
// candidate onto the exact intersection before bisecting.
ProductVector snap_to_ranges(const ProductVector& pv, const Matrix& range_proj,
                             const Matrix& range_proj_pt, int dim_a, int dim_b) {
    const Eigen::Index d = range_proj.rows();
    const Matrix id = Matrix::Identity(d, d);
    auto infeasibility = [&](const ProductVector& x) {
        return ((id - range_proj) * x.kron()).norm() +
               ((id - range_proj_pt) * x.conjugate_a().kron()).norm();
    };

    ProductVector cur = pv;
    ProductVector best_pv = pv;
    double best = infeasibility(cur);
    int stagnant = 0;
    for (int it = 0; it < 5000 && best > 1e-13; ++it) {
        Vector v = range_proj * cur.kron();
        if (v.norm() < 1e-14) break;
        ProductVector next = rank_one_factors(v, dim_a, dim_b);

        Vector w = range_proj_pt * next.conjugate_a().kron();
        if (w.norm() < 1e-14) break;
        ProductVector wf = rank_one_factors(w, dim_a, dim_b);
        next = ProductVector{wf.e.conjugate(), wf.f};

        const double miss = infeasibility(next);
        if (miss < best) {
            best = miss;
            best_pv = next;
            stagnant = 0;
        } else if (++stagnant > 50) {
            break;
        }
        cur = std::move(next);
    }
    return best_pv;
}

}  // namespace

EdgeDecomposition edge_decompose(const BipartiteState& state, int budget, std::uint64_t seed,
                                 const ToleranceConfig& tol) {
    tol.validate();
    if (budget < 1) throw std::invalid_argument("edge_decompose: budget must be >= 1");

    const int m = state.dim_a;
    const int n = state.dim_b;
    const Eigen::Index d = state.rho.rows();
    const Matrix id = Matrix::Identity(d, d);

    EdgeDecomposition out;
    out.residual = state.rho;

    ProductOptOptions opts;
    opts.restarts = 64;

    // Input states are only tol.psd-positive, but once subtraction starts the
    // slack must stay far below the remaining mass or it blocks the endgame.
    ToleranceConfig sub_tol = tol;
    const double input_dip =
        std::max(-min_eigenvalue(state.rho),
                 -min_eigenvalue(partial_transpose(state, Subsystem::A)));
    sub_tol.psd = std::max(1e-14, 2.0 * input_dip);

    int fruitless = 0;
    for (int iter = 0; iter < budget; ++iter) {
        out.iterations = iter + 1;
        const Matrix residual_pt = partial_transpose(out.residual, m, n, Subsystem::A);
        const Matrix range_proj = id - numerical_kernel(out.residual, tol).kernel_projector;
        const Matrix range_proj_pt = id - numerical_kernel(residual_pt, tol).kernel_projector;

        // <e,f|H|e,f> = <e,f|P_R(res)|e,f> + <e*,f|P_R(res^TA)|e*,f> <= 2,
        // with equality exactly on the subtractable product vectors.
        const Matrix h_range = range_proj + partial_transpose(range_proj_pt, m, n, Subsystem::A);

        opts.seed = derive_seed(seed, static_cast<std::uint64_t>(iter));
        const ProductOptResult range_cand =
            extremize_product_overlap(h_range, m, n, Direction::Maximize, opts, tol);

        double best_lambda = 0.0;
        SubtractionResult best_sub;
        ProductVector best_pv;
        auto consider = [&](const ProductVector& pv) {
            SubtractionResult sub = subtract_product_vector(out.residual, m, n, pv, sub_tol);
            if (sub.lambda_max > best_lambda) {
                best_lambda = sub.lambda_max;
                best_sub = std::move(sub);
                best_pv = pv;
            }
        };
        consider(snap_to_ranges(range_cand.argbest, range_proj, range_proj_pt, m, n));
        if (out.residual.norm() > tol.zero) {
            opts.seed = derive_seed(seed ^ 0x5bd1e995ULL, static_cast<std::uint64_t>(iter));
            const ProductOptResult mass_cand =
                extremize_product_overlap(out.residual, m, n, Direction::Maximize, opts, tol);
            consider(snap_to_ranges(mass_cand.argbest, range_proj, range_proj_pt, m, n));
        }

        if (best_lambda < 1e-9) {
            // Retry with fresh restart seeds before declaring the residual edge-like.
            if (++fruitless >= 5) break;
            continue;
        }
        fruitless = 0;
        out.residual = best_sub.residual;
        out.lambda_total += best_lambda;
        out.separable_terms.emplace_back(best_lambda, best_pv);
    }
    return out;
}

}  // namespace entangle
