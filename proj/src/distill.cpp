#include "entangle/distill.hpp"

#include "entangle/rng.hpp"
#include "entangle/states.hpp"
#include "entangle/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entangle {

namespace {

long int_pow(int base, int exp) {
    long v = 1;
    for (int i = 0; i < exp; ++i) v *= base;
    return v;
}

Vector basis_vector(long dim, long index) {
    Vector v = Vector::Zero(dim);
    v[index] = 1.0;
    return v;
}

}  // namespace

Vector SchmidtPair::to_vector() const {
    return a * kron(e1, f1) + b * kron(e2, f2);
}

void SchmidtPair::validate(const ToleranceConfig& tol) const {
    tol.validate();
    if (e1.size() != e2.size() || f1.size() != f2.size()) {
        throw std::invalid_argument("SchmidtPair: frame size mismatch");
    }
    if (std::abs(std::norm(a) + std::norm(b) - 1.0) > tol.zero) {
        throw std::invalid_argument("SchmidtPair: |a|^2 + |b|^2 must be 1");
    }
    if (std::abs(e1.norm() - 1.0) > tol.zero || std::abs(e2.norm() - 1.0) > tol.zero ||
        std::abs(f1.norm() - 1.0) > tol.zero || std::abs(f2.norm() - 1.0) > tol.zero) {
        throw std::invalid_argument("SchmidtPair: frame vectors must be normalized");
    }
    if (std::abs(e1.dot(e2)) > tol.zero || std::abs(f1.dot(f2)) > tol.zero) {
        throw std::invalid_argument("SchmidtPair: frames must be orthogonal");
    }
}

SchmidtPair SchmidtPair::from_vector(const Vector& psi, int dim_a, int dim_b,
                                     const ToleranceConfig& tol) {
    tol.validate();
    if (psi.size() != static_cast<Eigen::Index>(dim_a) * dim_b) {
        throw std::invalid_argument("SchmidtPair::from_vector: size mismatch");
    }
    Matrix cmat(dim_a, dim_b);
    for (int a = 0; a < dim_a; ++a)
        for (int b = 0; b < dim_b; ++b) cmat(a, b) = psi[static_cast<Eigen::Index>(a) * dim_b + b];

    Eigen::JacobiSVD<Matrix> svd(cmat, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const double s1 = svd.singularValues()[0];
    const double s2 = svd.singularValues().size() > 1 ? svd.singularValues()[1] : 0.0;
    const double norm = std::sqrt(s1 * s1 + s2 * s2);
    if (norm <= tol.zero) {
        throw std::invalid_argument("SchmidtPair::from_vector: zero vector");
    }

    SchmidtPair pair;
    pair.a = s1 / norm;
    pair.b = s2 / norm;
    pair.e1 = svd.matrixU().col(0);
    pair.e2 = svd.matrixU().col(1);
    // psi = sum_i sigma_i u_i (x) conj(v_i)
    pair.f1 = svd.matrixV().col(0).conjugate();
    pair.f2 = svd.matrixV().col(1).conjugate();
    return pair;
}

double kcopy_objective(const Matrix& op, int copies, int dim_a, int dim_b, const Vector& psi) {
    const Vector applied = apply_tensor_power(op, copies, dim_a, dim_b, psi);
    return psi.dot(applied).real();
}

double kcopy_objective(const Matrix& op, int copies, int dim_a, int dim_b,
                       const SchmidtPair& psi) {
    return kcopy_objective(op, copies, dim_a, dim_b, psi.to_vector());
}

namespace {

SchmidtPair random_schmidt_pair(Rng& rng, long dim_a, long dim_b) {
    SchmidtPair pair;
    pair.e1 = rng.unit_vector(static_cast<int>(dim_a));
    Vector e2 = rng.gaussian_vector(static_cast<int>(dim_a));
    e2 -= pair.e1.dot(e2) * pair.e1;
    pair.e2 = e2.normalized();
    pair.f1 = rng.unit_vector(static_cast<int>(dim_b));
    Vector f2 = rng.gaussian_vector(static_cast<int>(dim_b));
    f2 -= pair.f1.dot(f2) * pair.f1;
    pair.f2 = f2.normalized();
    const cxd ca = rng.cnormal();
    const cxd cb = rng.cnormal();
    const double n = std::sqrt(std::norm(ca) + std::norm(cb));
    pair.a = ca / n;
    pair.b = cb / n;
    return pair;
}

Matrix bob_frame(const Vector& psi, long dim_a, long dim_b) {
    Matrix cmat(dim_a, dim_b);
    for (long a = 0; a < dim_a; ++a)
        for (long b = 0; b < dim_b; ++b) cmat(a, b) = psi[a * dim_b + b];
    Eigen::JacobiSVD<Matrix> svd(cmat, Eigen::ComputeThinV);
    return svd.matrixV().leftCols(2).conjugate();
}

Matrix alice_frame(const Vector& psi, long dim_a, long dim_b) {
    Matrix cmat(dim_a, dim_b);
    for (long a = 0; a < dim_a; ++a)
        for (long b = 0; b < dim_b; ++b) cmat(a, b) = psi[a * dim_b + b];
    Eigen::JacobiSVD<Matrix> svd(cmat, Eigen::ComputeThinU);
    return svd.matrixU().leftCols(2);
}

struct SeesawRun {
    double value = 0.0;
    Vector psi;
};

// Alternating exact side-updates on the prebuilt K-copy operator `t`.
SeesawRun seesaw(const Matrix& t, long dim_a, long dim_b, Vector psi,
                 const KDistillOptions& opts) {
    SeesawRun run;
    run.psi = std::move(psi);
    run.value = (run.psi.adjoint() * t * run.psi)(0, 0).real();

    const Eigen::Index full = static_cast<Eigen::Index>(dim_a) * dim_b;
    for (int it = 0; it < opts.max_iterations; ++it) {
        // Bob frame fixed: psi = g1 (x) f1 + g2 (x) f2, bottom eigenvector of
        // the compression W^dag T W with W = kron(I, F).
        const Matrix f = bob_frame(run.psi, dim_a, dim_b);
        Matrix w = Matrix::Zero(full, 2 * dim_a);
        for (long a = 0; a < dim_a; ++a) {
            w.block(a * dim_b, 2 * a, dim_b, 2) = f;
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es_a(w.adjoint() * t * w);
        run.psi = w * es_a.eigenvectors().col(0);

        const Matrix e = alice_frame(run.psi, dim_a, dim_b);
        Matrix w2 = Matrix::Zero(full, 2 * dim_b);
        for (long a = 0; a < dim_a; ++a) {
            for (int i = 0; i < 2; ++i) {
                w2.block(a * dim_b, static_cast<Eigen::Index>(i) * dim_b, dim_b, dim_b) =
                    e(a, i) * Matrix::Identity(dim_b, dim_b);
            }
        }
        Eigen::SelfAdjointEigenSolver<Matrix> es_b(w2.adjoint() * t * w2);
        run.psi = w2 * es_b.eigenvectors().col(0);

        const double value = es_b.eigenvalues()[0];
        if (std::abs(value - run.value) < opts.convergence_tol) {
            run.value = value;
            break;
        }
        run.value = value;
    }
    run.psi.normalize();
    return run;
}

std::vector<SchmidtPair> canonical_starts(const Matrix& op, int copies, int dim_a, int dim_b,
                                          const KDistillOptions& opts,
                                          const ToleranceConfig& tol) {
    std::vector<SchmidtPair> starts;
    const long da = int_pow(dim_a, copies);
    const long db = int_pow(dim_b, copies);

    // Diagonal computational pairs (|u..u>, |v..v>) on both sides; for one
    // copy these include the maximal-overlap Schmidt pair.
    const int local = std::min(dim_a, dim_b);
    const long rep_a = (da - 1) / (dim_a - 1);  // index of |u..u> is u * rep
    const long rep_b = (db - 1) / (dim_b - 1);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int u = 0; u < local; ++u) {
        for (int v = u + 1; v < local; ++v) {
            SchmidtPair pair;
            pair.a = inv_sqrt2;
            pair.b = inv_sqrt2;
            pair.e1 = basis_vector(da, u * rep_a);
            pair.e2 = basis_vector(da, v * rep_a);
            pair.f1 = basis_vector(db, u * rep_b);
            pair.f2 = basis_vector(db, v * rep_b);
            starts.push_back(std::move(pair));
        }
    }

    if (copies >= 2) {
        // Single-copy minimizer extended by a product pair on each extra copy;
        // the extension keeps the Schmidt rank at 2 and, when the per-copy
        // product overlap with the operator's P block vanishes, the lifted
        // value reproduces the single-copy minimum.
        KDistillOptions sub = opts;
        sub.restarts = std::max(16, opts.restarts / 8);
        sub.seed = derive_seed(opts.seed, 0xC0FFEEULL);
        sub.initial_candidates.clear();
        const DistillScanPoint one = minimize_kdistill(op, 1, dim_a, dim_b, sub, tol);

        const long ext_a = da / dim_a;
        const long ext_b = db / dim_b;
        for (int pick = 0; pick < 2; ++pick) {
            const long ia = 0;
            const long ib = pick % dim_b;  // |0..0> on Alice, |b..b> on Bob
            Vector lift_a = Vector::Zero(ext_a);
            Vector lift_b = Vector::Zero(ext_b);
            long idx_a = 0, idx_b = 0;
            for (int c = 0; c < copies - 1; ++c) {
                idx_a = idx_a * dim_a + ia;
                idx_b = idx_b * dim_b + ib;
            }
            lift_a[idx_a] = 1.0;
            lift_b[idx_b] = 1.0;

            SchmidtPair pair;
            pair.a = one.minimizer.a;
            pair.b = one.minimizer.b;
            pair.e1 = kron(one.minimizer.e1, lift_a);
            pair.e2 = kron(one.minimizer.e2, lift_a);
            pair.f1 = kron(one.minimizer.f1, lift_b);
            pair.f2 = kron(one.minimizer.f2, lift_b);
            starts.push_back(std::move(pair));
        }
    }

    if (copies == 2 && dim_a == 3 && dim_b == 3) {
        starts.push_back(psi_star(0, 1, 0, 1));
        starts.push_back(psi_star(0, 2, 1, 2));
        starts.push_back(psi_star(1, 2, 0, 2));
    }
    return starts;
}

}  // namespace

DistillScanPoint minimize_kdistill(const Matrix& op, int copies, int dim_a, int dim_b,
                                   const KDistillOptions& opts, const ToleranceConfig& tol) {
    tol.validate();
    if (opts.restarts < 1) throw std::invalid_argument("minimize_kdistill: restarts must be >= 1");
    require_hermitian(op, "minimize_kdistill");

    const Matrix t = tensor_power(op, copies, dim_a, dim_b);  // throws past the cap
    const long da = int_pow(dim_a, copies);
    const long db = int_pow(dim_b, copies);

    std::vector<double> values;
    bool have_best = false;
    double best_value = 0.0;
    Vector best_psi;
    auto consider = [&](const SeesawRun& run) {
        values.push_back(run.value);
        if (!have_best || run.value < best_value) {
            best_value = run.value;
            best_psi = run.psi;
            have_best = true;
        }
    };

    for (const SchmidtPair& cand : canonical_starts(op, copies, dim_a, dim_b, opts, tol)) {
        consider(seesaw(t, da, db, cand.to_vector().normalized(), opts));
    }
    for (const SchmidtPair& cand : opts.initial_candidates) {
        consider(seesaw(t, da, db, cand.to_vector().normalized(), opts));
    }
    for (int r = 0; r < opts.restarts; ++r) {
        Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(r)));
        consider(seesaw(t, da, db, random_schmidt_pair(rng, da, db).to_vector(), opts));
    }

    DistillScanPoint point;
    point.copies = copies;
    point.minimizer = SchmidtPair::from_vector(best_psi, static_cast<int>(da),
                                               static_cast<int>(db), tol);
    point.min_value = kcopy_objective(op, copies, dim_a, dim_b, point.minimizer);
    point.restarts = static_cast<int>(values.size());
    const double near = 1e-9 * (1.0 + std::abs(point.min_value));
    int close = 0;
    for (double v : values) {
        if (std::abs(v - point.min_value) <= near) ++close;
    }
    point.converged_fraction = static_cast<double>(close) / static_cast<double>(values.size());
    point.distillable = point.min_value < -tol.zero;
    return point;
}

double werner_1copy_min(int n, double beta) {
    if (n < 2) throw std::invalid_argument("werner_1copy_min: N must be >= 2");
    return 1.0 - 2.0 * beta / n;
}

double beta_k_bound(int k) {
    if (k < 1) throw std::invalid_argument("beta_k_bound: K must be >= 1");
    return 1.0 + std::pow(3.0, -k / 3.0) * std::pow(static_cast<double>(k), -1.0 / 3.0);
}

TwoCopyCertificateReport two_copy_certificate(double beta, int samples, std::uint64_t seed,
                                              const ToleranceConfig& tol) {
    tol.validate();
    if (samples < 1) throw std::invalid_argument("two_copy_certificate: samples must be >= 1");

    const Matrix p = max_entangled_projector(3);
    const Matrix q = Matrix::Identity(9, 9) - p;
    const Matrix op_25 = tensor_product_regrouped({q, q - 0.5 * p}, 3, 3);
    const Matrix op_26 = tensor_product_regrouped({q - 0.5 * p, q}, 3, 3);
    const Matrix op_27 = tensor_product_regrouped({q - 0.25 * p, q - 0.25 * p}, 3, 3);
    const Matrix op_pp = tensor_product_regrouped({p, p}, 3, 3);

    TwoCopyCertificateReport report;
    report.beta = beta;
    report.samples = samples;
    double min25 = 0.0, min26 = 0.0, min27 = 0.0, minpp = 0.0;
    for (int i = 0; i < samples; ++i) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
        const Vector psi = random_schmidt_pair(rng, 9, 9).to_vector();
        const double v25 = (psi.adjoint() * op_25 * psi)(0, 0).real();
        const double v26 = (psi.adjoint() * op_26 * psi)(0, 0).real();
        const double v27 = (psi.adjoint() * op_27 * psi)(0, 0).real();
        const double vpp = (psi.adjoint() * op_pp * psi)(0, 0).real() / 16.0;
        const double final_slack = v27 - vpp;
        if (i == 0) {
            min25 = v25;
            min26 = v26;
            min27 = final_slack;
            minpp = vpp;
        } else {
            min25 = std::min(min25, v25);
            min26 = std::min(min26, v26);
            min27 = std::min(min27, final_slack);
            minpp = std::min(minpp, vpp);
        }
    }
    report.min_slack_q_qhalf = min25;
    report.min_slack_qhalf_q = min26;
    report.min_slack_final = min27;
    report.min_pp_term = minpp;
    report.chain_holds =
        min25 >= -tol.zero && min26 >= -tol.zero && min27 >= -tol.zero && minpp >= -tol.zero;
    report.certified = report.chain_holds && beta <= 1.25 + tol.zero;
    report.status = report.certified ? "non-2-distillable-certified" : "inconclusive";
    return report;
}

namespace {

struct AppcOperators {
    Matrix one_one, one_p, p_one, p_p;
};

const AppcOperators& appc_operators() {
    static const AppcOperators ops = [] {
        const Matrix p = max_entangled_projector(3);
        const Matrix id = Matrix::Identity(9, 9);
        AppcOperators out;
        out.one_one = Matrix::Identity(81, 81);
        out.one_p = tensor_product_regrouped({id, p}, 3, 3);
        out.p_one = tensor_product_regrouped({p, id}, 3, 3);
        out.p_p = tensor_product_regrouped({p, p}, 3, 3);
        return out;
    }();
    return ops;
}

// Per-copy two-copy normalizer of the objective; inert for sign/zero checks.
constexpr double kAppcNorm = 9.0;

}  // namespace

AppcExpectations appc_expectations(const Vector& psi) {
    if (psi.size() != 81) {
        throw std::invalid_argument("appc_expectations: vector must live on the 9x9 space");
    }
    const AppcOperators& ops = appc_operators();
    AppcExpectations e;
    e.one_one = psi.squaredNorm();
    e.one_p = (psi.adjoint() * ops.one_p * psi)(0, 0).real();
    e.p_one = (psi.adjoint() * ops.p_one * psi)(0, 0).real();
    e.p_p = (psi.adjoint() * ops.p_p * psi)(0, 0).real();
    return e;
}

AppcExpectations appc_expectations(const SchmidtPair& psi) {
    return appc_expectations(psi.to_vector());
}

double appc_form(double lambda, const Vector& psi) {
    if (lambda <= 0.0 || lambda >= 1.0) {
        throw std::invalid_argument("appc_form: lambda must lie in (0, 1)");
    }
    const AppcExpectations e = appc_expectations(psi);
    return (1.0 + std::abs(1.0 - 2.0 * lambda)) * e.one_one + 2.25 * e.p_p -
           3.0 * (lambda * e.one_p + (1.0 - lambda) * e.p_one);
}

double appc_objective(double lambda, const Vector& psi) {
    return appc_form(lambda, psi) / kAppcNorm;
}

double appc_objective(double lambda, const SchmidtPair& psi) {
    return appc_objective(lambda, psi.to_vector());
}

SchmidtPair psi_star(int i, int j, int r, int s, double phi) {
    auto in_range = [](int v) { return v >= 0 && v <= 2; };
    if (!in_range(i) || !in_range(j) || !in_range(r) || !in_range(s)) {
        throw std::invalid_argument("psi_star: indices must lie in {0, 1, 2}");
    }
    if (i == j || r == s) {
        throw std::invalid_argument("psi_star: need i != j and r != s");
    }
    SchmidtPair pair;
    pair.a = 1.0 / std::sqrt(2.0);
    pair.b = std::polar(1.0 / std::sqrt(2.0), phi);
    pair.e1 = basis_vector(9, static_cast<long>(i) * 3 + r);
    pair.f1 = basis_vector(9, static_cast<long>(i) * 3 + s);
    pair.e2 = basis_vector(9, static_cast<long>(j) * 3 + r);
    pair.f2 = basis_vector(9, static_cast<long>(j) * 3 + s);
    return pair;
}

namespace {

// Perturbation family of the psi* minimum (phi = 0, i=0, j=1, r=0, s=1):
//   (sqrt(1+d0) |ir>_A |(i+d1 k)(s+d2 r)>_B
//    + sqrt(1-d0) |(j+d3 l)(r+d4 t)>_A |(j+d5 m)(s+d6 r)>_B) / sqrt(2)
// with k = l = m = third basis vector and t either s or the third vector.
Vector appc_perturbed_vector(const std::array<double, 7>& d, bool t_equals_s) {
    auto e3 = [](int idx) {
        Vector v = Vector::Zero(3);
        v[idx] = 1.0;
        return v;
    };
    const Vector vi = e3(0), vj = e3(1), v3 = e3(2);
    const Vector vr = e3(0), vs = e3(1);
    const Vector vt = t_equals_s ? vs : v3;

    const Vector a1 = kron(vi, vr);
    const Vector b1 = kron(Vector(vi + d[1] * v3), Vector(vs + d[2] * vr));
    const Vector a2 = kron(Vector(vj + d[3] * v3), Vector(vr + d[4] * vt));
    const Vector b2 = kron(Vector(vj + d[5] * v3), Vector(vs + d[6] * vr));

    const double w1 = std::sqrt(1.0 + d[0]);
    const double w2 = std::sqrt(1.0 - d[0]);
    return (w1 * kron(a1, b1) + w2 * kron(a2, b2)) / std::sqrt(2.0);
}

}  // namespace

AppcHessianReport appc_hessian_check(double lambda, double step) {
    if (lambda <= 0.0 || lambda > 0.5) {
        throw std::invalid_argument(
            "appc_hessian_check: lambda must lie in (0, 1/2]; the mirror family covers [1/2, 1)");
    }
    if (step <= 0.0) throw std::invalid_argument("appc_hessian_check: step must be > 0");

    AppcHessianReport report;
    report.lambda = lambda;
    report.step = step;

    auto g = [&](const std::array<double, 7>& d, bool ts) {
        return appc_form(lambda, appc_perturbed_vector(d, ts));
    };
    const std::array<double, 7> zero{};
    const double g0 = g(zero, false);

    auto displaced = [&](int idx, double amount) {
        std::array<double, 7> d{};
        d[static_cast<size_t>(idx)] = amount;
        return d;
    };

    for (int idx = 0; idx < 7; ++idx) {
        const double gp = g(displaced(idx, step), false);
        const double gm = g(displaced(idx, -step), false);
        report.gradient[static_cast<size_t>(idx)] = (gp - gm) / (2.0 * step);
        report.diag_second[static_cast<size_t>(idx)] = (gp - 2.0 * g0 + gm) / (step * step);
    }
    {
        const double gp = g(displaced(4, step), true);
        const double gm = g(displaced(4, -step), true);
        report.diag4_ts = (gp - 2.0 * g(zero, true) + gm) / (step * step);
    }

    double offdiag_26 = 0.0;
    double offdiag_35 = 0.0;
    double max_other = 0.0;
    for (int a = 0; a < 7; ++a) {
        for (int b = a + 1; b < 7; ++b) {
            std::array<double, 7> dpp{}, dpm{}, dmp{}, dmm{};
            dpp[static_cast<size_t>(a)] = step;
            dpp[static_cast<size_t>(b)] = step;
            dpm[static_cast<size_t>(a)] = step;
            dpm[static_cast<size_t>(b)] = -step;
            dmp[static_cast<size_t>(a)] = -step;
            dmp[static_cast<size_t>(b)] = step;
            dmm[static_cast<size_t>(a)] = -step;
            dmm[static_cast<size_t>(b)] = -step;
            const double mixed =
                (g(dpp, false) - g(dpm, false) - g(dmp, false) + g(dmm, false)) /
                (4.0 * step * step);
            if (a == 2 && b == 6) {
                offdiag_26 = mixed;
            } else if (a == 3 && b == 5) {
                offdiag_35 = mixed;
            } else {
                max_other = std::max(max_other, std::abs(mixed));
            }
        }
    }
    report.offdiag_26 = offdiag_26;
    report.offdiag_35 = offdiag_35;
    report.max_other_offdiag = max_other;

    const double abs_part = std::abs(1.0 - 2.0 * lambda);
    report.diag_expected = {
        1.0 - lambda,
        1.0 + abs_part,
        abs_part + 0.25,
        1.0 + abs_part,
        abs_part + lambda,  // t orthogonal to s: 1 + |1-2l| - (1 - l)
        1.0 + abs_part,
        abs_part + 0.25,
    };
    report.diag4_ts_expected = abs_part + 0.25;
    report.offdiag_26_expected = 2.0 * 0.5 * (lambda - 0.75);
    report.offdiag_35_expected = -2.0 * (1.0 - lambda);
    report.det26_formula = 3.0 * lambda * lambda - 3.5 * lambda + 1.0;
    report.det26_numeric = report.diag_second[2] * report.diag_second[6] - offdiag_26 * offdiag_26;
    report.det35_numeric = report.diag_second[3] * report.diag_second[5] - offdiag_35 * offdiag_35;

    double max_grad = 0.0;
    for (double v : report.gradient) max_grad = std::max(max_grad, std::abs(v));
    report.first_order_vanishes = max_grad < 1e-6;

    bool match = std::abs(report.offdiag_26 - report.offdiag_26_expected) <= 2e-4 &&
                 std::abs(report.offdiag_35 - report.offdiag_35_expected) <= 2e-4 &&
                 std::abs(report.diag4_ts - report.diag4_ts_expected) <= 1e-4 &&
                 report.max_other_offdiag <= 1e-4;
    for (size_t idx = 0; idx < 7; ++idx) {
        match = match && std::abs(report.diag_second[idx] - report.diag_expected[idx]) <= 1e-4;
    }
    report.second_order_matches = match;
    return report;
}

}  // namespace entangle
