#pragma once

#include "entangle/state.hpp"
#include "entangle/types.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace entangle {

/// Schmidt-rank-2 vector psi = a e1 (x) f1 + b e2 (x) f2 on the K-copy space,
/// with orthonormal frames <e1|e2> = 0 = <f1|f2> and |a|^2 + |b|^2 = 1.
/// Minimizers are recorded with plain (unconjugated) frames; conjugating
/// Alice's side is a bijection on frames, so the feasible set is unchanged.
struct SchmidtPair {
    cxd a{1.0, 0.0};
    cxd b{0.0, 0.0};
    Vector e1, e2;  // Alice frame on H_A^(x)K
    Vector f1, f2;  // Bob frame on H_B^(x)K

    Vector to_vector() const;
    void validate(const ToleranceConfig& tol = {}) const;

    /// Schmidt pair from any vector of Schmidt rank <= 2 (SVD truncation).
    static SchmidtPair from_vector(const Vector& psi, int dim_a, int dim_b,
                                   const ToleranceConfig& tol = {});
};

struct DistillScanPoint {
    double beta = 0.0;  // informational; set by callers scanning the Werner family
    int copies = 1;
    double min_value = 0.0;
    SchmidtPair minimizer;
    int restarts = 0;
    double converged_fraction = 0.0;
    bool distillable = false;  // min_value < -tol.zero
};

/// <psi|(op)^(x)K|psi> evaluated by per-copy contraction (no K-copy matrix).
/// op is the single-copy operator on M x N; psi lives on (M^K) x (N^K).
double kcopy_objective(const Matrix& op, int copies, int dim_a, int dim_b,
                       const SchmidtPair& psi);
double kcopy_objective(const Matrix& op, int copies, int dim_a, int dim_b, const Vector& psi);

struct KDistillOptions {
    int restarts = 256;
    std::uint64_t seed = 0;
    int max_iterations = 200;
    double convergence_tol = 1e-12;
    /// Extra deterministic starting points, iterated in addition to the
    /// random restarts. Canonical starts (computational Schmidt pairs and
    /// product-extended single-copy minimizers) are always included.
    std::vector<SchmidtPair> initial_candidates;
};

/// Minimize <psi|(op)^(x)K|psi> over Schmidt-rank-2 psi by alternating exact
/// side-updates: with the Bob frame fixed, psi = g1 (x) f1 + g2 (x) f2 and the
/// optimal (g1, g2) is the bottom eigenvector of a 2*M^K compressed operator;
/// the refreshed frame comes from the SVD of the new psi, then sides swap.
/// Each half-step solves its subproblem exactly, so the value is monotone
/// nonincreasing within a restart. Multi-restart, heuristic, deterministic
/// under a fixed seed. A negative minimum beyond tolerance flags the operator
/// K-distillable; a nonnegative one is evidence, never a certificate.
DistillScanPoint minimize_kdistill(const Matrix& op, int copies, int dim_a, int dim_b,
                                   const KDistillOptions& opts = {},
                                   const ToleranceConfig& tol = {});

/// Exact minimum of <psi|1 - beta P|psi> over Schmidt-rank-2 psi on n x n for
/// beta >= 0: 1 - 2 beta / n (the best overlap with |Psi_max> is 2/n).
/// Unnormalized 1 - beta P convention; sign changes at beta = n/2.
double werner_1copy_min(int n, double beta);

/// Non-distillability bound beta_K = 1 + 3^(-K/3) K^(-1/3): the Werner operator is not
/// K-distillable for 1 <= beta <= beta_K. Asymptotic guidance only; at K = 1
/// the sharp threshold is 3/2, below this formula's value.
double beta_k_bound(int k);

/// Numerical audit of the two-copy certificate chain on 3x3:
///   <psi| Q (x) (Q - P/2) |psi> >= 0,
///   <psi| (Q - P/2) (x) Q |psi> >= 0,
///   <psi| (Q - P/4) (x) (Q - P/4) |psi> >= <psi| P (x) P |psi> / 16 >= 0,
/// with Q = 1 - P. The single-copy operators Q - gamma P equal 1 - beta P at
/// beta = 1 + gamma, so the chain certifies non-2-distillability for
/// beta <= 5/4.
struct TwoCopyCertificateReport {
    double beta = 0.0;
    int samples = 0;
    double min_slack_q_qhalf = 0.0;   // min over samples of <Q (x) (Q - P/2)>
    double min_slack_qhalf_q = 0.0;   // min over samples of <(Q - P/2) (x) Q>
    double min_slack_final = 0.0;     // min of <(Q-P/4)(x)(Q-P/4)> - <P(x)P>/16
    double min_pp_term = 0.0;         // min of <P (x) P> / 16
    bool chain_holds = false;
    bool certified = false;  // chain_holds and beta <= 5/4
    std::string status;      // "non-2-distillable-certified" or "inconclusive"
};

TwoCopyCertificateReport two_copy_certificate(double beta, int samples = 10000,
                                              std::uint64_t seed = 0,
                                              const ToleranceConfig& tol = {});

/// The four building-block expectations of the two-copy objective.
struct AppcExpectations {
    double one_one = 0.0;  // <1 (x) 1>
    double one_p = 0.0;    // <1 (x) P>
    double p_one = 0.0;    // <P (x) 1>
    double p_p = 0.0;      // <P (x) P>
};

AppcExpectations appc_expectations(const SchmidtPair& psi);
AppcExpectations appc_expectations(const Vector& psi);

/// Two-copy interpolation objective on 3x3, 0 < lambda < 1:
///   f(lambda, psi) = <psi| (1 + |1-2 lambda|) 1(x)1 + (9/4) P(x)P
///                         - 3 (lambda 1(x)P + (1-lambda) P(x)1) |psi> / 9.
/// lambda = 1/2 reproduces the two-copy power of 1 - 3P/2 (beta = 3/2).
/// The 1/9 normalizer is inert for all sign and zero checks.
double appc_objective(double lambda, const SchmidtPair& psi);
double appc_objective(double lambda, const Vector& psi);

/// The unnormalized quadratic form (objective times 9); the closed-form
/// expansion coefficients below refer to this scale.
double appc_form(double lambda, const Vector& psi);

/// Zero-line family psi* = (|ir>_A |is>_B + e^{i phi} |jr>_A |js>_B)/sqrt(2)
/// on the two-copy 3x3 space, with i != j, r != s in {0, 1, 2}. The phi = 0
/// member attains the component expectations (1, 0, 2/3, 0) and
/// f(lambda, psi*) = 0 for lambda <= 1/2; for phi != 0 the P (x) 1 expectation
/// is (1 + cos phi)/3, so the phase is not inert (see docs).
SchmidtPair psi_star(int i, int j, int r, int s, double phi = 0.0);

/// Second-order verification of the psi* minimum for 0 < lambda <= 1/2.
/// Builds the seven-parameter perturbation family around psi*(phi = 0),
/// differentiates the unnormalized form by central differences (step h), and
/// compares with the closed forms. delta4's diagonal coefficient depends on
/// whether the direction t coincides with s (the Kronecker delta_{ts} case
/// split); both cases are reported. The off-diagonal scan uses t orthogonal
/// to s. The (delta2, delta6) coefficient is stated per index ordering, so
/// the mixed partial d2f/(d delta2 d delta6) equals twice 0.5 (lambda - 3/4).
///
/// One more coupling survives: (delta3, delta5) carries -2 (1 - lambda),
/// because in dimension 3 the side conditions force l = m, and moving Alice's
/// and Bob's |j> together is a within-family direction. Its 2x2 block is PSD
/// with determinant 0 (the family null mode), so the local-minimum conclusion
/// is unchanged.
struct AppcHessianReport {
    double lambda = 0.0;
    double step = 1e-4;
    std::array<double, 7> gradient{};       // first derivatives at delta = 0
    std::array<double, 7> diag_second{};    // d2f/d delta_i^2 (t orthogonal to s)
    std::array<double, 7> diag_expected{};  // closed forms, t orthogonal to s
    double diag4_ts = 0.0;                  // d2f/d delta4^2 with t = s
    double diag4_ts_expected = 0.0;
    double offdiag_26 = 0.0;            // mixed partial d2f/(d delta2 d delta6)
    double offdiag_26_expected = 0.0;   // 2 * 0.5 (lambda - 3/4)
    double offdiag_35 = 0.0;            // family null-mode coupling
    double offdiag_35_expected = 0.0;   // -2 (1 - lambda)
    double det35_numeric = 0.0;         // det of the (3,5) block; 0 up to noise
    double max_other_offdiag = 0.0;     // largest |mixed partial| besides (2,6), (3,5)
    double det26_formula = 0.0;         // 3 lambda^2 - (7/2) lambda + 1
    double det26_numeric = 0.0;         // det of the finite-difference (2,6) block
    bool first_order_vanishes = false;
    bool second_order_matches = false;
};

AppcHessianReport appc_hessian_check(double lambda, double step = 1e-4);

}  // namespace entangle
