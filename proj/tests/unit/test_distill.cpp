#include "entangle/distill.hpp"
#include "entangle/states.hpp"
#include "entangle/tensor.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace entangle;
using namespace entangle::testing;

namespace {

KDistillOptions quick(int restarts, std::uint64_t seed) {
    KDistillOptions opts;
    opts.restarts = restarts;
    opts.seed = seed;
    return opts;
}

SchmidtPair diagonal_pair(int copies, int local_u, int local_v) {
    // (|u..u>|u..u> + |v..v>|v..v>)/sqrt(2) on 3^K x 3^K
    long dim = 1, rep = 0;
    for (int c = 0; c < copies; ++c) {
        rep = rep * 3 + 1;
        dim *= 3;
    }
    auto basis = [&](long idx) {
        Vector v = Vector::Zero(dim);
        v[idx] = 1.0;
        return v;
    };
    SchmidtPair pair;
    pair.a = 1.0 / std::sqrt(2.0);
    pair.b = 1.0 / std::sqrt(2.0);
    pair.e1 = basis(local_u * rep);
    pair.e2 = basis(local_v * rep);
    pair.f1 = basis(local_u * rep);
    pair.f2 = basis(local_v * rep);
    return pair;
}

}  // namespace

TEST_SUITE_BEGIN("distill");

TEST_CASE("kcopy_objective") {
    SUBCASE("identity operator gives 1 for any normalized pair") {
        const SchmidtPair pair = diagonal_pair(1, 0, 1);
        CHECK(kcopy_objective(Matrix::Identity(9, 9), 1, 3, 3, pair) == doctest::Approx(1.0));
    }

    SUBCASE("maximal-overlap pair achieves 1 - 2 beta/3 on 1 - beta P") {
        for (double beta : {0.5, 1.5, 2.0}) {
            const double v =
                kcopy_objective(werner_pt_numerator(3, beta), 1, 3, 3, diagonal_pair(1, 0, 1));
            CHECK(v == doctest::Approx(1.0 - 2.0 * beta / 3.0).epsilon(1e-12));
        }
    }

    SUBCASE("psi* zeroes the two-copy beta = 3/2 operator") {
        const double v =
            kcopy_objective(werner_pt_numerator(3, 1.5), 2, 3, 3, psi_star(0, 1, 0, 1));
        CHECK(std::abs(v) < 1e-12);
    }

    SUBCASE("contraction path agrees with the materialized K-copy operator") {
        const Matrix op = werner_pt_numerator(3, 1.3);
        const Matrix t = tensor_power(op, 2, 3, 3);
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            Rng rng(seed);
            Vector e2 = rng.gaussian_vector(9), f2 = rng.gaussian_vector(9);
            SchmidtPair pair;
            pair.e1 = rng.unit_vector(9);
            e2 -= pair.e1.dot(e2) * pair.e1;
            pair.e2 = e2.normalized();
            pair.f1 = rng.unit_vector(9);
            f2 -= pair.f1.dot(f2) * pair.f1;
            pair.f2 = f2.normalized();
            pair.a = std::sqrt(0.7);
            pair.b = std::sqrt(0.3);
            const Vector psi = pair.to_vector();
            const double via_contraction = kcopy_objective(op, 2, 3, 3, pair);
            const double via_matrix = (psi.adjoint() * t * psi)(0, 0).real();
            CHECK(via_contraction == doctest::Approx(via_matrix).epsilon(1e-12));
        }
    }
}

TEST_CASE("minimize_kdistill at K = 1 reproduces the closed form") {
    for (double beta : {0.0, 0.5, 1.0, 1.25, 1.5, 2.0, 3.0}) {
        const DistillScanPoint p =
            minimize_kdistill(werner_pt_numerator(3, beta), 1, 3, 3, quick(16, 3));
        CHECK(std::abs(p.min_value - werner_1copy_min(3, beta)) <= 1e-6);
        CHECK(std::abs(kcopy_objective(werner_pt_numerator(3, beta), 1, 3, 3, p.minimizer) -
                       p.min_value) < 1e-9);
    }

    SUBCASE("beta = 2 is 1-distillable with value -1/3") {
        const DistillScanPoint p =
            minimize_kdistill(werner_pt_numerator(3, 2.0), 1, 3, 3, quick(16, 4));
        CHECK(p.min_value == doctest::Approx(-1.0 / 3.0).epsilon(1e-9));
        CHECK(p.distillable);
    }

    SUBCASE("beta = 1.4 is not 1-distillable") {
        const DistillScanPoint p =
            minimize_kdistill(werner_pt_numerator(3, 1.4), 1, 3, 3, quick(16, 5));
        CHECK(p.min_value >= -1e-9);
        CHECK(!p.distillable);
    }

    SUBCASE("alpha = 5 Werner state fed through its actual partial transpose") {
        // beta = 2: same verdict as the unnormalized operator, value scaled
        // by n(beta) = 7.
        const Matrix pt = partial_transpose(werner_state(WernerParams{3, 5.0}), Subsystem::A);
        const DistillScanPoint p = minimize_kdistill(pt, 1, 3, 3, quick(16, 6));
        CHECK(p.distillable);
        CHECK(p.min_value == doctest::Approx(-1.0 / 3.0 / 7.0).epsilon(1e-9));
    }
}

TEST_CASE("minimize_kdistill at K = 2") {
    SUBCASE("beta = 1.2 finds nothing negative") {
        const DistillScanPoint p =
            minimize_kdistill(werner_pt_numerator(3, 1.2), 2, 3, 3, quick(24, 6));
        CHECK(p.min_value >= -1e-9);
    }

    SUBCASE("beta = 1.6 is 2-distillable") {
        const DistillScanPoint p =
            minimize_kdistill(werner_pt_numerator(3, 1.6), 2, 3, 3, quick(24, 7));
        CHECK(p.min_value < -1e-6);
    }

    SUBCASE("optimizer is never worse than enumerated feasible points") {
        const Matrix op = werner_pt_numerator(3, 1.35);
        const DistillScanPoint p = minimize_kdistill(op, 2, 3, 3, quick(24, 8));
        for (int u = 0; u < 3; ++u)
            for (int v = 0; v < 3; ++v) {
                if (u != v) {
                    CHECK(p.min_value <=
                          kcopy_objective(op, 2, 3, 3, diagonal_pair(2, u, v)) + 1e-9);
                }
            }
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int r = 0; r < 3; ++r)
                    for (int s = 0; s < 3; ++s) {
                        if (i == j || r == s) continue;
                        CHECK(p.min_value <=
                              kcopy_objective(op, 2, 3, 3, psi_star(i, j, r, s)) + 1e-9);
                    }
    }

    SUBCASE("min_value is nonincreasing in beta") {
        double prev = 1e300;
        for (double beta : {0.5, 1.0, 1.25, 1.5, 1.75}) {
            const DistillScanPoint p =
                minimize_kdistill(werner_pt_numerator(3, beta), 2, 3, 3, quick(16, 9));
            CHECK(p.min_value <= prev + 1e-6);
            prev = p.min_value;
        }
    }
}

TEST_CASE("werner_1copy_min") {
    CHECK(werner_1copy_min(3, 0.0) == doctest::Approx(1.0));
    CHECK(werner_1copy_min(3, 1.5) == doctest::Approx(0.0));
    CHECK(werner_1copy_min(2, 1.0) == doctest::Approx(0.0));
}

TEST_CASE("beta_k_bound") {
    CHECK(beta_k_bound(1) == doctest::Approx(1.0 + std::pow(3.0, -1.0 / 3.0)).epsilon(1e-12));
    CHECK(beta_k_bound(1) == doctest::Approx(1.6934).epsilon(1e-4));
    CHECK(beta_k_bound(3) == doctest::Approx(1.0 + std::pow(3.0, -1.0) * std::pow(3.0, -1.0 / 3.0))
                                 .epsilon(1e-12));
    CHECK(beta_k_bound(3) == doctest::Approx(1.2311).epsilon(1e-4));
    double prev = beta_k_bound(1);
    for (int k = 2; k <= 40; ++k) {
        const double cur = beta_k_bound(k);
        CHECK(cur < prev);
        prev = cur;
    }
    CHECK(beta_k_bound(40) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("two_copy_certificate") {
    SUBCASE("certificate chain holds on sampled Schmidt pairs") {
        const TwoCopyCertificateReport rep = two_copy_certificate(1.2, 2000, 11);
        CHECK(rep.chain_holds);
        CHECK(rep.certified);
        CHECK(rep.status == "non-2-distillable-certified");
        CHECK(rep.min_slack_q_qhalf >= -1e-10);
        CHECK(rep.min_slack_qhalf_q >= -1e-10);
        CHECK(rep.min_slack_final >= -1e-10);
        CHECK(rep.min_pp_term >= -1e-10);
    }

    SUBCASE("beta beyond 5/4 is outside the certificate") {
        const TwoCopyCertificateReport rep = two_copy_certificate(1.3, 100, 12);
        CHECK(!rep.certified);
        CHECK(rep.status == "inconclusive");
    }

    SUBCASE("psi* and its copy-swapped mirror saturate the intermediate inequalities") {
        const Matrix p = max_entangled_projector(3);
        const Matrix q = Matrix::Identity(9, 9) - p;
        const Matrix op25 = tensor_product_regrouped({q, Matrix(q - 0.5 * p)}, 3, 3);
        const Matrix op26 = tensor_product_regrouped({Matrix(q - 0.5 * p), q}, 3, 3);

        const Vector star = psi_star(0, 1, 0, 1).to_vector();
        CHECK(std::abs((star.adjoint() * op26 * star)(0, 0).real()) < 1e-12);

        // mirror family: interchange the roles of the two copies
        auto basis9 = [](int a, int b) {
            Vector v = Vector::Zero(9);
            v[a * 3 + b] = 1.0;
            return v;
        };
        SchmidtPair mirror;
        mirror.a = 1.0 / std::sqrt(2.0);
        mirror.b = 1.0 / std::sqrt(2.0);
        mirror.e1 = basis9(0, 0);  // |r i>
        mirror.f1 = basis9(1, 0);  // |s i>
        mirror.e2 = basis9(0, 1);  // |r j>
        mirror.f2 = basis9(1, 1);  // |s j>
        const Vector bullet = mirror.to_vector();
        CHECK(std::abs((bullet.adjoint() * op25 * bullet)(0, 0).real()) < 1e-12);
    }
}

TEST_CASE("two-copy interpolation objective") {
    SUBCASE("component expectations of psi* at phi = 0") {
        const AppcExpectations e = appc_expectations(psi_star(0, 1, 0, 1));
        CHECK(e.one_one == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(e.one_p) < 1e-12);
        CHECK(e.p_one == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
        CHECK(std::abs(e.p_p) < 1e-12);
    }

    SUBCASE("zero line for lambda <= 1/2") {
        for (double lam : {0.1, 0.25, 0.5}) {
            CHECK(std::abs(appc_objective(lam, psi_star(0, 1, 0, 1))) < 1e-12);
        }
        // near the lambda -> 0 edge the family is still a zero of the form
        CHECK(std::abs(appc_objective(1e-9, psi_star(0, 1, 0, 1))) < 1e-8);
    }

    SUBCASE("phi enters only through <P (x) 1> = (1 + cos phi)/3") {
        // The phase is not inert: for lambda <= 1/2 the value follows
        // (1 - lambda)(1 - cos phi)/9 exactly.
        for (double lam : {0.2, 0.5}) {
            for (double phi : {0.0, 0.7, 1.9, 3.1}) {
                const AppcExpectations e = appc_expectations(psi_star(0, 1, 0, 1, phi));
                CHECK(e.p_one == doctest::Approx((1.0 + std::cos(phi)) / 3.0).epsilon(1e-12));
                const double expect = (1.0 - lam) * (1.0 - std::cos(phi)) / 9.0;
                CHECK(appc_objective(lam, psi_star(0, 1, 0, 1, phi)) ==
                      doctest::Approx(expect).epsilon(1e-12));
            }
        }
    }

    SUBCASE("objective is invariant under the choice of (i, j, r, s)") {
        const double ref = appc_objective(0.3, psi_star(0, 1, 0, 1));
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int r = 0; r < 3; ++r)
                    for (int s = 0; s < 3; ++s) {
                        if (i == j || r == s) continue;
                        CHECK(appc_objective(0.3, psi_star(i, j, r, s)) ==
                              doctest::Approx(ref).epsilon(1e-12));
                    }
    }

    SUBCASE("lambda = 1/2 matches the two-copy power of 1 - 3P/2") {
        const Matrix t = tensor_power(werner_pt_numerator(3, 1.5), 2, 3, 3);
        Rng rng(13);
        for (int trial = 0; trial < 5; ++trial) {
            const Vector psi = rng.unit_vector(81);
            const double direct = (psi.adjoint() * t * psi)(0, 0).real() / 9.0;
            CHECK(appc_objective(0.5, psi) == doctest::Approx(direct).epsilon(1e-12));
        }
    }

    SUBCASE("domain guards") {
        CHECK_THROWS_AS(appc_objective(0.0, psi_star(0, 1, 0, 1)), std::invalid_argument);
        CHECK_THROWS_AS(appc_objective(1.0, psi_star(0, 1, 0, 1)), std::invalid_argument);
        CHECK_THROWS_AS(psi_star(0, 0, 0, 1), std::invalid_argument);
        CHECK_THROWS_AS(psi_star(0, 1, 2, 2), std::invalid_argument);
        CHECK_THROWS_AS(psi_star(0, 1, 0, 3), std::invalid_argument);
        CHECK(std::abs(psi_star(2, 0, 1, 2, 0.4).to_vector().norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("zero-line Hessian check") {
    for (double lam : {0.1, 0.3, 0.5}) {
        const AppcHessianReport rep = appc_hessian_check(lam);
        CHECK(rep.first_order_vanishes);
        CHECK(rep.second_order_matches);
        for (size_t i = 0; i < 7; ++i) {
            CHECK(std::abs(rep.diag_second[i] - rep.diag_expected[i]) <= 1e-4);
        }
        CHECK(std::abs(rep.diag4_ts - rep.diag4_ts_expected) <= 1e-4);
        CHECK(std::abs(0.5 * rep.offdiag_26 - 0.5 * (lam - 0.75)) <= 1e-4);
        CHECK(rep.det26_formula >= -1e-12);
        CHECK(std::abs(rep.det26_numeric - rep.det26_formula) <= 1e-3);
        // the (3,5) coupling is the within-family null mode
        CHECK(std::abs(rep.offdiag_35 - (-2.0 * (1.0 - lam))) <= 2e-4);
        CHECK(std::abs(rep.det35_numeric) <= 1e-3);
    }

    SUBCASE("boundary degeneracy at lambda = 1/2") {
        const AppcHessianReport rep = appc_hessian_check(0.5);
        CHECK(std::abs(rep.det26_formula) <= 1e-12);
    }

    SUBCASE("domain guard") {
        CHECK_THROWS_AS(appc_hessian_check(0.6), std::invalid_argument);
        CHECK_THROWS_AS(appc_hessian_check(0.0), std::invalid_argument);
    }
}

TEST_SUITE_END();
