#include "entangle/states.hpp"
#include "entangle/tensor.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace entangle;
using namespace entangle::testing;

TEST_SUITE_BEGIN("states");

TEST_CASE("werner state basics") {
    SUBCASE("alpha = 1 is maximally mixed with beta = 0") {
        const WernerParams params{3, 1.0};
        CHECK(params.beta() == doctest::Approx(0.0));
        const BipartiteState rho = werner_state(params);
        CHECK(entry_distance(rho.rho, Matrix::Identity(9, 9) / 9.0) < 1e-14);
    }

    SUBCASE("beta formula and the PPT boundary point") {
        CHECK(WernerParams{3, 2.0}.beta() == doctest::Approx(1.0));
        CHECK(WernerParams{3, 5.0}.beta() == doctest::Approx(2.0));
        CHECK(WernerParams{2, 5.0}.beta() == doctest::Approx(4.0 / 3.0));
    }

    SUBCASE("alpha-beta conversion roundtrips") {
        for (double alpha : {0.0, 0.3, 1.0, 2.0, 7.5}) {
            const WernerParams p{4, alpha};
            CHECK(WernerParams::from_beta(4, p.beta()).alpha == doctest::Approx(alpha));
        }
    }

    SUBCASE("every constructor output is a valid state") {
        for (double alpha : {0.0, 0.5, 1.0, 3.0}) {
            werner_state(WernerParams{3, alpha}).validate();
        }
        tiles_upb_state().validate();
        random_state(2, 3, 4, 5).validate();
        random_separable_state(3, 3, 6, 6).validate();
    }
}

TEST_CASE("werner_pt matches the partial transpose of the werner state") {
    for (int n : {2, 3}) {
        for (int i = 0; i <= 8; ++i) {
            // beta grid in [-N, N); from_beta needs beta < N
            const double beta = -n + (2.0 * n - 0.1) * i / 8.0;
            const WernerParams params = WernerParams::from_beta(n, beta);
            const Matrix direct = werner_pt(n, beta);
            const Matrix via_state = partial_transpose(werner_state(params), Subsystem::A);
            CHECK(entry_distance(direct, via_state) < 1e-10);
        }
    }
}

TEST_CASE("werner_pt spectrum") {
    SUBCASE("beta = 0: maximally mixed") {
        CHECK(entry_distance(werner_pt(3, 0.0), Matrix::Identity(9, 9) / 9.0) < 1e-14);
    }

    SUBCASE("beta = 1: PSD with one zero eigenvalue on the MES") {
        const Matrix pt = werner_pt(3, 1.0);
        const RealVector evals = hermitian_eigenvalues(pt);
        CHECK(evals[0] == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(evals[1] > 0.0);
        CHECK((pt * max_entangled(3)).norm() < 1e-13);
    }

    SUBCASE("beta = 3/2: minimal eigenvalue -(1/2)/7.5") {
        const RealVector evals = hermitian_eigenvalues(werner_pt(3, 1.5));
        CHECK(evals[0] == doctest::Approx(-0.5 / 7.5));
        // multiplicity 8 eigenvalue 1/n(beta)
        for (int i = 1; i < 9; ++i) CHECK(evals[i] == doctest::Approx(1.0 / 7.5));
    }

    SUBCASE("normalization guard") {
        CHECK_THROWS_AS(werner_pt(2, 4.5), std::invalid_argument);
    }
}

TEST_CASE("max entangled state") {
    const Vector psi2 = max_entangled(2);
    CHECK(std::abs(psi2[0] - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(psi2[3] - 1.0 / std::sqrt(2.0)) < 1e-15);
    CHECK(std::abs(psi2[1]) + std::abs(psi2[2]) < 1e-15);
    CHECK(std::abs(psi2.norm() - 1.0) < 1e-15);

    const Vector psi3 = max_entangled(3);
    const Matrix reduced = partial_trace(Matrix(psi3 * psi3.adjoint()), 3, 3, Subsystem::B);
    CHECK(entry_distance(reduced, Matrix::Identity(3, 3) / 3.0) < 1e-14);
}

TEST_CASE("tiles UPB state") {
    const auto vecs = tiles_upb_vectors();

    SUBCASE("the five product vectors are orthonormal") {
        for (int i = 0; i < 5; ++i) {
            const Vector vi = vecs[static_cast<size_t>(i)].kron();
            CHECK(std::abs(vi.norm() - 1.0) < 1e-14);
            for (int j = i + 1; j < 5; ++j) {
                CHECK(std::abs(vi.dot(vecs[static_cast<size_t>(j)].kron())) < 1e-14);
            }
        }
    }

    SUBCASE("unextendibility spot checks") {
        // Any product vector orthogonal to four of the tiles vectors has a
        // nonzero overlap with the fifth; spot-check with the complement
        // basis: no computational product vector lies in the complement.
        const BipartiteState rho = tiles_upb_state();
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) {
                Vector e = Vector::Zero(3), f = Vector::Zero(3);
                e[i] = 1.0;
                f[k] = 1.0;
                const Vector v = ProductVector{e, f}.kron();
                CHECK((v.adjoint() * rho.rho * v)(0, 0).real() < 0.25 - 1e-3);
            }
    }

    const BipartiteState rho = tiles_upb_state();

    SUBCASE("rank 4, PPT, PT_B invariant") {
        CHECK(numerical_kernel(rho.rho, ToleranceConfig{}).rank == 4);
        CHECK(min_eigenvalue(partial_transpose(rho, Subsystem::A)) > -1e-12);
        CHECK(entry_distance(partial_transpose(rho, Subsystem::B), rho.rho) < 1e-14);
    }

    SUBCASE("purity 1/4") {
        CHECK((rho.rho * rho.rho).trace().real() == doctest::Approx(0.25).epsilon(1e-12));
    }
}

TEST_CASE("random generators are reproducible and valid") {
    SUBCASE("same seed, same state") {
        const BipartiteState a = random_state(2, 3, 4, 123);
        const BipartiteState b = random_state(2, 3, 4, 123);
        CHECK(entry_distance(a.rho, b.rho) == 0.0);
        const BipartiteState c = random_state(2, 3, 4, 124);
        CHECK(entry_distance(a.rho, c.rho) > 1e-3);
    }

    SUBCASE("rank control") {
        CHECK(numerical_kernel(random_state(2, 3, 2, 5).rho, ToleranceConfig{}).rank == 2);
        CHECK(numerical_kernel(random_state(2, 3, 6, 5).rho, ToleranceConfig{}).rank == 6);
    }

    SUBCASE("product vector normalization") {
        const ProductVector pv = random_product_vector(3, 4, 9);
        pv.validate();
        const ProductVector pv2 = random_product_vector(3, 4, 9);
        CHECK((pv.e - pv2.e).norm() == 0.0);
    }

    SUBCASE("separable mixtures are PPT") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const BipartiteState s = random_separable_state(2, 3, 5, seed);
            CHECK(min_eigenvalue(partial_transpose(s, Subsystem::A)) > -1e-12);
        }
    }
}

TEST_SUITE_END();
