#include "entangle/separability.hpp"
#include "entangle/states.hpp"
#include "entangle/tensor.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>

using namespace entangle;
using namespace entangle::testing;

namespace {

BipartiteState binary_product_mixture(int m, int n, double p, std::uint64_t seed,
                                      ProductVector* out1 = nullptr,
                                      ProductVector* out2 = nullptr) {
    Rng rng(seed);
    ProductVector p1{rng.unit_vector(m), rng.unit_vector(n)};
    ProductVector p2{rng.unit_vector(m), rng.unit_vector(n)};
    BipartiteState state(m, n, p * product_projector(p1) + (1.0 - p) * product_projector(p2));
    if (out1) *out1 = p1;
    if (out2) *out2 = p2;
    return state;
}

}  // namespace

TEST_SUITE_BEGIN("separability");

TEST_CASE("ppt_check statuses") {
    SUBCASE("2x2 NPPT Werner is certified entangled") {
        const Verdict v = ppt_check(werner_state(WernerParams{2, 5.0}));
        CHECK(v.status == VerdictStatus::EntangledCertified);
        CHECK(v.margin < -1e-3);
    }

    SUBCASE("product states in 2x2 are certified separable") {
        ProductVector pv = random_product_vector(2, 2, 3);
        const Verdict v = ppt_check(BipartiteState(2, 2, product_projector(pv)));
        CHECK(v.status == VerdictStatus::SeparableCertified);
        CHECK(v.margin > -1e-12);
    }

    SUBCASE("tiles is PPT but 3x3: inconclusive-PPT") {
        const Verdict v = ppt_check(tiles_upb_state());
        CHECK(v.status == VerdictStatus::Inconclusive);
        CHECK(v.label == "inconclusive-PPT");
        CHECK(v.margin > -1e-9);
    }
}

TEST_CASE("reduction_check") {
    SUBCASE("maximally entangled 2x2: eigenvalue -1/2, distillable") {
        const Vector mes = max_entangled(2);
        const Verdict v = reduction_check(BipartiteState(2, 2, mes * mes.adjoint()));
        CHECK(v.status == VerdictStatus::EntangledCertified);
        CHECK(v.distillable);
        CHECK(v.margin == doctest::Approx(-0.5).epsilon(1e-12));
    }

    SUBCASE("maximally mixed: inconclusive with positive margin") {
        const Verdict v = reduction_check(BipartiteState(2, 2, Matrix::Identity(4, 4) / 4.0));
        CHECK(v.status == VerdictStatus::Inconclusive);
        CHECK(v.margin > 0.0);
    }

    SUBCASE("NPPT Werner at N=3 does not violate reduction") {
        // Reduced states are maximally mixed; 1/3 - lambda_max(rho) = 1/3 - 5/21 > 0.
        const BipartiteState rho = werner_state(WernerParams{3, 5.0});
        CHECK(ppt_check(rho).status == VerdictStatus::EntangledCertified);
        const Verdict v = reduction_check(rho);
        CHECK(v.status == VerdictStatus::Inconclusive);
        CHECK(v.margin == doctest::Approx(1.0 / 3.0 - 5.0 / 21.0).epsilon(1e-10));
    }

    SUBCASE("reduction violation implies a PPT violation on random states") {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            const BipartiteState s = random_state(2, 3, 1 + static_cast<int>(seed % 6), seed);
            if (reduction_check(s).status == VerdictStatus::EntangledCertified) {
                CHECK(ppt_check(s).status == VerdictStatus::EntangledCertified);
            }
        }
    }
}

TEST_CASE("rank_criterion_check") {
    SUBCASE("entangled pure state of Schmidt rank 2 is distillable") {
        const Vector mes = max_entangled(2);
        const Verdict v = rank_criterion_check(BipartiteState(2, 2, mes * mes.adjoint()));
        CHECK(v.status == VerdictStatus::EntangledCertified);
        CHECK(v.distillable);
        CHECK(v.details.at("rank_rho") == 1);
        CHECK(v.details.at("rank_rho_a") == 2);
    }

    SUBCASE("maximally mixed is inconclusive") {
        const Verdict v = rank_criterion_check(BipartiteState(3, 3, Matrix::Identity(9, 9) / 9.0));
        CHECK(v.status == VerdictStatus::Inconclusive);
    }

    SUBCASE("rank-2 separable mixtures never trigger") {
        for (std::uint64_t seed = 0; seed < 40; ++seed) {
            const BipartiteState s = binary_product_mixture(3, 3, 0.4, 100 + seed);
            CHECK(rank_criterion_check(s).status == VerdictStatus::Inconclusive);
        }
    }
}

TEST_CASE("lemma1_check") {
    ProductOptOptions opts;
    opts.restarts = 128;
    opts.seed = 5;

    SUBCASE("detects the tiles state") {
        const Verdict v = lemma1_check(tiles_upb_state(), opts);
        CHECK(v.status == VerdictStatus::EntangledHeuristic);
        CHECK(v.margin == doctest::Approx(0.25 - 0.242895946666067).epsilon(1e-6));
        CHECK(v.details.at("lhs") == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(v.details.at("converged_fraction") >= 0.9);
    }

    SUBCASE("pure product state sits exactly on the threshold") {
        const ProductVector pv = random_product_vector(2, 2, 8);
        const Verdict v = lemma1_check(BipartiteState(2, 2, product_projector(pv)), opts);
        CHECK(v.status == VerdictStatus::Inconclusive);
        CHECK(std::abs(v.margin) < 1e-9);
    }
}

TEST_CASE("binary_mixture_check") {
    SUBCASE("recovers both factor-pair branches of a p = 0.3 mixture") {
        ProductVector p1, p2;
        const BipartiteState s = binary_product_mixture(2, 2, 0.3, 7, &p1, &p2);
        const BinaryMixtureResult res = binary_mixture_check(s);
        REQUIRE(res.verdict.status == VerdictStatus::SeparableCertified);
        REQUIRE(res.solutions.size() == 2);

        const Matrix r1 = p1.e * p1.e.adjoint();
        const Matrix r2 = p2.e * p2.e.adjoint();
        int matched1 = 0, matched2 = 0;
        for (const BinaryMixtureSolution& sol : res.solutions) {
            // M(mu, nu) = 0 within tolerance
            const Matrix rho_a = partial_trace(s, Subsystem::B);
            const Matrix rho_b = partial_trace(s, Subsystem::A);
            const Matrix m_res =
                s.rho - kron(sol.mu, rho_b) - kron(rho_a, sol.nu) + kron(sol.mu, sol.nu);
            CHECK(max_abs(m_res) < 1e-9);
            CHECK(std::abs(sol.mu.trace().real() - 1.0) < 1e-9);
            CHECK(std::abs(sol.nu.trace().real() - 1.0) < 1e-9);
            if (entry_distance(sol.mu, r1) < 1e-6) ++matched1;
            if (entry_distance(sol.mu, r2) < 1e-6) ++matched2;
        }
        CHECK(matched1 == 1);
        CHECK(matched2 == 1);
    }

    SUBCASE("pure product input certifies immediately") {
        const ProductVector pv = random_product_vector(2, 3, 9);
        const BinaryMixtureResult res =
            binary_mixture_check(BipartiteState(2, 3, product_projector(pv)));
        CHECK(res.verdict.status == VerdictStatus::SeparableCertified);
    }

    SUBCASE("three generic product terms have correlation rank >= 2") {
        const BinaryMixtureResult res = binary_mixture_check(random_separable_state(3, 3, 3, 31));
        CHECK(res.verdict.status == VerdictStatus::Inconclusive);
        CHECK(res.verdict.details.at("sigma_ratio") > 1e-4);
    }

    SUBCASE("seeded roundtrip sweep across 2x2, 2x3 and 3x3") {
        int count = 0;
        for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 2}, {2, 3}, {3, 3}}) {
            for (int trial = 0; trial < 30; ++trial) {
                Rng rng(static_cast<std::uint64_t>(5000 + 97 * m + 13 * n + trial));
                const double p = 0.15 + 0.7 * rng.uniform();
                ProductVector p1{rng.unit_vector(m), rng.unit_vector(n)};
                ProductVector p2{rng.unit_vector(m), rng.unit_vector(n)};
                const BipartiteState s(
                    m, n, p * product_projector(p1) + (1.0 - p) * product_projector(p2));
                const BinaryMixtureResult res = binary_mixture_check(s);
                REQUIRE(res.verdict.status == VerdictStatus::SeparableCertified);
                // explicit two-term reconstruction
                const Matrix rho_a = partial_trace(s, Subsystem::B);
                const Matrix rho_b = partial_trace(s, Subsystem::A);
                for (const BinaryMixtureSolution& sol : res.solutions) {
                    const Matrix rebuilt = kron(sol.mu, Matrix(rho_b - (1.0 - sol.p) * sol.nu)) +
                                           kron(Matrix(rho_a - sol.p * sol.mu), sol.nu);
                    CHECK(max_abs(rebuilt - s.rho) <= 1e-8);
                }
                ++count;
            }
        }
        CHECK(count == 90);
    }
}

TEST_CASE("subtract_product_vector") {
    SUBCASE("exact projector input is fully subtracted") {
        const ProductVector pv = random_product_vector(2, 2, 3);
        const SubtractionResult res =
            subtract_product_vector(BipartiteState(2, 2, product_projector(pv)), pv);
        CHECK(res.lambda_max == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(max_abs(res.residual) < 1e-9);
    }

    SUBCASE("vector orthogonal to the range yields lambda = 0") {
        Vector e0(2), e1(2);
        e0 << 1.0, 0.0;
        e1 << 0.0, 1.0;
        const BipartiteState s(2, 2, product_projector({e0, e0}));
        const SubtractionResult res = subtract_product_vector(s, {e1, e1});
        CHECK(res.lambda_max < 1e-9);
    }

    SUBCASE("closed-form oracle on full-rank states") {
        // For full-rank rho the largest feasible lambda along |v> is
        // 1/<v|rho^-1|v>, per constraint; take the minimum over both sides.
        for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
            const BipartiteState s =
                seed == 1 ? BipartiteState(2, 2, Matrix::Identity(4, 4) / 4.0)
                          : random_separable_state(2, 2, 6, seed);
            const ProductVector pv = random_product_vector(2, 2, seed + 50);
            const Vector v = pv.kron();
            const Vector vc = pv.conjugate_a().kron();
            const Matrix pt = partial_transpose(s, Subsystem::A);
            const double oracle =
                std::min(1.0 / (v.adjoint() * s.rho.inverse() * v)(0, 0).real(),
                         1.0 / (vc.adjoint() * pt.inverse() * vc)(0, 0).real());
            const SubtractionResult res = subtract_product_vector(s, pv);
            CHECK(res.lambda_max == doctest::Approx(oracle).epsilon(1e-6));
            if (seed == 1) CHECK(res.lambda_max == doctest::Approx(0.25).epsilon(1e-9));
            // residual and its partial transpose stay PSD within 2 tol
            CHECK(min_eigenvalue(res.residual) >= -2e-9);
            CHECK(min_eigenvalue(partial_transpose(res.residual, 2, 2, Subsystem::A)) >= -2e-9);
        }
    }
}

TEST_CASE("edge_decompose") {
    SUBCASE("separable 2x2 inputs decompose completely") {
        for (std::uint64_t seed : {5ULL, 6ULL, 7ULL}) {
            const BipartiteState s = binary_product_mixture(2, 2, 0.4, seed);
            const EdgeDecomposition dec = edge_decompose(s, 200, seed);
            CHECK(dec.residual.norm() < 1e-6);
            CHECK(dec.lambda_total == doctest::Approx(1.0).epsilon(1e-6));
            Matrix rebuilt = dec.residual;
            for (const auto& [w, pv] : dec.separable_terms) rebuilt += w * product_projector(pv);
            CHECK(max_abs(rebuilt - s.rho) < 1e-8);
        }
    }

    SUBCASE("tiles state is already edge-like: Lambda = 0") {
        const EdgeDecomposition dec = edge_decompose(tiles_upb_state(), 40, 1);
        CHECK(dec.lambda_total < 1e-7);
        CHECK(dec.separable_terms.empty());
    }

    SUBCASE("half product, half tiles: at least the product part comes out") {
        Rng rng(8);
        const ProductVector pv{rng.unit_vector(3), rng.unit_vector(3)};
        const BipartiteState mix(3, 3,
                                 0.5 * product_projector(pv) + 0.5 * tiles_upb_state().rho);
        const EdgeDecomposition dec = edge_decompose(mix, 100, 2);
        CHECK(dec.lambda_total >= 0.45);
        // residual and its PT stay PSD
        CHECK(min_eigenvalue(dec.residual) >= -2e-9);
        CHECK(min_eigenvalue(partial_transpose(dec.residual, 3, 3, Subsystem::A)) >= -2e-9);
        Matrix rebuilt = dec.residual;
        for (const auto& [w, q] : dec.separable_terms) rebuilt += w * product_projector(q);
        CHECK(max_abs(rebuilt - mix.rho) < 1e-8);
    }
}

TEST_SUITE_END();
