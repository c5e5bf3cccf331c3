#include "doctest.h"

#include "cpmlab/limits.hpp"
#include "cpmlab/ste_infinite.hpp"

#include <cmath>

using namespace cpm;

namespace {

PrincipalTriple reference_triple() { return make_triple(0.3, 0.2, 0.45, 0.7); }

}  // namespace

TEST_CASE("limiting constants") {
    Rng rng(21);
    for (int i = 0; i < 50; ++i) {
        auto t = random_triple(rng);
        cplx r = r_infty(t);
        // invariant under abar -> 1 - bbar, bbar -> 1 - abar
        auto f = [&](char a, char b) {
            auto wb = t.pair(WeightKind::Wbar, a, b);
            auto refl = make_exponents(1.0 - wb.beta, 1.0 - wb.alpha);
            return f_regime1(t.pair(WeightKind::W, a, b), refl);
        };
        cplx rr = cocycle(f('p', 'q'), f('q', 'r'), f('p', 'r'));
        CHECK(std::abs(rr / r - 1.0) < 1e-12);
        // f_xy -> f_xy g_x / g_y drops out
        cplx fpq = 1.3, fqr = 0.7, fpr = 2.1, gp = 0.4, gq = 1.7, gr = cplx(0.2, 0.9);
        CHECK(std::abs(cocycle(fpq * gp / gq, fqr * gq / gr, fpr * gp / gr) - cocycle(fpq, fqr, fpr)) < 1e-14);
    }
    auto t = reference_triple();
    auto same = t.pair(WeightKind::Wbar, 'p', 'p');
    CHECK(std::abs(same.alpha) < 1e-15);
    // coinciding rapidities: the regime-I factor is 1, the others hit Gamma(0)
    CHECK(std::abs(f_regime1(t.pair(WeightKind::W, 'p', 'p'), same) - 1.0) < 1e-14);
    CHECK_THROWS_AS(f_regime2(same), pole_error);
    CHECK_THROWS_AS(f_regime3(same), pole_error);
}

TEST_CASE("finite-N constant approaches the regime-I constant") {
    auto t = reference_triple();
    cplx r = r_infty(t);
    double prev = 0.0;
    for (int N : {64, 128, 256}) {
        double scaled = N * std::abs(r_pqr(N, t.p, t.q, t.r).direct / r - 1.0);
        if (prev > 0.0) CHECK(scaled < 1.5 * prev);
        prev = scaled;
    }
}

TEST_CASE("regime I star-triangle sum") {
    auto t = reference_triple();
    for (auto [a, b, c] : {std::array<long, 3>{0, 0, 0}, std::array<long, 3>{2, -1, 3}}) {
        auto res = regime1_ste(t, a, b, c, 100000);
        CHECK(res.residual.rel_err < 1e-7);
        CHECK(res.tail_bound < 1e-4);
        CHECK(std::abs(res.decay_exponent + 2.0) < 0.05);
        CHECK(res.expected_decay == doctest::Approx(-2.0).epsilon(1e-12));
    }
    CHECK_THROWS(regime1_ste(t, 0, 0, 0, 10));
}

TEST_CASE("regime II weights") {
    auto t = reference_triple();
    CHECK(std::abs(regime2_weight(WeightKind::W, t.p, t.q, pi) - std::exp((t.p.gamma - t.q.gamma) / 2)) < 1e-15);
    for (double x = 0.1; x < 2 * pi; x += 0.3) {
        CHECK(regime2_weight(WeightKind::W, t.p, t.q, x) > 0.0);
        CHECK(regime2_weight(WeightKind::Wbar, t.p, t.r, x) > 0.0);
        // same function as the generic limiting weight with the weight exponents
        for (WeightKind kind : {WeightKind::W, WeightKind::Wbar}) {
            cplx g = limit_weight_II(exponents(t.q, t.r, kind), x);
            CHECK(std::abs(regime2_weight(kind, t.q, t.r, x) - g) < 1e-12 * std::abs(g));
            cplx h = limit_weight_III(exponents(t.q, t.r, kind), x - 3.0);
            CHECK(std::abs(regime3_weight(kind, t.q, t.r, x - 3.0) - h) < 1e-12 * std::abs(h));
        }
    }
}

TEST_CASE("regime II star-triangle integral") {
    auto t = reference_triple();
    QuadratureConfig cfg;
    for (auto v : {Regime2Variant::chiral, Regime2Variant::gauge, Regime2Variant::nonchiral}) {
        auto r = regime2_ste(t, pi / 2, pi, 3 * pi / 2, cfg, v);
        CHECK(r.residual.rel_err < 1e-6);
        CHECK(r.quad.converged);
    }
    // arguments outside [0, 2 pi) and in reversed order
    CHECK(regime2_ste(t, 7.0, -1.0, 2.5, cfg).residual.rel_err < 1e-6);
    CHECK(regime2_ste(t, 7.0, -1.0, 2.5, cfg, Regime2Variant::gauge).residual.rel_err < 1e-6);
    // refinement is stable
    QuadratureConfig fine = cfg;
    fine.levels = 11;
    auto coarse = regime2_ste(t, 0.4, 2.0, 4.4, cfg), refined = regime2_ste(t, 0.4, 2.0, 4.4, fine);
    CHECK(std::abs(coarse.residual.lhs - refined.residual.lhs) < 1e-10 * std::abs(refined.residual.lhs));
    CHECK_THROWS(regime2_ste(t, 1.0, 1.0 + 2 * pi, 3.0, cfg));
}

TEST_CASE("regime II Fourier coefficients and sum") {
    auto t = reference_triple();
    QuadratureConfig cfg;
    for (long j = -3; j <= 3; ++j) {
        cplx closed = regime2_coefficient(WeightKind::Wbar, t.p, t.r, j);
        cplx quad = regime2_coefficient_quadrature(WeightKind::Wbar, t.p, t.r, j, cfg).value;
        CHECK(std::abs(quad - closed) < 1e-8 * std::abs(closed));
    }
    for (auto [a, b, c] : {std::array<long, 3>{0, 0, 0}, std::array<long, 3>{1, 0, -2}}) {
        auto r = regime2_fourier_ste(t, a, b, c, 100000, cfg);
        CHECK(r.sum.residual.rel_err < 1e-6);
        CHECK(r.coefficient_check < 1e-8);
        CHECK(std::abs(r.sum.decay_exponent + 2.0) < 0.05);
    }
}

TEST_CASE("regime III star-triangle integral") {
    auto t = reference_triple();
    QuadratureConfig cfg;
    auto r = regime3_ste(t, -1.0, 0.0, 2.0, cfg);
    CHECK(r.residual.rel_err < 1e-6);
    CHECK(regime3_ste(t, -1.0, 0.0, 2.0, cfg, true).residual.rel_err < 1e-6);
    // rescaling the spins by s multiplies both sides by s^{-1}
    auto r2 = regime3_ste(t, -2.0, 0.0, 4.0, cfg);
    CHECK(std::abs(r2.residual.lhs / r.residual.lhs - 0.5) < 1e-7);
    CHECK(std::abs(r2.residual.rhs / r.residual.rhs - 0.5) < 1e-12);
    cfg.tail_map = TailMap::exponential;
    CHECK(regime3_ste(t, 0.3, -0.8, 1.1, cfg).residual.rel_err < 1e-6);
    CHECK_THROWS(regime3_ste(t, 1.0, 1.0, 2.0, cfg));
}

TEST_CASE("large-N limit of F") {
    auto m = Modulus::from_k(0.3);
    auto p = rapidity_from_lambda(m, 0.2), q = rapidity_from_lambda(m, 0.45);
    double prev = 1.0;
    for (int N : {256, 512, 1024}) {
        auto c = f_pq_limit_check(N, p, q);
        CHECK(c.deviation < prev);
        prev = c.deviation;
    }
    CHECK(prev < 1e-4);
    auto big = f_pq_limit_check(2048, p, q);
    CHECK(big.log_deviation < 1e-3);
    CHECK(big.dual_ratio_deviation < 1e-2);

    Rng rng(22);
    for (int i = 0; i < 100; ++i) {
        auto t = random_triple(rng);
        CHECK(f_pq_limit_check(4, t.p, t.r).trig_identity_residual < 1e-12);
    }
}
