#include "doctest.h"

#include "cpmlab/limits.hpp"
#include "cpmlab/random.hpp"
#include "cpmlab/triple.hpp"

#include <cmath>

using namespace cpm;

namespace {

ExponentPair sample_pair(Rng& rng) {
    auto m = Modulus::from_k(rng.uniform(0.0, 0.8));
    double lp = rng.uniform(0.05, 0.45);
    double lq = lp + rng.uniform(0.1, 0.5);
    return exponents(rapidity_from_lambda(m, lp), rapidity_from_lambda(m, lq), WeightKind::W);
}

}  // namespace

TEST_CASE("regime I weight") {
    auto e = make_exponents(0.3, 0.8);
    CHECK(limit_weight_I(e, 0) == 1.0);
    CHECK(std::abs(limit_weight_I(e, 2) - 0.3 * 1.3 / (0.8 * 1.8)) < 1e-15);
    auto same = make_exponents(0.37, 0.37);
    for (long n : {-7L, -1L, 3L, 200L}) CHECK(std::abs(limit_weight_I(same, n) - 1.0) < 1e-14);
    // negative side (1-beta)_m / (1-alpha)_m
    CHECK(std::abs(limit_weight_I(e, -2) - 0.2 * 1.2 / (0.7 * 1.7)) < 1e-15);

    auto pos = limit_weight_I_table(e, 300, +1);
    auto neg = limit_weight_I_table(e, 300, -1);
    for (long n : {1L, 64L, 65L, 299L}) {
        CHECK(std::abs(pos[n] / limit_weight_I(e, n) - 1.0) < 1e-12);
        CHECK(std::abs(neg[n] / limit_weight_I(e, -n) - 1.0) < 1e-12);
    }
    // vanishes at large |n| when Re alpha < Re beta
    CHECK(std::abs(limit_weight_I(e, 100000000L)) < 1e-3);
}

TEST_CASE("regime II weight") {
    auto sym = make_exponents(0.3, 0.7);
    CHECK(std::abs(sym.a_const - 1.0) < 1e-15);
    CHECK(std::abs(limit_weight_II(sym, pi) - 1.0) < 1e-15);

    Rng rng(11);
    auto e = sample_pair(rng);
    CHECK(std::abs(limit_weight_II(e, pi) - std::exp(std::log(e.a_const) / 2.0)) < 1e-14);
    for (int i = 0; i < 100; ++i) {
        double x = rng.uniform(-20.0, 20.0);
        CHECK(std::abs(limit_weight_II(e, x + 2 * pi) / limit_weight_II(e, x) - 1.0) < 1e-9);
    }
    CHECK(std::isinf(limit_weight_II(e, 0.0).real()));
    // nonchiral class is reflection symmetric on the circle
    for (double x : {0.3, 1.7, 2.9}) CHECK(std::abs(limit_weight_II(sym, x) - limit_weight_II(sym, 2 * pi - x)) < 1e-14);
}

TEST_CASE("regime III weight") {
    auto sym = make_exponents(0.3, 0.7);
    CHECK(std::abs(limit_weight_III(sym, 1.0) - 1.0) < 1e-15);
    CHECK(std::abs(limit_weight_III(sym, -1.0) - 1.0) < 1e-15);
    CHECK_THROWS(limit_weight_III(sym, 0.0));
    Rng rng(12);
    auto e = sample_pair(rng);
    for (double x : {0.5, 2.0, 7.0})
        CHECK(std::abs(limit_weight_III(e, x) / limit_weight_III(e, -x) - 1.0 / e.a_const) < 1e-13);
}

TEST_CASE("regime weight constants") {
    Rng rng(13);
    auto e = sample_pair(rng);
    int N = 400;
    auto w2 = regime_weight(Regime::II, e, N, 2.0);
    cplx expect = 2.0 * std::exp((e.alpha - e.beta) * std::log(N / pi)) * cpm::gamma(e.beta) / cpm::gamma(e.alpha);
    CHECK(std::abs(w2.c_const - expect) < 1e-12 * std::abs(expect));
    auto w3 = regime_weight(Regime::III, e, N, 2.0);
    cplx expect3 = 2.0 * std::exp((e.alpha - e.beta) * std::log(std::sqrt(double(N)))) * cpm::gamma(e.beta) /
                   cpm::gamma(e.alpha) * std::sqrt(e.a_const);
    CHECK(std::abs(w3.d_const - expect3) < 1e-12 * std::abs(expect3));
    CHECK(std::abs(w3(1.5) - w3.d_const * limit_weight_III(e, 1.5)) < 1e-14);
    auto w1 = regime_weight(Regime::I, e, N);
    CHECK(std::abs(w1(3.0) - limit_weight_I(e, 3)) < 1e-15);
    CHECK_THROWS(w1(0.5));

    // finite-N weights approach the regime-II shape at fixed x = 2 pi n / N
    auto m = Modulus::from_k(0.4);
    auto p = rapidity_from_lambda(m, 0.2), q = rapidity_from_lambda(m, 0.55);
    auto eq = exponents(p, q, WeightKind::W);
    double prev = 1e9;
    for (int NN : {200, 400, 800}) {
        long n = NN / 4;
        cplx fin = product_form(NN, eq, n);
        auto w = regime_weight(Regime::II, eq, NN);
        double dev = std::abs(fin / w(2 * pi * n / NN) - 1.0);
        CHECK(dev < prev);
        prev = dev;
    }
    CHECK(prev < 1e-2);
}

TEST_CASE("S_n exact sum") {
    CHECK(s_n_exact(16, 0.3, 0) == 0.0);
    // mirrored sum: S_{-n}(alpha) = -S_n(1 - alpha)
    for (long n : {1L, 5L, 9L}) CHECK(std::abs(s_n_exact(16, 0.3, -n) + s_n_exact(16, 0.7, n)) < 1e-14);
    // complex path agrees with the quad path on the real line
    cplx direct = 0.0;
    for (int j = 1; j <= 5; ++j) {
        double t = pi * (j + 0.3 - 1.0) / 16.0;
        direct += std::log(std::sin(t) / t);
    }
    CHECK(std::abs(s_n_exact(16, 0.3, 5) - direct) < 1e-14);
    CHECK(std::abs(s_n_exact(16, cplx(0.3, 1e-30), 5) - direct) < 1e-13);
}

TEST_CASE("phi and its derivatives") {
    CHECK(std::abs(phi_log_sinc(1e-8, 0)) < 1e-20);
    CHECK(std::abs(phi_log_sinc(1e-8, 1)) < 1e-15);
    CHECK(std::abs(phi_log_sinc(1.0, 1) - std::log(std::sin(1.0))) < 1e-14);
    CHECK(std::abs(phi_log_sinc(1.0, 1) + 0.17260374) < 1e-8);
    for (double z : {0.3, 1.2, 2.0, 2.8, -2.5}) {
        CHECK(std::abs(phi_log_sinc(z, 1) - std::log(std::sin(z) / z)) < 1e-13);
        CHECK(std::abs(phi_log_sinc(z, 2) - (std::cos(z) / std::sin(z) - 1.0 / z)) < 1e-12);
    }
    // finite-difference oracle for higher derivatives, both evaluation paths
    for (double z : {0.8, 2.2}) {
        for (int j = 1; j <= 6; ++j) {
            double h = 1e-5;
            double fd = (phi_log_sinc(z + h, j - 1) - phi_log_sinc(z - h, j - 1)) / (2 * h);
            CHECK(std::abs(phi_log_sinc(z, j) - fd) < 1e-7 * std::max(1.0, std::abs(fd)));
        }
    }
    // continuity across |z| = pi/2 where the method switches
    for (int j = 0; j <= 5; ++j) {
        double a = phi_log_sinc(pi / 2, j), b = phi_log_sinc(std::nextafter(pi / 2, 4.0), j);
        CHECK(std::abs(a - b) < 1e-12 * std::max(1.0, std::abs(a)));
    }
    CHECK_THROWS(phi_log_sinc(pi, 1));
    CHECK_THROWS(phi_log_sinc(1.0, -1));
}

TEST_CASE("chi majorant") {
    CHECK(chi_majorant(2, 0.0) == 0.0);
    for (int m = 2; m <= 8; ++m)
        for (double z : {0.2, 1.0, 2.5}) {
            CHECK(chi_majorant(m, z) > 0.0);
            // bounds |phi^{(m)}(z) - phi^{(m)}(0)| once multiplied by zeta(2 ceil(m/2))
            double diff = std::abs(phi_log_sinc(z, m) - phi_log_sinc(1e-300, m));
            double zeta = zeta_even(2 * ((m + 1) / 2));
            CHECK(diff <= zeta * chi_majorant(m, z) * (1 + 1e-12));
        }
}

TEST_CASE("asymptotic expansion") {
    auto r0 = s_n_asymptotic(64, 0.4, 16, 0);
    CHECK(std::abs(r0.value - 64 / pi * phi_log_sinc(pi / 4, 0)) < 1e-12);
    CHECK(r0.truncation_order == 0);

    auto c = asymptotic_check(64, 0.5, 32, 3);
    CHECK(c.within());
    auto c2 = asymptotic_check(128, 0.25, 40, 3);
    CHECK(c2.within());
    CHECK(c2.bound < 1e-6);
    // the bound tightens with order
    CHECK(asymptotic_check(128, 0.25, 40, 6).bound < c2.bound);
    CHECK_THROWS(s_n_asymptotic(64, 0.3, 33, 2));
    CHECK_THROWS(s_n_asymptotic(64, 0.3, 10, 13));
}

TEST_CASE("asymptotic bound soundness on the validation grid") {
    int violations = 0, points = 0;
    for (int N : {32, 64, 128, 256})
        for (int eighth : {1, 2, 3, 4})
            for (int a = 1; a <= 9; ++a)
                for (int order = 0; order <= 6; ++order) {
                    auto c = asymptotic_check(N, a / 10.0, N * eighth / 8, order);
                    ++points;
                    if (!c.within()) ++violations;
                }
    CHECK(points == 4 * 4 * 9 * 7);
    CHECK(violations == 0);
}

TEST_CASE("leading finite-N correction is second order") {
    auto sym = make_exponents(0.3, 0.7);
    // the correction factor itself is 1 in the self-dual class
    CHECK(finite_n_correction_check(64, sym, 16) < 1e-3);

    Rng rng(14);
    for (int t = 0; t < 3; ++t) {
        auto e = sample_pair(rng);
        for (int frac_den : {4, 2}) {
            double d64 = finite_n_correction_check(64, e, 64 / frac_den);
            double d128 = finite_n_correction_check(128, e, 128 / frac_den);
            double d256 = finite_n_correction_check(256, e, 256 / frac_den);
            CHECK(d64 / d128 > 3.2);
            CHECK(d64 / d128 < 4.8);
            CHECK(d128 / d256 > 3.2);
            CHECK(d128 / d256 < 4.8);
        }
    }
}

TEST_CASE("H1 sum against closed form") {
    Rng rng(15);
    for (int t = 0; t < 4; ++t) {
        auto e = sample_pair(rng);
        for (double x : {0.4, pi, 5.5}) {
            auto s = h1_partial_sum(e, x, 20000);
            cplx c = h1_closed_form(e, x);
            CHECK(std::abs(s.value - c) / std::abs(c) < 1e-8);
        }
    }
    // x = pi is the alternating series
    auto e = make_exponents(0.3, 0.8);
    cplx expect = std::pow(2.0, -0.5) * cpm::gamma(0.7) * cpm::gamma(0.8) / cpm::gamma(0.5);
    CHECK(std::abs(h1_closed_form(e, pi) - expect) < 1e-14);
    // reflection (alpha, beta, x) -> (1 - beta, 1 - alpha, -x)
    auto r = make_exponents(0.2, 0.7);
    CHECK(std::abs(h1_partial_sum(e, 1.3, 20000).value - h1_partial_sum(r, 2 * pi - 1.3, 20000).value) < 1e-9);
    CHECK_THROWS(h1_closed_form(e, 0.0));
    CHECK_THROWS(h1_closed_form(e, 2 * pi));
}

TEST_CASE("H1 Fourier coefficients") {
    Rng rng(16);
    QuadratureConfig cfg;
    for (int t = 0; t < 3; ++t) {
        auto e = sample_pair(rng);
        cplx k = std::pow(2.0, e.beta - e.alpha - 1.0) * cpm::gamma(1.0 - e.alpha) * cpm::gamma(e.beta) / cpm::gamma(e.beta - e.alpha) *
                 std::exp(cplx(0, -1) * pi * (1.0 - e.alpha - e.beta) / 2.0);
        for (long n = -3; n <= 3; ++n) {
            cplx closed = h1_fourier_closed(e, n);
            auto q = h1_fourier_quadrature(e, n, cfg);
            CHECK(std::abs(q.value - closed) < 1e-8 * std::max(1.0, std::abs(closed)));
            // coefficients of the closed form are the regime-I weights
            CHECK(std::abs(k * closed - limit_weight_I(e, n)) < 1e-12);
        }
    }
}

TEST_CASE("duality maps") {
    auto sym = make_exponents(0.3, 0.7);
    auto d = duality_map(sym, DualDirection::to_dual).pair;
    CHECK(std::abs(d.alpha + d.beta - 1.0) < 1e-14);

    Rng rng(17);
    for (int t = 0; t < 100; ++t) {
        auto e = sample_pair(rng);
        auto f = duality_map(e, DualDirection::to_dual);
        CHECK(std::abs(f.pair.beta - f.pair.alpha - 1.0 - (e.alpha - e.beta)) < 1e-13);
        CHECK(std::abs(f.pair.alpha + f.pair.beta - 1.0 - cplx(0, 1) * std::log(e.a_const) / pi) < 1e-13);
        auto back = duality_map(f.pair, DualDirection::from_dual, f.branch).pair;
        CHECK(std::abs(back.alpha - e.alpha) < 1e-12);
        CHECK(std::abs(back.beta - e.beta) < 1e-12);
    }

    // against the exponents of the dual weights built from rapidities
    for (int t = 0; t < 20; ++t) {
        auto tr = random_triple(rng);
        auto e = exponents(tr.p, tr.q, WeightKind::W);
        auto ef = exponents(tr.p, tr.q, WeightKind::Wf);
        auto f = duality_map(e, DualDirection::to_dual).pair;
        // equal up to a common integer shift of alpha and beta
        cplx shift = ef.alpha - f.alpha;
        CHECK(std::abs(shift.imag()) < 1e-12);
        CHECK(std::abs(shift.real() - std::round(shift.real())) < 1e-12);
        CHECK(std::abs((ef.beta - f.beta) - shift) < 1e-12);
    }
}

TEST_CASE("order parameter") {
    CHECK(order_parameter(10, 3, 0.0) == 1.0);
    CHECK(order_parameter(10, 3, 1.0) == 0.0);
    CHECK(order_parameter_limit(1.0, 0.0) == 1.0);
    CHECK(std::abs(order_parameter(1000, 250, 0.6) - order_parameter_limit(pi / 2, 0.6)) < 1e-3);
    CHECK_THROWS(order_parameter(10, 0, 0.5));
    CHECK_THROWS(order_parameter(10, 10, 0.5));
    CHECK_THROWS(order_parameter(10, 3, 1.5));
    CHECK_THROWS(order_parameter_limit(0.0, 0.5));
}

TEST_CASE("regime crossovers") {
    Rng rng(18);
    for (int t = 0; t < 10; ++t) {
        auto e = sample_pair(rng);
        CHECK(crossover_regime1(e, 100000000L) < 1e-6);
        CHECK(crossover_regime1(e, -100000000L) < 1e-6);
        // O(1/n) approach
        double d1 = crossover_regime1(e, 10000), d2 = crossover_regime1(e, 20000);
        CHECK(d1 / d2 > 1.8);
        CHECK(d1 / d2 < 2.2);
        for (double x : {0.7, -1.3, 3.0}) CHECK(crossover_regime2(e, x, 1e-8) < 1e-6);
    }
}
