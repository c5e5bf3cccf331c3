#include "cpmlab/weights.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cpm {

namespace {

long mod(long n, long N) {
    long r = n % N;
    return r < 0 ? r + N : r;
}

cplx omega_pow(long e, int N) {
    return std::exp(cplx(0.0, 2.0 * pi * double(mod(e, N)) / N));
}

void require_same_modulus(const RapidityPoint& p, const RapidityPoint& q) {
    if (std::abs(p.k - q.k) > 1e-14) throw std::invalid_argument("rapidities built on different moduli");
}

void require_N(int N) {
    if (N < 2) throw std::invalid_argument("N must be >= 2");
}

// ratios from per-step factors; ratios[n] = prod_{j=1}^n step(j)
template <class Step>
WeightTable from_steps(int N, Step step) {
    WeightTable t;
    t.n_states = N;
    t.ratios.resize(N);
    t.ratios[0] = 1.0;
    for (int j = 1; j < N; ++j) {
        cplx s = step(j);
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag()))
            throw std::domain_error("weight table: vanishing denominator");
        t.ratios[j] = t.ratios[j - 1] * s;
    }
    return t;
}

}  // namespace

cplx WeightTable::ratio(long n) const { return ratios[mod(n, n_states)]; }

WeightTable weight_w(int N, const RapidityPoint& p, const RapidityPoint& q) {
    require_N(N);
    require_same_modulus(p, q);
    const double pref = std::pow(std::sin(p.theta) * std::sin(q.phi) / (std::sin(q.theta) * std::sin(p.phi)), 0.5 / N);
    return from_steps(N, [&](int j) {
        double h = pi * (j - 0.5) / N;
        double den = std::sin(h + (q.phi - p.theta) / (2.0 * N));
        return cplx(pref * std::sin(h - (q.theta - p.phi) / (2.0 * N)) / den);
    });
}

WeightTable weight_wbar(int N, const RapidityPoint& p, const RapidityPoint& q) {
    require_N(N);
    require_same_modulus(p, q);
    const double pref = std::pow(std::sin(p.theta) * std::sin(q.theta) / (std::sin(p.phi) * std::sin(q.phi)), 0.5 / N);
    return from_steps(N, [&](int j) {
        double den = std::sin(pi * j / N - (q.theta - p.theta) / (2.0 * N));
        return cplx(pref * std::sin(pi * (j - 1) / N + (q.phi - p.phi) / (2.0 * N)) / den);
    });
}

WeightTable weight_wf(int N, const RapidityPoint& p, const RapidityPoint& q) {
    require_N(N);
    require_same_modulus(p, q);
    const cplx pref = std::exp(cplx(0.0, (p.phi - p.theta + q.phi - q.theta) / (2.0 * N)));
    return from_steps(N, [&](int j) {
        cplx num = std::sin(pi * (j - 1) / N + (q.tilde_phi - p.tilde_phi) / (2.0 * N));
        cplx den = std::sin(pi * j / N - (q.tilde_theta - p.tilde_theta) / (2.0 * N));
        return pref * num / den;
    });
}

WeightTable weight_wbarf(int N, const RapidityPoint& p, const RapidityPoint& q) {
    require_N(N);
    require_same_modulus(p, q);
    const cplx pref = std::exp(cplx(0.0, (p.theta - p.phi - q.theta + q.phi) / (2.0 * N)));
    return from_steps(N, [&](int j) {
        double h = pi * (j - 0.5) / N;
        cplx num = std::sin(h - (q.tilde_phi - p.tilde_theta) / (2.0 * N));
        cplx den = std::sin(h + (q.tilde_theta - p.tilde_phi) / (2.0 * N));
        return pref * num / den;
    });
}

WeightTable weight_homogeneous(WeightKind kind, int N, const RapidityPoint& p, const RapidityPoint& q) {
    require_N(N);
    require_same_modulus(p, q);
    const auto hp = homogeneous_coords(p, N), hq = homogeneous_coords(q, N);
    const cplx w = omega_pow(1, N);
    return from_steps(N, [&](int j) -> cplx {
        cplx wj = omega_pow(j, N);
        switch (kind) {
            case WeightKind::W:
                return (hp.mu / hq.mu) * (hq.y - hp.x * wj) / (hp.y - hq.x * wj);
            case WeightKind::Wbar:
                return hp.mu * hq.mu * (w * hp.x - hq.x * wj) / (hq.y - hp.y * wj);
            case WeightKind::Wf:
                return (w * hp.mu * hp.x - hq.mu * hq.x * wj) / (hp.mu * hq.y - hq.mu * hp.y * wj);
            case WeightKind::Wbarf:
                return (w * hp.mu * hq.mu * hq.x - hp.y * wj) / (w * hp.mu * hq.mu * hp.x - hq.y * wj);
        }
        return 0.0;
    });
}

WeightTable fourier_dual(const WeightTable& t) {
    const int N = t.n_states;
    std::vector<cplx> v(N);
    for (int m = 0; m < N; ++m) {
        cplx s = 0.0;
        for (int n = 0; n < N; ++n) s += omega_pow(-long(m) * n, N) * t.value(n);
        v[m] = s / double(N);
    }
    if (v[0] == 0.0) throw std::domain_error("fourier_dual: vanishing zero mode");
    WeightTable d;
    d.n_states = N;
    d.normalization = v[0];
    d.ratios.resize(N);
    for (int m = 0; m < N; ++m) d.ratios[m] = v[m] / v[0];
    return d;
}

bool ExponentPair::principal() const {
    double d = (beta - alpha).real();
    return d > 0.0 && d < 1.0;
}

ExponentPair make_exponents(cplx alpha, cplx beta) {
    ExponentPair e{alpha, beta, 0.0};
    cplx sa = std::sin(pi * alpha);
    if (std::abs(sa) < 1e-300) {
        double nan = std::numeric_limits<double>::quiet_NaN();
        e.a_const = cplx(nan, nan);
    } else {
        e.a_const = std::sin(pi * beta) / sa;
    }
    return e;
}

ExponentPair exponents(const RapidityPoint& p, const RapidityPoint& q, WeightKind which) {
    const double tp = 2.0 * pi;
    switch (which) {
        case WeightKind::W:
            return make_exponents(0.5 + (p.phi - q.theta) / tp, 0.5 + (q.phi - p.theta) / tp);
        case WeightKind::Wbar:
            return make_exponents((q.phi - p.phi) / tp, 1.0 + (p.theta - q.theta) / tp);
        case WeightKind::Wf:
            return make_exponents((q.tilde_phi - p.tilde_phi) / tp, 1.0 + (p.tilde_theta - q.tilde_theta) / tp);
        case WeightKind::Wbarf:
            return make_exponents(0.5 + (p.tilde_theta - q.tilde_phi) / tp, 0.5 + (q.tilde_theta - p.tilde_phi) / tp);
    }
    throw std::invalid_argument("unknown weight kind");
}

cplx a_const_closed(const RapidityPoint& p, const RapidityPoint& q, WeightKind which) {
    switch (which) {
        case WeightKind::W: return std::exp(p.gamma - q.gamma);
        case WeightKind::Wbar: return std::exp(p.gamma + q.gamma);
        case WeightKind::Wf: return std::exp(cplx(0.0, (p.phi + q.phi - p.theta - q.theta) / 2.0));
        case WeightKind::Wbarf: return std::exp(cplx(0.0, (q.phi - q.theta - p.phi + p.theta) / 2.0));
    }
    throw std::invalid_argument("unknown weight kind");
}

cplx product_form(int N, const ExponentPair& e, long n) {
    require_N(N);
    if (n < -N || n > N) throw std::invalid_argument("product_form: n outside [-N, N]");
    if (n < 0) n += N;
    cplx r = std::pow(e.a_const, double(n) / N);
    for (long j = 1; j <= n; ++j) {
        cplx den = std::sin(pi * (double(j) + e.beta - 1.0) / double(N));
        if (den == 0.0) throw std::domain_error("product_form: beta on a lattice zero");
        r *= std::sin(pi * (double(j) + e.alpha - 1.0) / double(N)) / den;
    }
    return r;
}

double recursion_residual(const WeightTable& t, cplx x1, cplx x2, cplx x3, cplx x4) {
    const int N = t.n_states;
    double worst = 0.0;
    for (long n = 1; n <= N; ++n) {
        cplx wn = omega_pow(n, N);
        cplx lhs = (x4 - x3 * wn) * t.value(n);
        cplx rhs = (x1 - x2 * wn) * t.value(n - 1);
        double scale = std::abs(lhs) + std::abs(rhs);
        if (scale > 0.0) worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    return worst;
}

std::array<cplx, 4> recursion_coefficients(WeightKind kind, int N, const RapidityPoint& p, const RapidityPoint& q) {
    const auto hp = homogeneous_coords(p, N), hq = homogeneous_coords(q, N);
    const cplx w = omega_pow(1, N);
    switch (kind) {
        case WeightKind::W:
            return {hp.mu * hq.y, hp.mu * hp.x, hq.mu * hq.x, hq.mu * hp.y};
        case WeightKind::Wbar:
            return {hp.mu * hq.mu * w * hp.x, hp.mu * hq.mu * hq.x, hp.y, hq.y};
        default:
            throw std::invalid_argument("recursion_coefficients: only W and Wbar");
    }
}

SteResidual make_residual(cplx lhs, cplx rhs) {
    SteResidual s{lhs, rhs, 0.0};
    s.rel_err = rhs == 0.0 ? std::abs(lhs) : std::abs(lhs / rhs - 1.0);
    return s;
}

cplx f_pq_log_power(int N, const RapidityPoint& p, const RapidityPoint& q) {
    const auto wb = weight_wbar(N, p, q);
    const auto w = weight_w(N, p, q);
    cplx s = 0.0;
    for (int l = 1; l <= N; ++l) {
        cplx d = 0.0;
        for (int j = 1; j <= N; ++j) d += omega_pow(-long(j) * l, N) * wb.ratio(j);
        if (d == 0.0) throw std::domain_error("F_pq: vanishing Fourier mode");
        s += std::log(d) - std::log(w.ratio(l));
    }
    return s;
}

cplx f_pq(int N, const RapidityPoint& p, const RapidityPoint& q) {
    cplx s = f_pq_log_power(N, p, q);
    // principal N-th root of the product
    double im = std::remainder(s.imag(), 2.0 * pi);
    return std::exp(cplx(s.real(), im) / double(N));
}

cplx RConstant::corrected() const { return from_f * omega_pow(omega_offset, N); }

RConstant r_pqr(int N, const RapidityPoint& p, const RapidityPoint& q, const RapidityPoint& r) {
    return FiniteSte(N, p, q, r).r();
}

FiniteSte::FiniteSte(int N, const RapidityPoint& p, const RapidityPoint& q, const RapidityPoint& r)
    : N_(N),
      wpq_(weight_w(N, p, q)), wpr_(weight_w(N, p, r)), wqr_(weight_w(N, q, r)),
      wbpq_(weight_wbar(N, p, q)), wbpr_(weight_wbar(N, p, r)), wbqr_(weight_wbar(N, q, r)) {
    fpq_ = fourier_dual(wpq_);
    fpr_ = fourier_dual(wpr_);
    fqr_ = fourier_dual(wqr_);
    fbpq_ = fourier_dual(wbpq_);
    fbpr_ = fourier_dual(wbpr_);
    fbqr_ = fourier_dual(wbqr_);

    r_.N = N;
    cplx star = 0.0;
    for (long d = 0; d < N; ++d) star += wbqr_.value(-d) * wpr_.value(-d) * wbpq_.value(d);
    r_.direct = star / (wpq_.value(0) * wbpr_.value(0) * wqr_.value(0));
    r_.from_f = f_pq(N, p, q) * f_pq(N, q, r) / f_pq(N, p, r);
    double turns = std::arg(r_.direct / r_.from_f) / (2.0 * pi / N);
    r_.omega_offset = int(mod(std::lround(turns), N));
}

SteResidual FiniteSte::residual(long a, long b, long c) const {
    cplx lhs = 0.0;
    for (long d = 0; d < N_; ++d) lhs += wbqr_.value(b - d) * wpr_.value(a - d) * wbpq_.value(d - c);
    cplx rhs = r_.corrected() * wpq_.value(a - b) * wbpr_.value(b - c) * wqr_.value(a - c);
    return make_residual(lhs, rhs);
}

SteResidual FiniteSte::dual_residual(long a, long b) const {
    cplx lhs = double(N_) / r_.corrected() * fbqr_.value(a) * fpr_.value(b) * fbpq_.value(a + b);
    cplx rhs = 0.0;
    for (long d = 0; d < N_; ++d) rhs += fpq_.value(b - d) * fbpr_.value(a + b - d) * fqr_.value(d);
    return make_residual(lhs, rhs);
}

SteResidual ste_residual(int N, const RapidityPoint& p, const RapidityPoint& q, const RapidityPoint& r,
                         long a, long b, long c) {
    return FiniteSte(N, p, q, r).residual(a, b, c);
}

SteResidual dual_ste_residual(int N, const RapidityPoint& p, const RapidityPoint& q, const RapidityPoint& r,
                              long a, long b) {
    return FiniteSte(N, p, q, r).dual_residual(a, b);
}

}  // namespace cpm
