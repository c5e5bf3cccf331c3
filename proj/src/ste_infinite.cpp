#include "cpmlab/ste_infinite.hpp"

#include "cpmlab/limits.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace cpm {

namespace {

constexpr double two_pi = 2.0 * pi;

// P(n) over -M..M for one exponent pair, optionally scaled
struct BilateralTable {
    std::vector<cplx> pos, neg;
    cplx scale = 1.0;
    cplx at(long n) const { return scale * (n >= 0 ? pos.at(n) : neg.at(-n)); }
};

BilateralTable make_table(const ExponentPair& e, long M, cplx scale = 1.0) {
    return {limit_weight_I_table(e, M + 1, +1), limit_weight_I_table(e, M + 1, -1), scale};
}

// Sum over d of term(d) with tails, decay fit over the last decade
template <class Term>
SumSteResult sum_ste(const Term& term, cplx rhs, long cutoff, cplx s) {
    std::vector<cplx> pos(cutoff + 1), neg(cutoff + 1);
    for (long d = 0; d <= cutoff; ++d) {
        pos[d] = term(d);
        neg[d] = term(-d);
    }
    auto bs = bilateral_sum(pos, neg, s);
    SumSteResult out;
    out.residual = make_residual(bs.total(), rhs);
    out.cutoff = cutoff;
    out.tail_bound = bs.tail_bound / std::max(std::abs(rhs), 1e-300);
    out.tail_correction = bs.tail;
    out.expected_decay = s.real();
    long hi = std::min<long>(cutoff, 10000), lo = hi / 10;
    double sp = fitted_decay(pos[lo], lo, pos[hi], hi);
    double sn = fitted_decay(neg[lo], lo, neg[hi], hi);
    out.decay_exponent = std::abs(sp - s.real()) > std::abs(sn - s.real()) ? sp : sn;
    return out;
}

long spin_reach(long a, long b, long c) { return std::max({std::labs(a), std::labs(b), std::labs(c)}); }

double frac(double t) { return t - std::floor(t); }

double reduce(double x) { return x - two_pi * std::floor(x / two_pi); }

// weight parameters of one factor: e^{c * (...)} |...|^{e}
struct FactorParams {
    double c, e;
};

FactorParams params(WeightKind kind, const RapidityPoint& p, const RapidityPoint& q) {
    if (kind == WeightKind::W) return {p.gamma - q.gamma, p.lambda - q.lambda};
    if (kind == WeightKind::Wbar) return {p.gamma + q.gamma, q.lambda - p.lambda - 1.0};
    throw std::invalid_argument("limiting weights exist for W and Wbar only");
}

// one factor of the star integrand, argument sigma * (s - w)
struct StarFactor {
    FactorParams par;
    double s;       // singular point as given
    double s_red;   // reduced to [0, 2 pi) for the periodic case
    double sigma;
};

// argument of the factor with its exact small representative at a singular piece end
double small_argument(const StarFactor& f, int end, double w, double dl, double dr, double s_ref) {
    if (end < 0) return -f.sigma * dl;
    if (end > 0) return f.sigma * dr;
    return f.sigma * (s_ref - w);
}

struct Star {
    std::array<StarFactor, 3> factors;
};

Star make_star(const PrincipalTriple& t, double x, double y, double z) {
    return {{StarFactor{params(WeightKind::Wbar, t.q, t.r), y, reduce(y), 1.0},
             StarFactor{params(WeightKind::W, t.p, t.r), x, reduce(x), 1.0},
             StarFactor{params(WeightKind::Wbar, t.p, t.q), z, reduce(z), -1.0}}};
}

void require_distinct(double a, double b, double c, bool periodic) {
    auto gap = [&](double u, double v) {
        double d = std::abs(u - v);
        return periodic ? std::min(d, two_pi - d) : d;
    };
    if (periodic) {
        a = reduce(a);
        b = reduce(b);
        c = reduce(c);
    }
    if (std::min({gap(a, b), gap(b, c), gap(a, c)}) < 1e-9)
        throw std::invalid_argument("star-triangle check needs distinct spin values");
}

void check_triple(const PrincipalTriple& t) {
    if (!t.valid()) throw std::invalid_argument("rapidities do not form a principal triple");
}

}  // namespace

cplx cocycle(cplx f_pq, cplx f_qr, cplx f_pr) { return f_pq * f_qr / f_pr; }

cplx f_regime1(const ExponentPair& w, const ExponentPair& wb) {
    return gamma(w.alpha) * gamma(wb.beta) * gamma(1.0 - wb.alpha) * rgamma(w.beta) * rgamma(wb.beta - wb.alpha);
}

cplx f_regime2(const ExponentPair& wb) {
    return gamma(wb.alpha) * gamma(1.0 - wb.alpha) * rgamma(wb.beta - wb.alpha) / pi;
}

cplx f_regime3(const ExponentPair& wb) {
    return gamma(wb.alpha) * gamma(1.0 - wb.alpha) * rgamma(wb.beta - wb.alpha) / std::sqrt(wb.a_const);
}

cplx r_infty(const PrincipalTriple& t) {
    auto f = [&](char a, char b) { return f_regime1(t.pair(WeightKind::W, a, b), t.pair(WeightKind::Wbar, a, b)); };
    return cocycle(f('p', 'q'), f('q', 'r'), f('p', 'r'));
}

cplx r_infty_regime2(const PrincipalTriple& t) {
    auto f = [&](char a, char b) { return f_regime2(t.pair(WeightKind::Wbar, a, b)); };
    return cocycle(f('p', 'q'), f('q', 'r'), f('p', 'r'));
}

cplx r_infty_regime3(const PrincipalTriple& t) {
    auto f = [&](char a, char b) { return f_regime3(t.pair(WeightKind::Wbar, a, b)); };
    return cocycle(f('p', 'q'), f('q', 'r'), f('p', 'r'));
}

SumSteResult regime1_ste(const PrincipalTriple& t, long a, long b, long c, long cutoff) {
    check_triple(t);
    if (cutoff < 1000) throw std::invalid_argument("regime1_ste: cutoff must be at least 1000");
    long M = cutoff + spin_reach(a, b, c) + 1;
    auto wbqr = make_table(t.pair(WeightKind::Wbar, 'q', 'r'), M);
    auto wpr = make_table(t.pair(WeightKind::W, 'p', 'r'), M);
    auto wbpq = make_table(t.pair(WeightKind::Wbar, 'p', 'q'), M);
    auto term = [&](long d) { return wbqr.at(b - d) * wpr.at(a - d) * wbpq.at(d - c); };

    cplx rhs = r_infty(t) * limit_weight_I(t.pair(WeightKind::W, 'p', 'q'), a - b) *
               limit_weight_I(t.pair(WeightKind::Wbar, 'p', 'r'), b - c) *
               limit_weight_I(t.pair(WeightKind::W, 'q', 'r'), a - c);
    auto diff = [](const ExponentPair& e) { return e.alpha - e.beta; };
    cplx s = diff(t.pair(WeightKind::Wbar, 'q', 'r')) + diff(t.pair(WeightKind::W, 'p', 'r')) +
             diff(t.pair(WeightKind::Wbar, 'p', 'q'));
    return sum_ste(term, rhs, cutoff, s);
}

double regime2_weight(WeightKind kind, const RapidityPoint& p, const RapidityPoint& q, double x, bool periodic_floor) {
    auto par = params(kind, p, q);
    double t = x / two_pi;
    double s = std::abs(std::sin(x / 2.0));
    if (s == 0.0) return std::numeric_limits<double>::infinity();
    return std::exp(par.c * (periodic_floor ? frac(t) : t)) * std::pow(s, par.e);
}

double regime3_weight(WeightKind kind, const RapidityPoint& p, const RapidityPoint& q, double x) {
    if (x == 0.0) throw std::invalid_argument("regime III weight is singular at x = 0");
    auto par = params(kind, p, q);
    return std::exp(-0.5 * par.c * (x > 0 ? 1.0 : -1.0)) * std::pow(std::abs(x), par.e);
}

IntegralSteResult regime2_ste(const PrincipalTriple& t0, double x, double y, double z, const QuadratureConfig& cfg,
                              Regime2Variant variant) {
    check_triple(t0);
    cfg.validate();
    require_distinct(x, y, z, true);
    const PrincipalTriple t = variant == Regime2Variant::nonchiral ? t0.nonchiral() : t0;
    const bool floor = variant != Regime2Variant::gauge;
    const Star star = make_star(t, x, y, z);

    // pieces between consecutive singular points around the circle
    std::array<int, 3> order = {0, 1, 2};
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return star.factors[i].s_red < star.factors[j].s_red; });
    QuadResult total;
    total.value = 0.0;
    for (int k = 0; k < 3; ++k) {
        int li = order[k], ri = order[(k + 1) % 3];
        double a = star.factors[li].s_red;
        double b = star.factors[ri].s_red + (k == 2 ? two_pi : 0.0);
        auto f = [&, li, ri](double w, double dl, double dr) -> cplx {
            double v = 1.0;
            for (int i = 0; i < 3; ++i) {
                const auto& fac = star.factors[i];
                int end = i == li ? -1 : (i == ri ? 1 : 0);
                double u = small_argument(fac, end, w, dl, dr, fac.s_red);
                double expo;
                if (floor) {
                    expo = frac(u / two_pi);
                } else {
                    // unreduced argument; its exponential is smooth so no small representative is needed
                    expo = fac.sigma * (fac.s - w) / two_pi;
                }
                v *= std::exp(fac.par.c * expo) * std::pow(std::abs(std::sin(u / 2.0)), fac.par.e);
            }
            return v;
        };
        total += integrate_interval(f, a, b, cfg);
    }
    total.value /= two_pi;
    total.error /= two_pi;
    total.l1 /= two_pi;

    cplx R = variant == Regime2Variant::chiral ? r_infty_regime2(t) : r_infty_regime2(t.nonchiral());
    cplx rhs = R * regime2_weight(WeightKind::W, t.p, t.q, x - y, floor) *
               regime2_weight(WeightKind::Wbar, t.p, t.r, y - z, floor) *
               regime2_weight(WeightKind::W, t.q, t.r, x - z, floor);
    return {make_residual(total.value, rhs), total, R};
}

cplx regime2_coefficient(WeightKind kind, const RapidityPoint& p, const RapidityPoint& q, long n) {
    auto dual = duality_map(exponents(p, q, kind), DualDirection::to_dual).pair;
    return h1_fourier_closed(dual, n);
}

QuadResult regime2_coefficient_quadrature(WeightKind kind, const RapidityPoint& p, const RapidityPoint& q, long n,
                                          const QuadratureConfig& cfg) {
    cfg.validate();
    auto par = params(kind, p, q);
    auto f = [&](double w, double dl, double dr) -> cplx {
        double s = dl < dr ? std::sin(dl / 2.0) : std::sin(dr / 2.0);
        return std::exp(cplx(par.c / two_pi, -double(n)) * w) * std::pow(s, par.e);
    };
    auto r = integrate_interval(f, 0.0, two_pi, cfg);
    r.value /= two_pi;
    r.error /= two_pi;
    r.l1 /= two_pi;
    return r;
}

FourierSteResult regime2_fourier_ste(const PrincipalTriple& t, long a, long b, long c, long cutoff,
                                     const QuadratureConfig& cfg) {
    check_triple(t);
    if (cutoff < 1000) throw std::invalid_argument("regime2_fourier_ste: cutoff must be at least 1000");
    long M = cutoff + 2 * spin_reach(a, b, c) + 1;
    struct Coef {
        ExponentPair dual;
        BilateralTable table;
    };
    auto coef = [&](WeightKind kind, const RapidityPoint& u, const RapidityPoint& v) {
        auto dual = duality_map(exponents(u, v, kind), DualDirection::to_dual).pair;
        return Coef{dual, make_table(dual, M, h1_fourier_closed(dual, 0))};
    };
    auto cpq = coef(WeightKind::W, t.p, t.q), cpr = coef(WeightKind::W, t.p, t.r), cqr = coef(WeightKind::W, t.q, t.r);
    auto bpq = coef(WeightKind::Wbar, t.p, t.q), bpr = coef(WeightKind::Wbar, t.p, t.r),
         bqr = coef(WeightKind::Wbar, t.q, t.r);

    auto term = [&](long d) { return cpq.table.at(b - d) * bpr.table.at(a - d) * cqr.table.at(d - c); };
    cplx rhs = bqr.table.at(a - b) * cpr.table.at(b - c) * bpq.table.at(a - c) / r_infty_regime2(t);
    auto diff = [](const Coef& k) { return k.dual.alpha - k.dual.beta; };
    cplx s = diff(cpq) + diff(bpr) + diff(cqr);

    FourierSteResult out;
    out.sum = sum_ste(term, rhs, cutoff, s);

    // closed-form coefficients against quadrature
    const std::array<std::pair<WeightKind, std::pair<const RapidityPoint*, const RapidityPoint*>>, 6> all = {{
        {WeightKind::W, {&t.p, &t.q}}, {WeightKind::W, {&t.p, &t.r}}, {WeightKind::W, {&t.q, &t.r}},
        {WeightKind::Wbar, {&t.p, &t.q}}, {WeightKind::Wbar, {&t.p, &t.r}}, {WeightKind::Wbar, {&t.q, &t.r}},
    }};
    for (const auto& [kind, pq] : all)
        for (long j = -3; j <= 3; ++j) {
            cplx closed = regime2_coefficient(kind, *pq.first, *pq.second, j);
            cplx quad = regime2_coefficient_quadrature(kind, *pq.first, *pq.second, j, cfg).value;
            out.coefficient_check = std::max(out.coefficient_check, std::abs(quad - closed) / std::abs(closed));
        }
    return out;
}

IntegralSteResult regime3_ste(const PrincipalTriple& t0, double x, double y, double z, const QuadratureConfig& cfg,
                              bool nonchiral) {
    check_triple(t0);
    cfg.validate();
    require_distinct(x, y, z, false);
    const PrincipalTriple t = nonchiral ? t0.nonchiral() : t0;
    const Star star = make_star(t, x, y, z);

    auto value = [](const StarFactor& fac, double u) {
        return std::exp(-0.5 * fac.par.c * (u > 0 ? 1.0 : -1.0)) * std::pow(std::abs(u), fac.par.e);
    };

    std::array<int, 3> order = {0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int i, int j) { return star.factors[i].s < star.factors[j].s; });
    QuadResult total;
    total.value = 0.0;
    for (int k = 0; k < 2; ++k) {
        int li = order[k], ri = order[k + 1];
        auto f = [&, li, ri](double w, double dl, double dr) -> cplx {
            double v = 1.0;
            for (int i = 0; i < 3; ++i) {
                const auto& fac = star.factors[i];
                int end = i == li ? -1 : (i == ri ? 1 : 0);
                v *= value(fac, small_argument(fac, end, w, dl, dr, fac.s));
            }
            return v;
        };
        total += integrate_interval(f, star.factors[li].s, star.factors[ri].s, cfg);
    }
    for (int side : {-1, 1}) {
        int bi = side < 0 ? order[0] : order[2];
        auto f = [&, bi, side](double w, double d) -> cplx {
            double v = 1.0;
            for (int i = 0; i < 3; ++i) {
                const auto& fac = star.factors[i];
                // w = s_b + side * d, so s_b - w = -side * d
                double u = i == bi ? -side * fac.sigma * d : fac.sigma * (fac.s - w);
                v *= value(fac, u);
            }
            return v;
        };
        total += integrate_tail(f, star.factors[bi].s, side, cfg);
    }

    cplx R = r_infty_regime3(t);
    cplx rhs = R * regime3_weight(WeightKind::W, t.p, t.q, x - y) * regime3_weight(WeightKind::Wbar, t.p, t.r, y - z) *
               regime3_weight(WeightKind::W, t.q, t.r, x - z);
    return {make_residual(total.value, rhs), total, R};
}

FLimitCheck f_pq_limit_check(int N, const RapidityPoint& p, const RapidityPoint& q) {
    if (N < 2) throw std::invalid_argument("f_pq_limit_check: N must be >= 2");
    auto e = exponents(p, q, WeightKind::W);
    auto eb = exponents(p, q, WeightKind::Wbar);
    auto ebf = duality_map(eb, DualDirection::to_dual).pair;
    const double scale = double(N) / two_pi;
    auto npow = [&](cplx ex) { return std::exp(ex * std::log(scale)); };

    FLimitCheck out;
    out.f_exact = f_pq(N, p, q);
    out.f_closed = npow(e.beta - e.alpha) / std::sqrt(e.a_const) * f_regime1(e, eb);
    out.deviation = std::abs(out.f_exact / out.f_closed - 1.0);

    cplx lhs = 4.0 * eb.a_const * ebf.a_const * std::pow(std::sin(pi * ebf.alpha), 2);
    cplx rhs = std::pow(std::sin(pi * (eb.beta - eb.alpha)), 2) / std::pow(std::sin(pi * eb.alpha), 2);
    out.trig_identity_residual = std::abs(lhs - rhs) / std::abs(rhs);

    auto w = weight_w(N, p, q);
    cplx ls = 0.0;
    for (int l = 1; l < N; ++l) ls += std::log(w.ratio(l));  // the l = N term is log 1
    out.log_sum = ls / double(N);
    out.log_closed = (e.alpha - e.beta) * std::log(scale) + 0.5 * std::log(e.a_const) +
                     std::log(gamma(e.beta) * rgamma(e.alpha));
    out.log_deviation = std::abs(out.log_sum - out.log_closed);

    auto wb = weight_wbar(N, p, q);
    out.dual_ratio_exact = fourier_dual(wb).value(0) / wb.value(0);
    out.dual_ratio_closed = npow(eb.alpha - eb.beta) * std::sqrt(eb.a_const) * gamma(eb.beta) *
                            gamma(1.0 - eb.beta + eb.alpha) * rgamma(eb.alpha) * rgamma(ebf.beta) *
                            rgamma(1.0 - ebf.alpha);
    out.dual_ratio_deviation = std::abs(out.dual_ratio_exact / out.dual_ratio_closed - 1.0);
    return out;
}

}  // namespace cpm
