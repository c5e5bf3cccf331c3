#include "cpmlab/limits.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/float128.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cpm {

namespace {

using quad = boost::multiprecision::float128;

const quad qpi = boost::math::constants::pi<quad>();

quad bernoulli_q(int n) { return BernoulliTable::standard().numbers.at(n).convert_to<quad>(); }

quad bernoulli_poly_q(int l, quad x) {
    quad r = 0;
    quad c = 1;
    for (int k = 0; k <= l; ++k) {
        r = r * x + c * bernoulli_q(k);
        c = c * (l - k) / (k + 1);
    }
    return r;
}

quad factorial_q(int n) {
    quad r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// zeta(s) for integer s >= 2: partial sum to M plus Euler-Maclaurin remainder
quad zeta_q(int s) {
    if (s < 2) throw std::invalid_argument("zeta_q: s must be >= 2");
    const int M = 24;
    quad sum = 0;
    for (int n = 1; n < M; ++n) sum += boost::multiprecision::pow(quad(n), -s);
    quad Mq = M;
    sum += boost::multiprecision::pow(Mq, 1 - s) / (s - 1) + boost::multiprecision::pow(Mq, -s) / 2;
    // rising product s(s+1)...(s+2k-2) / (2k)!
    quad rising = s;
    for (int k = 1; k <= 14; ++k) {
        quad term = bernoulli_q(2 * k) / factorial_q(2 * k) * rising * boost::multiprecision::pow(Mq, -s - 2 * k + 1);
        sum += term;
        rising *= quad(s + 2 * k - 1) * quad(s + 2 * k);
    }
    return sum;
}

quad zeta_even_q(int two_k) {
    if (two_k <= 60) {
        quad b = boost::multiprecision::abs(bernoulli_q(two_k));
        return boost::multiprecision::pow(2 * qpi, two_k) * b / (2 * factorial_q(two_k));
    }
    quad s = 1;
    for (int n = 2; n < 100; ++n) {
        quad t = boost::multiprecision::pow(quad(n), -two_k);
        s += t;
        if (t < 1e-40) break;
    }
    return s;
}

// 2 (2k-1)! / (2k+1-m)!
quad series_coef(int k, int m) {
    if (m == 0) return quad(1) / (quad(k) * (2 * k + 1));
    if (m == 1) return quad(1) / k;
    quad r = 2;
    for (int i = 2 * k + 2 - m; i <= 2 * k - 1; ++i) r *= i;
    return r;
}

// phi^{(m)}(z) - phi^{(m)}(0) by its Taylor series; |z| < pi, used for |z| <= pi/2
quad phi_diff_q(quad z, int m) {
    if (z == 0) return 0;
    int k0 = std::max(1, (m + 1) / 2);
    quad sum = 0;
    for (int k = k0; k < 4000; ++k) {
        int e = 2 * k + 1 - m;
        quad term = -series_coef(k, m) * zeta_even_q(2 * k) * boost::multiprecision::pow(z, e) /
                    boost::multiprecision::pow(qpi, 2 * k);
        sum += term;
        if (k > k0 + 4 && boost::multiprecision::abs(term) <= 1e-36 * boost::multiprecision::abs(sum)) break;
    }
    return sum;
}

quad phi_at_zero_q(int m) {
    if (m < 3 || m % 2 == 0) return 0;
    return -2 * factorial_q(m - 2) * zeta_even_q(m - 1) / boost::multiprecision::pow(qpi, m - 1);
}

quad chi_q(int m, quad z) {
    if (m < 2) throw std::invalid_argument("chi_majorant: order must be >= 2");
    z = boost::multiprecision::abs(z);
    if (m % 2 == 0) {
        int n = m / 2;
        return factorial_q(2 * n - 2) *
               (boost::multiprecision::pow(qpi - z, -(2 * n - 1)) - boost::multiprecision::pow(qpi + z, -(2 * n - 1)));
    }
    int n = (m - 1) / 2;
    return factorial_q(2 * n - 1) * (boost::multiprecision::pow(qpi - z, -2 * n) +
                                     boost::multiprecision::pow(qpi + z, -2 * n) - 2 * boost::multiprecision::pow(qpi, -2 * n));
}

quad s_n_exact_q(int N, quad alpha, long n) {
    quad s = 0;
    if (n >= 0) {
        for (long j = 1; j <= n; ++j) {
            quad t = qpi * (j + alpha - 1) / N;
            s += boost::multiprecision::log(boost::multiprecision::sin(t) / t);
        }
        return s;
    }
    for (long j = 1; j <= -n; ++j) {
        quad t = qpi * (j - alpha) / N;
        s -= boost::multiprecision::log(boost::multiprecision::sin(t) / t);
    }
    return s;
}

// sup over alpha in [0,1] of |B_j(alpha)|/j! is 2 zeta(j)/(2 pi)^j; outside the interval the value itself
quad bernoulli_coef_bound(int j, quad alpha) {
    if (alpha >= 0 && alpha <= 1) return 2 * zeta_q(j) / boost::multiprecision::pow(2 * qpi, j);
    return boost::multiprecision::abs(bernoulli_poly_q(j, alpha)) / factorial_q(j);
}

void check_asymptotic_domain(int N, long n, int order) {
    if (N < 2) throw std::invalid_argument("asymptotic expansion: N must be >= 2");
    if (order < 0 || order > 12) throw std::invalid_argument("asymptotic expansion: order must lie in [0, 12]");
    if (2 * std::labs(n) > N) throw std::invalid_argument("asymptotic expansion: |n| must not exceed N/2");
}

struct QuadAsymptotic {
    quad value, bound;
};

QuadAsymptotic s_n_asymptotic_q(int N, quad alpha, long n, int order) {
    check_asymptotic_domain(N, n, order);
    quad z = qpi * n / N;
    quad h = qpi / N;
    quad value = 0;
    for (int j = 0; j <= order; ++j) {
        quad bj = bernoulli_poly_q(j, alpha) / factorial_q(j);
        value += bj * boost::multiprecision::pow(h, j - 1) * phi_diff_q(z, j);
    }
    int j = order + 1;
    quad bound;
    if (j == 1) {
        bound = boost::multiprecision::abs(phi_diff_q(z, 1)) / 2;
    } else {
        int even = 2 * ((j + 1) / 2);
        bound = bernoulli_coef_bound(j, alpha) * boost::multiprecision::pow(h, j - 1) * zeta_even_q(even) * chi_q(j, z);
    }
    return {value, bound};
}

// d^m/dz^m cot z as a polynomial in c = cot z
double cot_derivative(int m, double z) {
    std::vector<double> p = {0.0, 1.0};
    for (int i = 0; i < m; ++i) {
        // P' (c) * (-1 - c^2)
        std::vector<double> d(p.size() > 1 ? p.size() - 1 : 1, 0.0);
        for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = double(k) * p[k];
        std::vector<double> np(d.size() + 2, 0.0);
        for (std::size_t k = 0; k < d.size(); ++k) {
            np[k] -= d[k];
            np[k + 2] -= d[k];
        }
        p = std::move(np);
    }
    double c = std::cos(z) / std::sin(z);
    double r = 0.0;
    for (std::size_t k = p.size(); k-- > 0;) r = r * c + p[k];
    return r;
}

cplx cpow(cplx base, cplx exponent) { return std::exp(exponent * std::log(base)); }

}  // namespace

cplx RegimeWeight::operator()(double x) const {
    switch (regime) {
        case Regime::I: {
            double n = std::round(x);
            if (std::abs(n - x) > 1e-9) throw std::invalid_argument("regime I weight needs an integer argument");
            return c_const * limit_weight_I(exponents, long(n));
        }
        case Regime::II:
            return c_const * limit_weight_II(exponents, x);
        case Regime::III:
            return d_const * limit_weight_III(exponents, x);
    }
    return 0.0;
}

RegimeWeight regime_weight(Regime regime, const ExponentPair& e, int N, cplx w0, double phi_scale_exponent) {
    if (N < 1) throw std::invalid_argument("regime_weight: N must be positive");
    RegimeWeight w;
    w.regime = regime;
    w.exponents = e;
    w.phi_scale_exponent = phi_scale_exponent;
    cplx d = e.alpha - e.beta;
    cplx g = gamma(e.beta) * rgamma(e.alpha);
    if (regime == Regime::I) {
        w.c_const = w0;
        w.d_const = w0;
    } else {
        w.c_const = w0 * cpow(double(N) / pi, d) * g;
        w.d_const = w0 * cpow(std::pow(double(N), phi_scale_exponent), d) * g * std::sqrt(e.a_const);
    }
    return w;
}

cplx limit_weight_I(const ExponentPair& e, long n) { return pochhammer_ratio(e.alpha, e.beta, n); }

cplx limit_weight_II(const ExponentPair& e, double x) {
    double t = x / (2.0 * pi);
    double frac = t - std::floor(t);
    double base = std::abs(std::sin(x / 2.0));
    cplx d = e.alpha - e.beta;
    if (base == 0.0) {
        if (d.real() < 0.0) return std::numeric_limits<double>::infinity();
        if (d == 0.0) return std::pow(e.a_const, frac);
        return 0.0;
    }
    return std::pow(e.a_const, frac) * std::exp(d * std::log(base));
}

cplx limit_weight_III(const ExponentPair& e, double x) {
    if (x == 0.0) throw std::invalid_argument("regime III weight is singular at x = 0");
    double sgn = x > 0 ? 1.0 : -1.0;
    return std::pow(e.a_const, -0.5 * sgn) * std::exp((e.alpha - e.beta) * std::log(std::abs(x)));
}

std::vector<cplx> limit_weight_I_table(const ExponentPair& e, long count, int sign) {
    if (count < 1) throw std::invalid_argument("limit_weight_I_table: count must be positive");
    if (sign != 1 && sign != -1) throw std::invalid_argument("limit_weight_I_table: sign must be +1 or -1");
    std::vector<cplx> out(count);
    out[0] = 1.0;
    for (long n = 0; n + 1 < count; ++n) {
        cplx num, den;
        if (sign > 0) {
            num = e.alpha + double(n);
            den = e.beta + double(n);
        } else {
            num = double(n + 1) - e.beta;
            den = double(n + 1) - e.alpha;
        }
        if (den == 0.0) throw pole_error("limit_weight_I_table: vanishing denominator");
        out[n + 1] = out[n] * num / den;
    }
    return out;
}

cplx s_n_exact(int N, cplx alpha, long n) {
    if (N < 1) throw std::invalid_argument("s_n_exact: N must be positive");
    if (alpha.imag() == 0.0) return double(s_n_exact_q(N, quad(alpha.real()), n));
    cplx s = 0.0;
    if (n >= 0) {
        for (long j = 1; j <= n; ++j) {
            cplx t = pi * (double(j) + alpha - 1.0) / double(N);
            s += std::log(std::sin(t) / t);
        }
        return s;
    }
    for (long j = 1; j <= -n; ++j) {
        cplx t = pi * (double(j) - alpha) / double(N);
        s -= std::log(std::sin(t) / t);
    }
    return s;
}

AsymptoticResult s_n_asymptotic(int N, double alpha, long n, int order) {
    auto r = s_n_asymptotic_q(N, quad(alpha), n, order);
    return {double(r.value), order, double(r.bound)};
}

AsymptoticCheck asymptotic_check(int N, double alpha, long n, int order) {
    auto r = s_n_asymptotic_q(N, quad(alpha), n, order);
    quad exact = s_n_exact_q(N, quad(alpha), n);
    return {double(exact), double(r.value), double(boost::multiprecision::abs(exact - r.value)), double(r.bound)};
}

double phi_log_sinc(double z, int j) {
    if (j < 0) throw std::invalid_argument("phi_log_sinc: derivative order must be >= 0");
    if (!(std::abs(z) < pi)) throw std::invalid_argument("phi_log_sinc: |z| must be below pi");
    if (std::abs(z) <= pi / 2) return double(phi_diff_q(quad(z), j) + phi_at_zero_q(j));
    if (j == 1) return std::log(std::sin(z) / z);
    if (j >= 2) {
        int m = j - 2;
        double sign = (m % 2 == 0) ? 1.0 : -1.0;
        return cot_derivative(m, z) - sign * std::tgamma(m + 1.0) / std::pow(z, m + 1);
    }
    double z0 = z > 0 ? pi / 2 : -pi / 2;
    double base = double(phi_diff_q(quad(z0), 0));
    QuadratureConfig cfg;
    auto f = [](double w, double, double) -> cplx { return std::log(std::sin(w) / w); };
    auto r = z > 0 ? integrate_interval(f, z0, z, cfg) : integrate_interval(f, z, z0, cfg);
    return z > 0 ? base + r.value.real() : base - r.value.real();
}

double chi_majorant(int m, double z) {
    if (!(std::abs(z) < pi)) throw std::invalid_argument("chi_majorant: |z| must be below pi");
    return double(chi_q(m, quad(z)));
}

double finite_n_correction_check(int N, const ExponentPair& e, long n) {
    if (n == 0 || std::labs(n) >= N) throw std::invalid_argument("finite_n_correction_check: need 0 < |n| < N");
    cplx exact = product_form(N, e, n);
    double z = pi * double(n) / N;
    cplx d = e.alpha - e.beta;
    cplx approx = std::pow(e.a_const, double(n) / N) * limit_weight_I(e, n) *
                  std::exp(d * std::log(std::sin(z) / z)) *
                  std::exp(pi * d * (e.alpha + e.beta - 1.0) / (2.0 * N) * (std::cos(z) / std::sin(z) - 1.0 / z));
    return std::abs(exact / approx - 1.0);
}

cplx h1_closed_form(const ExponentPair& e, double x) {
    if (!(x > 0.0 && x < 2.0 * pi)) throw std::invalid_argument("h1_closed_form: x must lie in (0, 2 pi)");
    cplx bma = e.beta - e.alpha;
    cplx k = std::pow(2.0, bma - 1.0) * gamma(1.0 - e.alpha) * gamma(e.beta) * rgamma(bma);
    cplx phase = std::exp(cplx(0, 1) * (1.0 - e.alpha - e.beta) * (x - pi) / 2.0);
    return k * phase * std::exp((bma - 1.0) * std::log(std::sin(x / 2.0)));
}

namespace {

constexpr int sbp_levels = 6;

// sum_{n >= M} a_n z^n from a_M..a_{M+K-1}; last term magnitude goes to tail
cplx summation_by_parts_tail(const std::vector<cplx>& a, long M, cplx z, double& last) {
    cplx s = 0.0;
    std::vector<cplx> diff = a;  // diff[i] = (nabla^k a)_{M+i}, valid for i >= k
    cplx one_minus = 1.0 - z;
    cplx denom = one_minus;
    for (int k = 0; k < sbp_levels; ++k) {
        if (k > 0) {
            for (int i = sbp_levels - 1; i >= k; --i) diff[i] = diff[i] - diff[i - 1];
        }
        cplx zp = std::exp(cplx(0, 1) * std::arg(z) * double(M + k));
        cplx term = diff[k] * zp / denom;
        s += term;
        last = std::abs(term);
        denom *= one_minus;
    }
    return s;
}

}  // namespace

H1Sum h1_partial_sum(const ExponentPair& e, double x, long cutoff) {
    if (cutoff < 2) throw std::invalid_argument("h1_partial_sum: cutoff must be >= 2");
    if (std::abs(std::sin(x / 2.0)) < 1e-12) throw std::invalid_argument("h1_partial_sum: x must avoid multiples of 2 pi");
    long count = cutoff + sbp_levels;
    auto pos = limit_weight_I_table(e, count, +1);
    auto neg = limit_weight_I_table(e, count, -1);
    // Neumaier-compensated central sum
    cplx sum = pos[0], comp = 0.0;
    auto add = [&](cplx t) {
        cplx s2 = sum + t;
        double cr = std::abs(sum.real()) >= std::abs(t.real()) ? (sum.real() - s2.real()) + t.real()
                                                               : (t.real() - s2.real()) + sum.real();
        double ci = std::abs(sum.imag()) >= std::abs(t.imag()) ? (sum.imag() - s2.imag()) + t.imag()
                                                               : (t.imag() - s2.imag()) + sum.imag();
        comp += cplx(cr, ci);
        sum = s2;
    };
    for (long n = 1; n < cutoff; ++n) {
        cplx ph = std::exp(cplx(0, x * double(n)));
        add(pos[n] * ph);
        add(neg[n] * std::conj(ph));
    }
    std::vector<cplx> ap(pos.begin() + cutoff, pos.end());
    std::vector<cplx> an(neg.begin() + cutoff, neg.end());
    double lp = 0, ln = 0;
    cplx z = std::exp(cplx(0, x));
    cplx tail = summation_by_parts_tail(ap, cutoff, z, lp) + summation_by_parts_tail(an, cutoff, std::conj(z), ln);
    return {sum + comp + tail, lp + ln};
}

cplx h1_fourier_closed(const ExponentPair& e, long n) {
    cplx bma = e.beta - e.alpha;
    double sgn = (n % 2 == 0) ? 1.0 : -1.0;
    return std::pow(2.0, 1.0 - bma) * std::exp(cplx(0, 1) * pi * (1.0 - e.alpha - e.beta) / 2.0) * gamma(bma) * sgn *
           rgamma(e.beta + double(n)) * rgamma(1.0 - e.alpha - double(n));
}

QuadResult h1_fourier_quadrature(const ExponentPair& e, long n, const QuadratureConfig& cfg) {
    cfg.validate();
    cplx bma = e.beta - e.alpha;
    cplx c = cplx(0, 1) * (1.0 - e.alpha - e.beta) / 2.0;
    auto f = [&](double w, double dl, double dr) -> cplx {
        double s = dl < dr ? std::sin(dl / 2.0) : std::sin(dr / 2.0);
        return std::exp(cplx(0, -double(n)) * w + c * w) * std::exp((bma - 1.0) * std::log(s));
    };
    auto r = integrate_interval(f, 0.0, 2.0 * pi, cfg);
    r.value /= 2.0 * pi;
    r.error /= 2.0 * pi;
    r.l1 /= 2.0 * pi;
    return r;
}

DualityResult duality_map(const ExponentPair& e, DualDirection direction, int branch) {
    const cplx i(0, 1);
    if (direction == DualDirection::to_dual) {
        cplx L = std::log(e.a_const);
        cplx af = 0.5 * (e.beta - e.alpha + i * L / pi);
        cplx bf = 0.5 * (2.0 + e.alpha - e.beta + i * L / pi);
        DualityResult out{make_exponents(af, bf), 0};
        auto back = duality_map(out.pair, DualDirection::from_dual, 0);
        out.branch = int(std::lround((e.alpha - back.pair.alpha).real()));
        return out;
    }
    cplx d = 1.0 + e.alpha - e.beta;
    cplx s = 1.0 - i * std::log(e.a_const) / pi + 2.0 * double(branch);
    return {make_exponents(0.5 * (s - d), 0.5 * (s + d)), branch};
}

double order_parameter(int N, long n, double k_prime) {
    if (N < 2 || n < 1 || n >= N) throw std::invalid_argument("order_parameter: need 1 <= n <= N-1");
    if (!(k_prime >= 0.0 && k_prime <= 1.0)) throw std::invalid_argument("order_parameter: k' must lie in [0, 1]");
    double e = double(n) * double(N - n) / (2.0 * double(N) * double(N));
    return std::pow(1.0 - k_prime * k_prime, e);
}

double order_parameter_limit(double x, double k_prime) {
    if (!(x > 0.0 && x < 2.0 * pi)) throw std::invalid_argument("order_parameter_limit: x must lie in (0, 2 pi)");
    if (!(k_prime >= 0.0 && k_prime <= 1.0)) throw std::invalid_argument("order_parameter_limit: k' must lie in [0, 1]");
    return std::pow(1.0 - k_prime * k_prime, x * (2.0 * pi - x) / (8.0 * pi * pi));
}

double crossover_regime1(const ExponentPair& e, long n) {
    if (n == 0) throw std::invalid_argument("crossover_regime1: n must be nonzero");
    cplx lhs = limit_weight_I(e, n);
    cplx rhs = gamma(e.beta) * rgamma(e.alpha) * std::sqrt(e.a_const) * limit_weight_III(e, double(n));
    return std::abs(lhs / rhs - 1.0);
}

double crossover_regime2(const ExponentPair& e, double x, double eps) {
    if (x == 0.0 || !(eps > 0.0)) throw std::invalid_argument("crossover_regime2: need x != 0 and eps > 0");
    cplx lhs = limit_weight_II(e, eps * x) / std::exp((e.alpha - e.beta) * std::log(eps / 2.0));
    cplx rhs = std::sqrt(e.a_const) * limit_weight_III(e, x);
    return std::abs(lhs / rhs - 1.0);
}

}  // namespace cpm
