#include "cpmlab/specfun.hpp"

#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <array>
#include <cmath>
#include <string>

namespace cpm {

namespace {

constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_p = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

const double log_sqrt_2pi = 0.91893853320467274178;

bool near_pole(cplx z) {
    if (z.real() > 0.5) return false;
    double r = std::round(z.real());
    return std::abs(z - cplx(r, 0.0)) < 1e-12;
}

cplx lanczos_sum(cplx zm1) {
    cplx s = lanczos_p[0];
    for (int i = 1; i < 9; ++i) s += lanczos_p[i] / (zm1 + double(i));
    return s;
}

// valid for Re z >= 1/2
cplx gamma_right(cplx z) {
    cplx zm1 = z - 1.0;
    cplx t = zm1 + lanczos_g + 0.5;
    return std::sqrt(2.0 * pi) * std::pow(t, zm1 + 0.5) * std::exp(-t) * lanczos_sum(zm1);
}

cplx lgamma_right(cplx z) {
    cplx zm1 = z - 1.0;
    cplx t = zm1 + lanczos_g + 0.5;
    return log_sqrt_2pi + (zm1 + 0.5) * std::log(t) - t + std::log(lanczos_sum(zm1));
}

cplx sin_pi(cplx z) {
    // reduce the real part first so large arguments keep their zeros
    double r = z.real() - 2.0 * std::round(z.real() / 2.0);
    return std::sin(pi * cplx(r, z.imag()));
}

}  // namespace

cplx gamma(cplx z) {
    if (near_pole(z))
        throw pole_error("gamma: pole at z = " + std::to_string(z.real()));
    if (z.real() < 0.5) return pi / (sin_pi(z) * gamma_right(1.0 - z));
    return gamma_right(z);
}

cplx rgamma(cplx z) {
    if (near_pole(z)) return 0.0;
    if (z.real() < 0.5) return sin_pi(z) * gamma_right(1.0 - z) / pi;
    return 1.0 / gamma_right(z);
}

cplx lgamma(cplx z) {
    if (near_pole(z))
        throw pole_error("lgamma: pole at z = " + std::to_string(z.real()));
    if (z.real() < 0.5) return std::log(pi) - std::log(sin_pi(z)) - lgamma_right(1.0 - z);
    return lgamma_right(z);
}

cplx pochhammer(cplx x, long n) {
    if (n == 0) return 1.0;
    if (std::labs(n) <= 64) {
        cplx r = 1.0;
        if (n > 0) {
            for (long j = 0; j < n; ++j) r *= x + double(j);
            return r;
        }
        for (long j = 1; j <= -n; ++j) {
            cplx f = x - double(j);
            if (f == 0.0) throw pole_error("pochhammer: vanishing factor for negative n");
            r /= f;
        }
        return r;
    }
    if (x.imag() == 0.0) {
        double xr = x.real();
        if (n < 0) {
            for (long j = 1; j <= -n; ++j)
                if (xr - double(j) == 0.0) throw pole_error("pochhammer: vanishing factor for negative n");
        }
        return boost::math::rising_factorial(xr, int(n));
    }
    return std::exp(lgamma(x + double(n)) - lgamma(x));
}

cplx pochhammer_ratio(cplx x, cplx y, long n) {
    if (n < 0) return pochhammer_ratio(1.0 - y, 1.0 - x, -n);
    const bool real = x.imag() == 0.0 && y.imag() == 0.0;
    if (n <= 64 || !real) {
        cplx r = 1.0;
        for (long j = 0; j < n; ++j) {
            cplx den = y + double(j);
            if (den == 0.0) throw pole_error("pochhammer_ratio: vanishing denominator");
            r *= (x + double(j)) / den;
        }
        return r;
    }
    for (long j = 0; j < 64; ++j)
        if (y.real() + double(j) == 0.0) throw pole_error("pochhammer_ratio: vanishing denominator");
    // Gamma(x+n)/Gamma(y+n) * Gamma(y)/Gamma(x), the first ratio with both arguments large
    double big = boost::math::tgamma_ratio(x.real() + double(n), y.real() + double(n));
    return big * rgamma(x) * gamma(y);
}

const BernoulliTable& BernoulliTable::standard() {
    static const BernoulliTable table = [] {
        BernoulliTable t;
        t.max_index = 64;
        t.numbers.resize(65);
        t.numbers[0] = 1;
        // B_m = -1/(m+1) sum_{k<m} C(m+1,k) B_k
        for (int m = 1; m <= 64; ++m) {
            rational s = 0;
            boost::multiprecision::cpp_int c = 1;  // C(m+1, 0)
            for (int k = 0; k < m; ++k) {
                s += rational(c) * t.numbers[k];
                c = c * (m + 1 - k) / (k + 1);
            }
            t.numbers[m] = -s / (m + 1);
        }
        return t;
    }();
    return table;
}

double BernoulliTable::value(int n) const {
    if (n < 0 || n > max_index) throw std::out_of_range("Bernoulli index out of table range");
    return numbers[n].convert_to<double>();
}

cplx bernoulli_poly(int l, cplx x) {
    const auto& t = BernoulliTable::standard();
    if (l < 0 || l > t.max_index) throw std::out_of_range("bernoulli_poly: order out of table range");
    // Horner in x over  sum_k C(l,k) B_k x^{l-k}
    cplx r = 0.0;
    double c = 1.0;  // C(l,k)
    std::vector<double> coef(l + 1);
    for (int k = 0; k <= l; ++k) {
        coef[k] = c * t.value(k);
        c = c * (l - k) / (k + 1);
    }
    for (int k = 0; k <= l; ++k) r = r * x + coef[k];
    return r;
}

double zeta_even(int two_k) {
    if (two_k < 2 || two_k % 2 != 0) throw std::invalid_argument("zeta_even: argument must be even and >= 2");
    // beyond 2k = 20 the Dirichlet series is exact to rounding after a few terms
    if (two_k < 20) {
        const auto& t = BernoulliTable::standard();
        double b = std::abs(t.value(two_k));
        return std::pow(2.0 * pi, two_k) * b / (2.0 * std::tgamma(two_k + 1.0));
    }
    double s = 1.0;
    for (int n = 2; n < 200; ++n) {
        double term = std::pow(double(n), -two_k);
        s += term;
        if (term < 1e-18) break;
    }
    return s;
}

}  // namespace cpm
