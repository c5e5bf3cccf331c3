#pragma once

#include "cpmlab/quadrature.hpp"
#include "cpmlab/weights.hpp"

#include <vector>

namespace cpm {

enum class Regime { I, II, III };

struct RegimeWeight {
    Regime regime = Regime::I;
    ExponentPair exponents;
    cplx c_const = 1.0;  // regime II amplitude W(0) (N/pi)^{alpha-beta} Gamma(beta)/Gamma(alpha)
    cplx d_const = 1.0;  // regime III amplitude W(0) phi(N)^{alpha-beta} Gamma(beta)/Gamma(alpha) A^{1/2}
    double phi_scale_exponent = 0.5;  // phi(N) = N^{phi_scale_exponent}

    // regime I: argument is the integer spin difference; II: x in radians; III: n / phi(N)
    cplx operator()(double x) const;
};

RegimeWeight regime_weight(Regime regime, const ExponentPair& e, int N, cplx w0 = 1.0,
                           double phi_scale_exponent = 0.5);

// P(n | alpha, beta) for both signs of n
cplx limit_weight_I(const ExponentPair& e, long n);
// A^{frac(x/2pi)} |sin x/2|^{alpha-beta}; +inf at multiples of 2 pi when Re(alpha - beta) < 0
cplx limit_weight_II(const ExponentPair& e, double x);
// A^{-sign(x)/2} |x|^{alpha-beta}; x = 0 rejected
cplx limit_weight_III(const ExponentPair& e, double x);

// values P(n) for n = 0..count-1 (sign = +1) or P(-n) (sign = -1) by the Pochhammer recurrence
std::vector<cplx> limit_weight_I_table(const ExponentPair& e, long count, int sign);

// sum_{j=1}^{n} log[sin(pi(j+alpha-1)/N) / (pi(j+alpha-1)/N)], with the mirrored sum for n <= 0
cplx s_n_exact(int N, cplx alpha, long n);

struct AsymptoticResult {
    double value = 0.0;
    int truncation_order = 0;
    double error_bound = 0.0;  // bound on the first omitted term
};

// real alpha; evaluated internally in quad precision
AsymptoticResult s_n_asymptotic(int N, double alpha, long n, int order);

struct AsymptoticCheck {
    double exact, value, error, bound;
    bool within() const { return error <= bound; }
};
// |s_n_exact - s_n_asymptotic| computed without double cancellation
AsymptoticCheck asymptotic_check(int N, double alpha, long n, int order);

// phi^{(j)}(z) for |z| < pi, phi(z) = int_0^z log(sin t / t) dt
double phi_log_sinc(double z, int j);
// the chi^{(m)} majorant of |phi^{(m)}(z) - phi^{(m)}(0)|, m >= 2
double chi_majorant(int m, double z);

// |exact product-form ratio / leading-correction approximation - 1|
double finite_n_correction_check(int N, const ExponentPair& e, long n);

cplx h1_closed_form(const ExponentPair& e, double x);

struct H1Sum {
    cplx value;
    double tail_estimate;
};
// sum_n P(n) e^{inx}; the conditionally convergent tails use repeated summation by parts
H1Sum h1_partial_sum(const ExponentPair& e, double x, long cutoff);

// (1/2pi) int_0^{2pi} e^{-inz + i(1-alpha-beta)z/2} (sin z/2)^{beta-alpha-1} dz, closed form and quadrature
cplx h1_fourier_closed(const ExponentPair& e, long n);
QuadResult h1_fourier_quadrature(const ExponentPair& e, long n, const QuadratureConfig& cfg);

enum class DualDirection { to_dual, from_dual };

struct DualityResult {
    ExponentPair pair;
    int branch = 0;  // integer shift of (alpha, beta) that the log branch hides; from_dual(pair, branch) restores the input
};

DualityResult duality_map(const ExponentPair& e, DualDirection direction, int branch = 0);

double order_parameter(int N, long n, double k_prime);
double order_parameter_limit(double x, double k_prime);

// regime III weight against the large-|n| regime-I asymptote and the small-x regime-II asymptote
double crossover_regime1(const ExponentPair& e, long n);
double crossover_regime2(const ExponentPair& e, double x, double eps);

}  // namespace cpm
