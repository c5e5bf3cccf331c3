#pragma once

#include "cpmlab/bilateral.hpp"
#include "cpmlab/quadrature.hpp"
#include "cpmlab/triple.hpp"

namespace cpm {

// f_pq f_qr / f_pr
cplx cocycle(cplx f_pq, cplx f_qr, cplx f_pr);

// per-pair factors of the three limiting constants
cplx f_regime1(const ExponentPair& w, const ExponentPair& wbar);
cplx f_regime2(const ExponentPair& wbar);
// includes the Abar^{-1/2} that the whole-line weights carry
cplx f_regime3(const ExponentPair& wbar);

cplx r_infty(const PrincipalTriple& t);
cplx r_infty_regime2(const PrincipalTriple& t);
cplx r_infty_regime3(const PrincipalTriple& t);

struct SumSteResult {
    SteResidual residual;
    long cutoff = 0;
    double tail_bound = 0.0;
    cplx tail_correction;
    double decay_exponent = 0.0;  // log-log slope of |summand| over |d| in [10^3, 10^4], worst side
    double expected_decay = 0.0;  // from the exponent sums
};

// sum over all integers d with the regime-I weights normalized to W(0) = 1
SumSteResult regime1_ste(const PrincipalTriple& t, long a, long b, long c, long cutoff);

// e^{(gp - gq) frac(x/2pi)} |sin x/2|^{lp - lq} for W, (gp + gq) and lq - lp - 1 for Wbar.
// periodic_floor = false drops the integer part of x/2pi.
double regime2_weight(WeightKind kind, const RapidityPoint& p, const RapidityPoint& q, double x,
                      bool periodic_floor = true);

// e^{-(gp -+ gq) sign(x)/2} |x|^{...}, same exponents as regime II
double regime3_weight(WeightKind kind, const RapidityPoint& p, const RapidityPoint& q, double x);

enum class Regime2Variant { chiral, gauge, nonchiral };

struct IntegralSteResult {
    SteResidual residual;
    QuadResult quad;
    cplx constant;
};

IntegralSteResult regime2_ste(const PrincipalTriple& t, double x, double y, double z, const QuadratureConfig& cfg,
                              Regime2Variant variant = Regime2Variant::chiral);

// Fourier coefficient (1/2pi) int_0^{2pi} e^{-inx} W(x) dx of a regime-II weight, closed form and quadrature
cplx regime2_coefficient(WeightKind kind, const RapidityPoint& p, const RapidityPoint& q, long n);
QuadResult regime2_coefficient_quadrature(WeightKind kind, const RapidityPoint& p, const RapidityPoint& q, long n,
                                          const QuadratureConfig& cfg);

struct FourierSteResult {
    SumSteResult sum;
    double coefficient_check = 0.0;  // worst relative gap closed vs quadrature over j in [-3, 3]
};

FourierSteResult regime2_fourier_ste(const PrincipalTriple& t, long a, long b, long c, long cutoff,
                                     const QuadratureConfig& cfg);

// nonchiral = true evaluates on the k = 0 slice with the same lambdas
IntegralSteResult regime3_ste(const PrincipalTriple& t, double x, double y, double z, const QuadratureConfig& cfg,
                              bool nonchiral = false);

struct FLimitCheck {
    cplx f_exact, f_closed;
    double deviation = 0.0;
    double trig_identity_residual = 0.0;  // 4 Abar Abar^f sin^2(pi abar^f) against sin^2 pi(bbar - abar) / sin^2 pi abar
    cplx log_sum, log_closed;
    double log_deviation = 0.0;
    cplx dual_ratio_exact, dual_ratio_closed;  // Wbar^f(0) / Wbar(0)
    double dual_ratio_deviation = 0.0;
};

FLimitCheck f_pq_limit_check(int N, const RapidityPoint& p, const RapidityPoint& q);

}  // namespace cpm
