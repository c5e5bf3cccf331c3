#pragma once

#include "cpmlab/rapidity.hpp"

#include <array>
#include <vector>

namespace cpm {

enum class WeightKind { W, Wbar, Wf, Wbarf };

// W(n) = normalization * ratios[n mod N], ratios[0] = 1
struct WeightTable {
    int n_states = 0;
    std::vector<cplx> ratios;
    cplx normalization = 1.0;

    cplx ratio(long n) const;
    cplx value(long n) const { return normalization * ratio(n); }
};

WeightTable weight_w(int N, const RapidityPoint& p, const RapidityPoint& q);
WeightTable weight_wbar(int N, const RapidityPoint& p, const RapidityPoint& q);
// trigonometric closed forms of the Fourier-dual ratios
WeightTable weight_wf(int N, const RapidityPoint& p, const RapidityPoint& q);
WeightTable weight_wbarf(int N, const RapidityPoint& p, const RapidityPoint& q);

// the same four tables from the curve coordinates (x, y, mu)
WeightTable weight_homogeneous(WeightKind kind, int N, const RapidityPoint& p, const RapidityPoint& q);

// W^f(m) = N^{-1} sum_n omega^{-mn} W(n), applied to the full values
WeightTable fourier_dual(const WeightTable& t);

struct ExponentPair {
    cplx alpha, beta;
    cplx a_const;  // sin(pi beta) / sin(pi alpha); NaN when sin(pi alpha) = 0

    bool principal() const;  // 0 < Re(beta - alpha) < 1
};

ExponentPair make_exponents(cplx alpha, cplx beta);
ExponentPair exponents(const RapidityPoint& p, const RapidityPoint& q, WeightKind which);
// A from the rapidity variables directly (gamma's and angles)
cplx a_const_closed(const RapidityPoint& p, const RapidityPoint& q, WeightKind which);

// A^{n/N} prod_{j=1}^n sin(pi(j+alpha-1)/N) / sin(pi(j+beta-1)/N); n in [-N, N], negative n by periodicity
cplx product_form(int N, const ExponentPair& e, long n);

// residual of (x4 - x3 w^n) W(n) = (x1 - x2 w^n) W(n-1) over n = 1..N, relative to |W|
double recursion_residual(const WeightTable& t, cplx x1, cplx x2, cplx x3, cplx x4);
// the (x1..x4) coefficients for W or Wbar between p and q
std::array<cplx, 4> recursion_coefficients(WeightKind kind, int N, const RapidityPoint& p, const RapidityPoint& q);

struct SteResidual {
    cplx lhs, rhs;
    double rel_err = 0.0;
};

SteResidual make_residual(cplx lhs, cplx rhs);

cplx f_pq(int N, const RapidityPoint& p, const RapidityPoint& q);
// log of the N-th power of F_pq before the root is taken
cplx f_pq_log_power(int N, const RapidityPoint& p, const RapidityPoint& q);

struct RConstant {
    cplx direct;        // star/triangle ratio at a=b=c=0
    cplx from_f;        // F_pq F_qr / F_pr with principal roots
    int omega_offset;   // j with from_f * omega^j closest to direct
    cplx corrected() const;
    int N = 0;
};

RConstant r_pqr(int N, const RapidityPoint& p, const RapidityPoint& q, const RapidityPoint& r);

// Weight tables and R for one (N, p, q, r), reused across spin configurations
class FiniteSte {
public:
    FiniteSte(int N, const RapidityPoint& p, const RapidityPoint& q, const RapidityPoint& r);

    SteResidual residual(long a, long b, long c) const;
    SteResidual dual_residual(long a, long b) const;
    const RConstant& r() const { return r_; }
    int n() const { return N_; }

private:
    int N_;
    WeightTable wpq_, wpr_, wqr_, wbpq_, wbpr_, wbqr_;
    WeightTable fpq_, fpr_, fqr_, fbpq_, fbpr_, fbqr_;
    RConstant r_;
};

SteResidual ste_residual(int N, const RapidityPoint& p, const RapidityPoint& q, const RapidityPoint& r,
                         long a, long b, long c);
SteResidual dual_ste_residual(int N, const RapidityPoint& p, const RapidityPoint& q, const RapidityPoint& r,
                              long a, long b);

}  // namespace cpm
