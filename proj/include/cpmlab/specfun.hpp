#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <complex>
#include <stdexcept>
#include <vector>

namespace cpm {

using cplx = std::complex<double>;
using rational = boost::multiprecision::cpp_rational;

inline constexpr double pi = 3.14159265358979323846264338327950288;

struct pole_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Principal-branch Gamma, Lanczos kernel (g=7, 9 terms) plus reflection.
cplx gamma(cplx z);
// 1/Gamma; entire, returns exact zero at the poles of gamma().
cplx rgamma(cplx z);
// log Gamma, any branch: only ever used through exp().
cplx lgamma(cplx z);

// (x)_n for either sign of n. Direct product for |n| <= 64.
cplx pochhammer(cplx x, long n);

// (x)_n / (y)_n without forming either factor; safe for large |n|
cplx pochhammer_ratio(cplx x, cplx y, long n);

// B_0..B_max as exact rationals, convention B_1 = -1/2.
struct BernoulliTable {
    int max_index = 0;
    std::vector<rational> numbers;

    double value(int n) const;
    static const BernoulliTable& standard();  // max_index 64
};

cplx bernoulli_poly(int l, cplx x);
double zeta_even(int two_k);

}  // namespace cpm
