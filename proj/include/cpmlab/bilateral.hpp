#pragma once

#include "cpmlab/specfun.hpp"

#include <vector>

namespace cpm {

// sum_{n>D} n^s by Euler-Maclaurin (D large, Re s < -1)
cplx power_tail_sum(long D, cplx s);

struct BilateralSum {
    cplx partial;        // sum over |n| <= D
    cplx tail;           // fitted tail correction, both sides
    double tail_bound;   // |C+| + |C-| times sum_{n>D} n^{Re s}
    cplx total() const { return partial + tail; }
};

// pos[n] = term(n), neg[n] = term(-n), n = 0..D (pos[0] and neg[0] both the n = 0 term).
// Tails assume term(n) ~ C n^s (1 + c/n) on each side; C and c fitted at D and D/2.
BilateralSum bilateral_sum(const std::vector<cplx>& pos, const std::vector<cplx>& neg, cplx s);

// log-log slope of |term| between n1 and n2
double fitted_decay(cplx t1, long n1, cplx t2, long n2);

}  // namespace cpm
