#pragma once

#include "cpmlab/specfun.hpp"

#include <functional>

namespace cpm {

enum class TailMap { rational, exponential };

struct QuadratureConfig {
    int sub_intervals = 1;   // equal pieces per singular interval
    int levels = 10;         // double-exponential refinement depth, at most 12
    TailMap tail_map = TailMap::rational;
    double abs_tol = 1e-13;  // successive-level difference allowed, scaled by max(1, L1 norm)

    void validate() const;  // throws std::invalid_argument
};

struct QuadResult {
    cplx value;
    double error = 0.0;  // estimate from the last two refinement levels
    double l1 = 0.0;
    int levels_used = 0;
    bool converged = true;

    QuadResult& operator+=(const QuadResult& o);
};

// f(w, dl, dr) with dl = w - a and dr = b - w computed without cancellation near the endpoints
using EndpointIntegrand = std::function<cplx(double w, double dl, double dr)>;
// f(w, d) with d = |w - b| exact near the finite endpoint b
using TailIntegrand = std::function<cplx(double w, double d)>;

QuadResult integrate_interval(const EndpointIntegrand& f, double a, double b, const QuadratureConfig& cfg);

// integral over [b, inf) (direction = +1) or (-inf, b] (direction = -1)
QuadResult integrate_tail(const TailIntegrand& f, double b, int direction, const QuadratureConfig& cfg);

}  // namespace cpm
