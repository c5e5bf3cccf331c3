#include "cpmlab/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cpm {

namespace bq = boost::math::quadrature;

void QuadratureConfig::validate() const {
    if (sub_intervals < 1) throw std::invalid_argument("sub_intervals must be >= 1");
    if (levels < 1 || levels > 12) throw std::invalid_argument("quadrature levels must lie in [1, 12]");
    if (!(abs_tol > 0.0)) throw std::invalid_argument("abs_tol must be positive");
}

QuadResult& QuadResult::operator+=(const QuadResult& o) {
    value += o.value;
    error += o.error;
    l1 += o.l1;
    levels_used = std::max(levels_used, o.levels_used);
    converged = converged && o.converged;
    return *this;
}

namespace {

// real and imaginary parts separately: the complement-aware overload is real-valued
template <class G>
QuadResult run_tanh_sinh(const G& g, double a, double b, const QuadratureConfig& cfg) {
    bq::tanh_sinh<double> ts(std::size_t(cfg.levels));
    QuadResult r;
    double parts[2];
    for (int part = 0; part < 2; ++part) {
        double err = 0.0, l1 = 0.0;
        std::size_t lev = 0;
        auto h = [&](double x, double xc) {
            cplx v = g(x, xc);
            return part == 0 ? v.real() : v.imag();
        };
        parts[part] = ts.integrate(h, a, b, cfg.abs_tol, &err, &l1, &lev);
        r.error += err;
        r.l1 += l1;
        r.levels_used = std::max(r.levels_used, int(lev));
    }
    r.value = cplx(parts[0], parts[1]);
    r.converged = r.error <= cfg.abs_tol * std::max(1.0, r.l1);
    return r;
}

}  // namespace

QuadResult integrate_interval(const EndpointIntegrand& f, double a, double b, const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(b > a)) throw std::invalid_argument("integrate_interval: need b > a");
    QuadResult total;
    const int m = cfg.sub_intervals;
    for (int i = 0; i < m; ++i) {
        const double ai = i == 0 ? a : a + (b - a) * i / m;
        const double bi = i == m - 1 ? b : a + (b - a) * (i + 1) / m;
        auto g = [&](double x, double xc) {
            if (xc < 0.0) {
                double dl = (ai - a) + (-xc);
                return f(x, dl, b - x);
            }
            double dr = (b - bi) + xc;
            return f(x, x - a, dr);
        };
        total += run_tanh_sinh(g, ai, bi, cfg);
    }
    return total;
}

QuadResult integrate_tail(const TailIntegrand& f, double b, int direction, const QuadratureConfig& cfg) {
    cfg.validate();
    const double s = direction >= 0 ? 1.0 : -1.0;
    if (cfg.tail_map == TailMap::rational) {
        // w = b + s t/(1-t), dw = dt/(1-t)^2
        auto g = [&](double t, double tc) -> cplx {
            double d, one_minus_t;
            if (tc < 0.0) {
                one_minus_t = 1.0 - t;
                d = -tc / one_minus_t;
            } else {
                one_minus_t = tc;
                if (one_minus_t == 0.0) return 0.0;
                d = (1.0 - tc) / tc;
            }
            // two divisions: the squared factor underflows near t = 1
            return f(b + s * d, d) / one_minus_t / one_minus_t;
        };
        return run_tanh_sinh(g, 0.0, 1.0, cfg);
    }
    // unit segment with the endpoint singularity, then exp_sinh on the smooth remainder
    auto near = [&](double, double xc) -> cplx {
        double d = xc < 0.0 ? -xc : 1.0 - xc;
        return f(b + s * d, d);
    };
    QuadResult r = run_tanh_sinh(near, 0.0, 1.0, cfg);
    bq::exp_sinh<double> es(std::size_t(cfg.levels));
    double parts[2];
    QuadResult far;
    for (int part = 0; part < 2; ++part) {
        double err = 0.0, l1 = 0.0;
        std::size_t lev = 0;
        auto h = [&](double d) {
            cplx v = f(b + s * d, d);
            return part == 0 ? v.real() : v.imag();
        };
        parts[part] = es.integrate(h, 1.0, std::numeric_limits<double>::infinity(), cfg.abs_tol, &err, &l1, &lev);
        far.error += err;
        far.l1 += l1;
        far.levels_used = std::max(far.levels_used, int(lev));
    }
    far.value = cplx(parts[0], parts[1]);
    far.converged = far.error <= cfg.abs_tol * std::max(1.0, far.l1);
    r += far;
    return r;
}

}  // namespace cpm
