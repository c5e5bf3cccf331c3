#include "cpmlab/bilateral.hpp"

#include <cmath>
#include <stdexcept>

namespace cpm {

namespace {

// Neumaier compensated summation over complex terms
struct Accumulator {
    cplx sum = 0.0, comp = 0.0;
    void add(cplx v) {
        auto step = [](double& s, double& c, double x) {
            double t = s + x;
            if (std::abs(s) >= std::abs(x)) c += (s - t) + x;
            else c += (x - t) + s;
            s = t;
        };
        double sr = sum.real(), si = sum.imag(), cr = comp.real(), ci = comp.imag();
        step(sr, cr, v.real());
        step(si, ci, v.imag());
        sum = cplx(sr, si);
        comp = cplx(cr, ci);
    }
    cplx value() const { return sum + comp; }
};

struct SideTail {
    cplx value;
    double amplitude;
};

SideTail side_tail(const std::vector<cplx>& t, cplx s) {
    const long D = long(t.size()) - 1;
    const long H = D / 2;
    const cplx r = t[D] / std::pow(double(D), s);
    const cplx r2 = t[H] / std::pow(double(H), s);
    // t(n) = C n^s (1 + c/n) matched at n = D and n = H
    const cplx cc = (r2 - r) / (1.0 / H - 1.0 / D);  // C*c
    const cplx C = r - cc / double(D);
    return {C * power_tail_sum(D, s) + cc * power_tail_sum(D, s - 1.0), std::abs(C)};
}

}  // namespace

cplx power_tail_sum(long D, cplx s) {
    const double d = double(D);
    const cplx ds = std::pow(d, s);
    return -ds * d / (s + 1.0) - ds / 2.0 - s * ds / (12.0 * d) +
           s * (s - 1.0) * (s - 2.0) * ds / (720.0 * d * d * d);
}

BilateralSum bilateral_sum(const std::vector<cplx>& pos, const std::vector<cplx>& neg, cplx s) {
    if (pos.size() != neg.size() || pos.size() < 5) throw std::invalid_argument("bilateral_sum: need matching tables with D >= 4");
    if (!(s.real() < -1.0)) throw std::invalid_argument("bilateral_sum: terms must decay faster than 1/n");
    Accumulator acc;
    acc.add(pos[0]);
    for (std::size_t n = 1; n < pos.size(); ++n) {
        acc.add(pos[n]);
        acc.add(neg[n]);
    }
    const long D = long(pos.size()) - 1;
    SideTail tp = side_tail(pos, s), tn = side_tail(neg, s);
    double envelope = std::real(power_tail_sum(D, cplx(s.real(), 0.0)));
    return {acc.value(), tp.value + tn.value, (tp.amplitude + tn.amplitude) * envelope};
}

double fitted_decay(cplx t1, long n1, cplx t2, long n2) {
    return std::log(std::abs(t2) / std::abs(t1)) / std::log(double(n2) / double(n1));
}

}  // namespace cpm
