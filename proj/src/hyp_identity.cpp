#include "cpmlab/hyp_identity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace cpm {

namespace {

const cplx I(0.0, 1.0);

bool near_integer(cplx z, double tol = 1e-12) {
    return std::abs(z.imag()) <= tol && std::abs(z.real() - std::round(z.real())) <= tol;
}

cplx sin_pi(cplx z) {
    // reduce the real part first so sin(pi n) comes out as an exact zero
    double n = std::round(z.real());
    cplx s = std::sin(pi * cplx(z.real() - n, z.imag()));
    return std::fmod(n, 2.0) == 0.0 ? s : -s;
}

double rel_gap(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Terms of sum_n prod_j Gamma(x_j + n) / Gamma(y_j + n) for n = 0..D and n = 0..-D,
// starting from t0 and stepping by the ratio of consecutive terms.
struct Terms {
    std::vector<cplx> pos, neg;
};

Terms bilateral_terms(const Triple3& x, const Triple3& y, cplx t0, long D,
                      const std::function<cplx(long)>& direct) {
    Terms t{std::vector<cplx>(D + 1), std::vector<cplx>(D + 1)};
    t.pos[0] = t.neg[0] = t0;
    for (long n = 0; n < D; ++n) {
        cplx r = 1.0;
        bool pole = false;
        for (int j = 0; j < 3; ++j) {
            cplx den = y[j] + double(n);
            if (std::abs(den) < 1e-12) pole = true;
            r *= (x[j] + double(n)) / den;
        }
        // 1/Gamma(y + n) was zero, the next term is not: restart from the closed form
        t.pos[n + 1] = pole ? direct(n + 1) : t.pos[n] * r;
    }
    for (long n = 0; n < D; ++n) {
        cplx r = 1.0;
        for (int j = 0; j < 3; ++j) r *= (y[j] - double(n) - 1.0) / (x[j] - double(n) - 1.0);
        t.neg[n + 1] = t.neg[n] * r;
    }
    return t;
}

cplx gamma_ratio_product(const Triple3& x, const Triple3& y) {
    cplx out = 1.0;
    for (int j = 0; j < 3; ++j) out *= gamma(x[j]) * rgamma(y[j]);
    return out;
}

double worst_decay(const Terms& t, long D, double expected) {
    long hi = std::min<long>(D, 10000), lo = hi / 10;
    if (lo < 1) return expected;
    double sp = fitted_decay(t.pos[lo], lo, t.pos[hi], hi);
    double sn = fitted_decay(t.neg[lo], lo, t.neg[hi], hi);
    return std::abs(sp - expected) > std::abs(sn - expected) ? sp : sn;
}

void require_convergent(cplx s) {
    if (!(s.real() < -1.0)) throw std::domain_error("bilateral sum diverges: Re(sum x - sum y) >= -1");
}

// f-factors in the (x, y, u, v) variables
cplx f_first(cplx x, cplx y, cplx u, cplx v) {
    return gamma(x) * gamma(v) * gamma(1.0 - u) / (gamma(y) * gamma(v - u));
}
cplx f_other(cplx x, cplx y, cplx u, cplx v) {
    return gamma(u) * gamma(y) * gamma(1.0 - x) / (gamma(v) * gamma(y - x));
}

cplx sigma_product(const Triple3& x, const Triple3& y) {
    cplx p = -4.0 / sin_pi(x[0]);
    for (int i = 0; i < 3; ++i) p *= sin_pi(y[i] - x[0]);
    return p;
}

cplx sigma_sum(const Triple3& x, const Triple3& y) {
    cplx xi[3], eta[3];
    for (int i = 0; i < 3; ++i) {
        xi[i] = std::exp(I * pi * x[i]);
        eta[i] = std::exp(I * pi * y[i]);
    }
    cplx rho = xi[0] * xi[1] * xi[2];
    cplx se = eta[0] * eta[0] + eta[1] * eta[1] + eta[2] * eta[2];
    cplx sx = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
    return (se - sx) / rho;
}

cplx tau(const Triple3& x) {
    cplx t = cplx(0.0, -8.0);  // (2i)^3
    for (int j = 0; j < 3; ++j) t *= sin_pi(x[j]);
    return t;
}

}  // namespace

Triple3 IdentityInstance::shifted_x() const {
    Triple3 out;
    for (int j = 0; j < 3; ++j) out[j] = x[j] + double(m[j]);
    return out;
}

Triple3 IdentityInstance::shifted_y() const {
    Triple3 out;
    for (int j = 0; j < 3; ++j) out[j] = y[j] + double(m[j]);
    return out;
}

IdentityInstance IdentityInstance::absorbed() const { return {shifted_x(), shifted_y(), {0, 0, 0}}; }

ConditionResiduals condition_residuals(const IdentityInstance& inst) {
    ConditionResiduals c;
    const auto& x = inst.x;
    const auto& y = inst.y;
    c.linear = std::abs(x[0] + x[1] + x[2] + 2.0 - y[0] - y[1] - y[2]);
    cplx sx = sin_pi(x[0]) * sin_pi(x[1]) * sin_pi(x[2]);
    cplx sy = sin_pi(y[0]) * sin_pi(y[1]) * sin_pi(y[2]);
    c.periodic = std::abs(sx - sy) / std::max(1.0, std::abs(sx));
    c.integer_x = near_integer(x[0]) || near_integer(x[1]) || near_integer(x[2]);
    return c;
}

IdentityInstance instance_from_rapidities(const PrincipalTriple& t, long a, long b, long c) {
    auto w_pr = t.pair(WeightKind::W, 'p', 'r');
    auto wb_qr = t.pair(WeightKind::Wbar, 'q', 'r');
    auto wb_pq = t.pair(WeightKind::Wbar, 'p', 'q');
    IdentityInstance inst;
    inst.x = {w_pr.alpha, wb_qr.alpha, 1.0 - wb_pq.beta};
    inst.y = {w_pr.beta, wb_qr.beta, 1.0 - wb_pq.alpha};
    inst.m = {a, b, c};
    return inst;
}

UV uv_from_instance(const IdentityInstance& inst) {
    const auto& x = inst.x;
    const auto& y = inst.y;
    UV uv;
    uv.u = {1.0 + x[1] - y[2], 1.0 + x[0] - y[2], 1.0 + x[0] - y[1]};
    uv.v = {y[1] - x[2], y[0] - x[2], y[0] - x[1]};
    return uv;
}

UV uv_from_rapidities(const PrincipalTriple& t) {
    auto wb_pr = t.pair(WeightKind::Wbar, 'p', 'r');
    auto w_qr = t.pair(WeightKind::W, 'q', 'r');
    auto w_pq = t.pair(WeightKind::W, 'p', 'q');
    return {{wb_pr.alpha, w_qr.alpha, w_pq.alpha}, {wb_pr.beta, w_qr.beta, w_pq.beta}};
}

IdentityInstance solve_conditions(cplx x1, cplx x2, cplx y1, cplx y2, long branch) {
    cplx S = sin_pi(x1) * sin_pi(x2) / (sin_pi(y1) * sin_pi(y2));
    cplx T = x1 + x2 - y1 - y2;
    cplx num = S - std::exp(-I * pi * T), den = S - std::exp(I * pi * T);
    double scale = std::max(1.0, std::abs(S));
    if (!std::isfinite(std::abs(S)) || std::abs(num) < 1e-13 * scale || std::abs(den) < 1e-13 * scale)
        throw singular_configuration("conditions have no isolated solution for x3");
    cplx x3 = std::log(num / den) / (2.0 * pi * I) + double(branch);
    if (near_integer(x3)) throw singular_configuration("solved x3 is an integer");
    IdentityInstance inst;
    inst.x = {x1, x2, x3};
    inst.y = {y1, y2, x3 + T + 2.0};
    return inst;
}

IdentityInstance random_identity_instance(Rng& rng, double imag_width) {
    auto draw = [&](double lo, double hi) { return cplx(rng.uniform(lo, hi), rng.uniform(-imag_width, imag_width)); };
    for (;;) {
        cplx x1 = draw(0.05, 0.95), x2 = draw(0.05, 0.95), y1 = draw(0.3, 1.7), y2 = draw(0.3, 1.7);
        try {
            auto inst = solve_conditions(x1, x2, y1, y2);
            rhs_closed_form(inst);
            return inst;
        } catch (const std::domain_error&) {
        }
    }
}

LhsSum lhs_sum(const IdentityInstance& inst, long cutoff) {
    if (cutoff < 100) throw std::invalid_argument("cutoff must be at least 100");
    auto x = inst.shifted_x(), y = inst.shifted_y();
    for (auto xi : x)
        if (near_integer(xi)) throw pole_error("integer x: a summand has a Gamma pole");
    cplx s = x[0] + x[1] + x[2] - y[0] - y[1] - y[2];
    require_convergent(s);
    auto direct = [&](long n) {
        Triple3 xn, yn;
        for (int j = 0; j < 3; ++j) {
            xn[j] = x[j] + double(n);
            yn[j] = y[j] + double(n);
        }
        return gamma_ratio_product(xn, yn);
    };
    auto terms = bilateral_terms(x, y, direct(0), cutoff, direct);
    LhsSum out;
    out.sum = bilateral_sum(terms.pos, terms.neg, s);
    out.decay = s;
    out.fitted_decay = worst_decay(terms, cutoff, s.real());
    return out;
}

cplx g_function(const Triple3& x, const Triple3& y, GForm form) {
    switch (form) {
        case GForm::trigonometric: {
            cplx d = sin_pi(x[1]) * sin_pi(x[2]);
            for (int i = 0; i < 3; ++i) d *= sin_pi(y[i] - x[0]);
            return std::pow(pi, 5) / d;
        }
        case GForm::gamma_product: {
            cplx g = 1.0;
            for (int j = 1; j < 3; ++j) g *= gamma(x[j]) * gamma(1.0 - x[j]);
            for (int i = 0; i < 3; ++i) g *= gamma(y[i] - x[0]) * gamma(1.0 - y[i] + x[0]);
            return g;
        }
        case GForm::sigma_tau:
            return std::pow(2.0 * pi * I, 5) / (tau(x) * sigma_sum(x, y));
    }
    throw std::invalid_argument("unknown G form");
}

cplx rhs_closed_form(const IdentityInstance& inst, GForm form) {
    auto x = inst.shifted_x(), y = inst.shifted_y();
    cplx den = 1.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (near_integer(y[i] - x[j]) && std::round((y[i] - x[j]).real()) <= 0.0)
                throw pole_error("Gamma(y_i - x_j) has a pole");
            den *= rgamma(y[i] - x[j]);
        }
    return g_function(x, y, form) * den;
}

cplx rhs_f_route(const IdentityInstance& inst) {
    const auto& x = inst.x;
    const auto& y = inst.y;
    const auto& m = inst.m;
    auto uv = uv_from_instance(inst);
    cplx f1 = f_first(x[0], y[0], uv.u[0], uv.v[0]);
    cplx f2 = f_other(x[1], y[1], uv.u[1], uv.v[1]);
    cplx f3 = f_other(x[2], y[2], uv.u[2], uv.v[2]);
    cplx out = f2 * f3 / f1;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) out *= pochhammer_ratio(1.0 + x[i] - y[j], y[i] - x[j], m[i] - m[j]);
    return out * gamma_ratio_product(x, y);
}

IdentityResidual identity_residual(const IdentityInstance& inst, long cutoff) {
    auto l = lhs_sum(inst, cutoff);
    IdentityResidual r;
    r.lhs = l.value();
    r.rhs = rhs_closed_form(inst);
    r.rel_err = rel_gap(r.lhs, r.rhs);
    r.tail_bound = l.sum.tail_bound / std::max(std::abs(r.rhs), 1e-300);
    r.fitted_decay = l.fitted_decay;
    return r;
}

Orbit symmetry_orbit(const IdentityInstance& inst) {
    auto base = inst.absorbed();
    Orbit orbit;
    auto add = [&](std::string label, IdentityInstance member) {
        if (condition_residuals(member).integer_x)
            orbit.dropped.push_back(std::move(label));
        else
            orbit.members.push_back({std::move(label), member});
    };
    std::array<int, 3> px{0, 1, 2};
    do {
        std::array<int, 3> py{0, 1, 2};
        do {
            IdentityInstance m;
            std::string label = "perm x";
            for (int j = 0; j < 3; ++j) {
                m.x[j] = base.x[px[j]];
                m.y[j] = base.y[py[j]];
                label += char('1' + px[j]);
            }
            label += " y";
            for (int j = 0; j < 3; ++j) label += char('1' + py[j]);
            add(label, m);
        } while (std::next_permutation(py.begin(), py.end()));
    } while (std::next_permutation(px.begin(), px.end()));

    IdentityInstance refl;
    for (int j = 0; j < 3; ++j) {
        refl.x[j] = 1.0 - base.y[j];
        refl.y[j] = 1.0 - base.x[j];
    }
    add("reflect", refl);

    for (int j = 0; j < 3; ++j)
        for (long M : {-1L, 2L}) {
            auto m = base;
            m.x[j] += double(M);
            m.y[j] += double(M);
            add("translate " + std::to_string(j + 1) + " by " + std::to_string(M), m);
        }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            auto m = base;
            m.y[i] += 1.0;
            m.y[j] -= 1.0;
            add("move y" + std::to_string(j + 1) + " to y" + std::to_string(i + 1), m);
        }
    return orbit;
}

GSymmetry g_symmetry_check(const IdentityInstance& inst) {
    auto a = inst.absorbed();
    GSymmetry g;
    g.sigma_product = sigma_product(a.x, a.y);
    g.sigma_sum = sigma_sum(a.x, a.y);
    g.sigma_deviation = rel_gap(g.sigma_sum, g.sigma_product);

    cplx gt = g_function(a.x, a.y, GForm::trigonometric);
    g.g_deviation = std::max(rel_gap(g_function(a.x, a.y, GForm::gamma_product), gt),
                             rel_gap(g_function(a.x, a.y, GForm::sigma_tau), gt));

    Triple3 rx, ry;
    for (int j = 0; j < 3; ++j) {
        rx[j] = 1.0 - a.y[j];
        ry[j] = 1.0 - a.x[j];
    }
    g.reflection_deviation = rel_gap(sigma_sum(rx, ry), g.sigma_sum);

    Triple3 sx = {a.x[1], a.x[0], a.x[2]};
    g.swap_deviation = rel_gap(sigma_product(sx, a.y), g.sigma_product);
    g.swap_bit_identical = sigma_sum(sx, a.y) == g.sigma_sum;
    return g;
}

DougallCheck dougall_5h5_check(cplx x1, cplx x2, cplx x3, cplx a, long cutoff) {
    if (cutoff < 100) throw std::invalid_argument("cutoff must be at least 100");
    Triple3 x = {x1, x2, x3}, y;
    for (int j = 0; j < 3; ++j) {
        if (near_integer(x[j])) throw pole_error("integer x: a summand has a Gamma pole");
        y[j] = 1.0 + a - x[j];
    }
    cplx sx = x1 + x2 + x3;
    cplx s = 2.0 * sx - 3.0 - 3.0 * a;
    require_convergent(s);

    // normalized terms: t(0) = 1
    auto direct = [&](long n) {
        Triple3 xn, yn;
        for (int j = 0; j < 3; ++j) {
            xn[j] = x[j] + double(n);
            yn[j] = y[j] + double(n);
        }
        return gamma_ratio_product(xn, yn) / gamma_ratio_product(x, y);
    };
    auto terms = bilateral_terms(x, y, 1.0, cutoff, direct);
    auto bs = bilateral_sum(terms.pos, terms.neg, s);

    DougallCheck d;
    d.lhs = bs.total();
    cplx rhs = gamma(1.0 - a / 2.0) * gamma(1.0 + a / 2.0) * gamma(1.0 + 1.5 * a - sx) /
               (gamma(1.0 - a) * gamma(1.0 + a));
    for (int j = 0; j < 3; ++j)
        rhs *= gamma(1.0 - x[j]) * gamma(1.0 + a - x[j]) / (gamma(1.0 + a - sx + x[j]) * gamma(1.0 + a / 2.0 - x[j]));
    d.rhs = rhs;
    d.rel_err = rel_gap(d.lhs, d.rhs);
    d.tail_bound = bs.tail_bound / std::max(std::abs(rhs), 1e-300);

    d.ramanujan_applies = std::abs(a) == 0.0 && sx.real() < 1.0;
    if (d.ramanujan_applies) {
        // Gamma-normalized closed form, converted back to the normalized sum
        cplx r = gamma(1.0 - sx);
        for (int j = 0; j < 3; ++j) r *= gamma(1.0 - x[j]);
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) r /= gamma(1.0 - x[i] - x[j]);
        d.ramanujan_rhs = r;
        d.ramanujan_rel_err = rel_gap(d.lhs, r);
    } else {
        d.ramanujan_rhs = cplx(std::nan(""), std::nan(""));
        d.ramanujan_rel_err = std::nan("");
    }
    d.conditions = condition_residuals({x, y, {0, 0, 0}});
    return d;
}

cplx dougall_ramanujan_value(const Triple3& x) {
    cplx v = std::sqrt(pi);
    for (auto xi : x) v *= gamma(xi) / gamma(xi + 0.5);
    return v;
}

}  // namespace cpm
