#include "cpmlab/cli.hpp"

#include "cpmlab/hyp_identity.hpp"
#include "cpmlab/limits.hpp"
#include "cpmlab/parallel.hpp"
#include "cpmlab/report.hpp"
#include "cpmlab/ste_infinite.hpp"
#include "cpmlab/triple.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

namespace cpm::cli {

namespace {

struct usage_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Globals {
    std::optional<double> tol;
    long cutoff = 100000;
    int quad_levels = 10;
    std::uint64_t seed = 1;
    std::optional<int> count;
    std::string out;
    std::string format = "json";

    double tol_or(double d) const { return tol.value_or(d); }
    int count_or(int d) const { return count.value_or(d); }
    QuadratureConfig quad() const {
        QuadratureConfig c;
        c.levels = quad_levels;
        return c;
    }
};

struct Output {
    RunReport report;
    std::optional<std::string> csv;  // replaces the checks CSV under --format csv
};

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

json rapidity_json(const RapidityPoint& p) {
    return {{"k", p.k}, {"lambda", p.lambda}, {"theta", p.theta}, {"phi", p.phi}, {"gamma", p.gamma}};
}

json triple_json(const PrincipalTriple& t) {
    return {{"k", t.modulus.k}, {"lambda_p", t.p.lambda}, {"lambda_q", t.q.lambda}, {"lambda_r", t.r.lambda}};
}

std::vector<double> parse_list(const std::string& s, const std::string& what) {
    std::vector<double> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        std::size_t used = 0;
        double x;
        try {
            x = std::stod(item, &used);
        } catch (const std::exception&) {
            throw usage_error(what + ": not a number: '" + item + "'");
        }
        if (item.find_first_not_of(" \t", used) != std::string::npos || !std::isfinite(x))
            throw usage_error(what + ": not a number: '" + item + "'");
        v.push_back(x);
    }
    return v;
}

// worst relative gap over n = 0..N-1
template <class A, class B>
Check worst_over_states(const std::string& name, int N, A a, B b, double tol) {
    Check worst = make_check(name, a(0), b(0), tol);
    for (int n = 1; n < N; ++n) {
        auto c = make_check(name, a(n), b(n), tol);
        if (!(c.rel_err <= worst.rel_err)) worst = c;
    }
    return worst;
}

// runs f(i) for every configuration in parallel, keeping index order; a throwing configuration becomes a failed check
std::vector<Check> sweep(int count, const std::function<std::vector<Check>(int)>& f,
                         const std::function<std::string(int)>& label) {
    auto parts = parallel_map<std::vector<Check>>(std::size_t(count), [&](std::size_t i) {
        try {
            return f(int(i));
        } catch (const std::exception& e) {
            return std::vector<Check>{failed_check(label(int(i)), e.what())};
        }
    });
    std::vector<Check> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

// ---------------------------------------------------------------- weights

Output cmd_weights(const Globals& g, int N, double k, double lp, double lq) {
    if (!std::isfinite(lp) || !std::isfinite(lq)) throw usage_error("lambdas must be finite");
    Modulus m;
    try {
        m = Modulus::from_k(k);
    } catch (const std::invalid_argument& e) {
        throw usage_error(e.what());
    }
    auto p = rapidity_from_lambda(m, lp), q = rapidity_from_lambda(m, lq);

    struct Kind {
        const char* name;
        WeightKind kind;
        WeightTable table;
    };
    std::vector<Kind> kinds = {{"W", WeightKind::W, weight_w(N, p, q)},
                               {"Wbar", WeightKind::Wbar, weight_wbar(N, p, q)},
                               {"Wf", WeightKind::Wf, weight_wf(N, p, q)},
                               {"Wbarf", WeightKind::Wbarf, weight_wbarf(N, p, q)}};
    Output o;
    auto& r = o.report;
    r.command = "weights";
    r.params = {{"N", N}, {"k", k}, {"lambda_p", lp}, {"lambda_q", lq}};
    bool coincide = std::abs(lp - lq - std::round(lp - lq)) < 1e-12;
    for (const auto& kd : kinds) {
        auto curve = weight_homogeneous(kd.kind, N, p, q);
        r.checks.push_back(worst_over_states(std::string(kd.name) + " trigonometric vs curve form", N,
                                             [&](int n) { return kd.table.ratio(n); },
                                             [&](int n) { return curve.ratio(n); }, g.tol_or(1e-11)));
        auto e = exponents(p, q, kd.kind);
        r.checks.push_back(worst_over_states(std::string(kd.name) + " product form", N,
                                             [&](int n) { return product_form(N, e, n); },
                                             [&](int n) { return kd.table.ratio(n); }, g.tol_or(1e-11)));
        if (!coincide)
            r.checks.push_back(make_check(std::string(kd.name) + " A constant", e.a_const,
                                          a_const_closed(p, q, kd.kind), g.tol_or(1e-12)));
    }
    for (int i : {0, 1}) {
        auto dual = fourier_dual(kinds[i].table);
        const auto& closed = kinds[i + 2].table;
        r.checks.push_back(worst_over_states(std::string(kinds[i + 2].name) + " from the discrete Fourier transform",
                                             N, [&](int n) { return dual.ratio(n); },
                                             [&](int n) { return closed.ratio(n); }, g.tol_or(1e-10)));
    }
    if (k == 0.0) {
        for (int i : {0, 1}) {
            const auto& t = kinds[i].table;
            r.checks.push_back(worst_over_states(std::string(kinds[i].name) + " reflection symmetry", N,
                                                 [&](int n) { return t.ratio(n); },
                                                 [&](int n) { return t.ratio(-n); }, g.tol_or(1e-11)));
        }
    }

    json tables = json::object();
    std::ostringstream csv;
    csv << std::setprecision(17) << "kind,n,ratio_re,ratio_im,norm_re,norm_im\n";
    for (const auto& kd : kinds) {
        tables[kd.name] = to_json(kd.table);
        for (int n = 0; n < N; ++n)
            csv << kd.name << ',' << n << ',' << kd.table.ratios[n].real() << ',' << kd.table.ratios[n].imag()
                << ',' << kd.table.normalization.real() << ',' << kd.table.normalization.imag() << '\n';
    }
    r.data = {{"tables", tables}, {"p", rapidity_json(p)}, {"q", rapidity_json(q)}};
    o.csv = csv.str();
    return o;
}

// ---------------------------------------------------------------- ste

std::array<double, 3> distinct_reals(Rng& rng, double lo, double hi, double min_gap, bool circular) {
    for (;;) {
        std::array<double, 3> v = {rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi)};
        bool ok = true;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                double d = std::abs(v[i] - v[j]);
                if (circular) d = std::min(d, (hi - lo) - d);
                ok = ok && d > min_gap;
            }
        if (ok) return v;
    }
}

std::string spins_label(double a, double b, double c) {
    std::ostringstream os;
    os << std::setprecision(6) << "(" << a << ", " << b << ", " << c << ")";
    return os.str();
}

Output cmd_ste(const Globals& g, const std::string& scope, int N, double k_max) {
    if (!(k_max >= 0.0 && k_max < 1.0)) throw usage_error("--k-max must lie in [0, 1)");
    Output o;
    auto& r = o.report;
    r.command = "ste " + scope;
    r.seed = g.seed;

    int count = g.count_or(scope == "finite" || scope == "dual" ? 20 : scope == "regime1" ? 10 : 5);
    double tol = g.tol_or(scope == "finite"   ? 1e-10
                          : scope == "dual"   ? 1e-9
                          : scope == "regime1" ? 1e-7
                                               : 1e-6);
    r.params = {{"scope", scope}, {"count", count}, {"tol", tol}, {"k_max", k_max}};
    if (scope == "finite" || scope == "dual") r.params["N"] = N;
    if (scope == "regime1" || scope == "fourier") r.params["cutoff"] = g.cutoff;
    if (scope == "regime2" || scope == "fourier" || scope == "regime3") r.params["quad_levels"] = g.quad_levels;
    if ((scope == "regime1" || scope == "fourier") && g.cutoff < 1000) throw usage_error("--cutoff must be >= 1000");

    auto label = [&](int i) { return r.command + " triple " + std::to_string(i); };
    QuadratureConfig cfg = g.quad();

    std::vector<json> triples(count);
    auto body = [&](int i) -> std::vector<Check> {
        Rng rng(g.seed, std::uint64_t(i));
        auto t = random_triple(rng, k_max);
        triples[i] = triple_json(t);
        std::vector<Check> out;
        std::string base = label(i);
        if (scope == "finite") {
            FiniteSte s(N, t.p, t.q, t.r);
            SteResidual worst = s.residual(0, 0, 0);
            for (int a = 0; a < N; ++a)
                for (int b = 0; b < N; ++b)
                    for (int c = 0; c < N; ++c) {
                        auto res = s.residual(a, b, c);
                        if (!(res.rel_err <= worst.rel_err)) worst = res;
                    }
            out.push_back(make_check(base + " worst spins", worst.lhs, worst.rhs, tol));
            out.push_back(make_check(base + " constant from F", s.r().corrected(), s.r().direct, tol));
        } else if (scope == "dual") {
            FiniteSte s(N, t.p, t.q, t.r);
            SteResidual worst = s.dual_residual(0, 0);
            for (int a = 0; a < N; ++a)
                for (int b = 0; b < N; ++b) {
                    auto res = s.dual_residual(a, b);
                    if (!(res.rel_err <= worst.rel_err)) worst = res;
                }
            out.push_back(make_check(base + " worst spins", worst.lhs, worst.rhs, tol));
        } else if (scope == "regime1") {
            std::vector<std::array<long, 3>> spins = {{0, 0, 0}, {rng.integer(-3, 3), rng.integer(-3, 3), rng.integer(-3, 3)}};
            for (auto [a, b, c] : spins) {
                auto res = regime1_ste(t, a, b, c, g.cutoff);
                std::string nm = base + " spins " + spins_label(a, b, c);
                out.push_back(make_check(nm, res.residual.lhs, res.residual.rhs, tol));
                // summand decay within 0.05 of the exponent sum
                out.push_back(make_check(nm + " decay", res.decay_exponent, res.expected_decay,
                                         0.05 / std::abs(res.expected_decay)));
            }
        } else if (scope == "regime2") {
            for (int s = 0; s < 3; ++s) {
                auto v = distinct_reals(rng, 0.0, 2.0 * pi, 0.3, true);
                for (auto [variant, vname] : {std::pair{Regime2Variant::chiral, "chiral"},
                                              std::pair{Regime2Variant::gauge, "gauge"},
                                              std::pair{Regime2Variant::nonchiral, "nonchiral"}}) {
                    auto res = regime2_ste(t, v[0], v[1], v[2], cfg, variant);
                    out.push_back(make_check(base + " " + vname + " spins " + spins_label(v[0], v[1], v[2]),
                                             res.residual.lhs, res.residual.rhs, tol));
                }
            }
        } else if (scope == "fourier") {
            for (int s = 0; s < 3; ++s) {
                long a = s == 0 ? 0 : rng.integer(-3, 3), b = s == 0 ? 0 : rng.integer(-3, 3),
                     c = s == 0 ? 0 : rng.integer(-3, 3);
                auto res = regime2_fourier_ste(t, a, b, c, g.cutoff, cfg);
                std::string nm = base + " spins " + spins_label(a, b, c);
                out.push_back(make_check(nm, res.sum.residual.lhs, res.sum.residual.rhs, tol));
                if (s == 0) out.push_back(scalar_check(base + " coefficients closed vs quadrature", res.coefficient_check, 1e-8));
            }
        } else {  // regime3
            for (int s = 0; s < 3; ++s) {
                auto v = distinct_reals(rng, -3.0, 3.0, 0.3, false);
                for (bool fishnet : {false, true}) {
                    auto res = regime3_ste(t, v[0], v[1], v[2], cfg, fishnet);
                    out.push_back(make_check(base + (fishnet ? " fishnet" : " chiral") + " spins " +
                                                 spins_label(v[0], v[1], v[2]),
                                             res.residual.lhs, res.residual.rhs, tol));
                }
            }
        }
        return out;
    };
    r.checks = sweep(count, body, label);
    r.data = {{"triples", triples}};
    return o;
}

// ---------------------------------------------------------------- identity

std::vector<Check> identity_checks(const std::string& base, const IdentityInstance& inst, long cutoff, double tol) {
    std::vector<Check> out;
    auto c = condition_residuals(inst);
    out.push_back(scalar_check(base + " conditions", std::max(c.linear, c.periodic), 1e-10));
    auto res = identity_residual(inst, cutoff);
    out.push_back(make_check(base + " identity", res.lhs, res.rhs, tol));
    return out;
}

Output cmd_identity(const Globals& g, const std::string& source, const std::string& input, const std::string& xs,
                    bool orbit) {
    Output o;
    auto& r = o.report;
    r.command = "identity " + source;
    r.seed = g.seed;
    if (g.cutoff < 1000) throw usage_error("--cutoff must be >= 1000");
    long cutoff = g.cutoff;

    if (source == "file") {
        if (input.empty()) throw usage_error("identity file needs --input");
        std::ifstream in(input);
        if (!in) throw usage_error("cannot read " + input);
        json doc;
        try {
            doc = json::parse(in);
        } catch (const json::parse_error& e) {
            throw usage_error(std::string("malformed JSON: ") + e.what());
        }
        std::vector<IdentityInstance> instances;
        try {
            if (doc.is_array())
                for (const auto& j : doc) instances.push_back(identity_instance_from_json(j));
            else
                instances.push_back(identity_instance_from_json(doc));
        } catch (const std::invalid_argument& e) {
            throw usage_error(e.what());
        }
        if (instances.empty()) throw usage_error("no instances in " + input);
        double tol = g.tol_or(1e-7);
        r.params = {{"input", input}, {"instances", instances.size()}, {"tol", tol}, {"cutoff", cutoff}};
        auto label = [](int i) { return "instance " + std::to_string(i); };
        r.checks = sweep(int(instances.size()),
                         [&](int i) { return identity_checks(label(i), instances[i], cutoff, tol); }, label);
        return o;
    }

    if (source == "rapidity") {
        int count = g.count_or(50);
        double tol = g.tol_or(1e-7);
        r.params = {{"count", count}, {"tol", tol}, {"cutoff", cutoff}, {"orbit", orbit}};
        std::vector<json> instances(count);
        auto label = [](int i) { return "rapidity instance " + std::to_string(i); };
        r.checks = sweep(count, [&](int i) {
            Rng rng(g.seed, std::uint64_t(i));
            auto t = random_triple(rng);
            long a = rng.integer(-3, 3), b = rng.integer(-3, 3), c = rng.integer(-3, 3);
            auto inst = instance_from_rapidities(t, a, b, c);
            instances[i] = {{"triple", triple_json(t)}, {"instance", to_json(inst)}};
            auto out = identity_checks(label(i), inst, cutoff, tol);
            out.push_back(make_check(label(i) + " f-factor form", rhs_f_route(inst), rhs_closed_form(inst), tol));
            if (orbit && out[1].pass) {
                Check worst = make_check(label(i) + " orbit", 1.0, 1.0, tol);
                for (const auto& m : symmetry_orbit(inst).members) {
                    auto res = identity_residual(m.instance, cutoff);
                    auto ch = make_check(label(i) + " orbit worst member " + m.label, res.lhs, res.rhs, tol);
                    if (!(ch.rel_err <= worst.rel_err)) worst = ch;
                }
                out.push_back(worst);
            }
            return out;
        }, label);
        r.data = {{"instances", instances}};
        return o;
    }

    // dougall
    auto xv = parse_list(xs, "--x");
    if (xv.size() != 3) throw usage_error("--x needs three values");
    Triple3 x = {xv[0], xv[1], xv[2]};
    if (std::abs(xv[0] + xv[1] + xv[2] - 0.5) > 1e-12) throw usage_error("the balanced slice needs x1 + x2 + x3 = 1/2");
    for (double v : xv)
        if (std::abs(v - std::round(v)) < 1e-12) throw usage_error("x must not contain integers");
    int count = g.count_or(20);
    double slice_tol = g.tol_or(1e-9), draw_tol = g.tol_or(1e-7);
    r.params = {{"x", xv}, {"count", count}, {"slice_tol", slice_tol}, {"draw_tol", draw_tol}, {"cutoff", cutoff}};
    IdentityInstance slice{x, {1.0 - x[0], 1.0 - x[1], 1.0 - x[2]}, {0, 0, 0}};
    try {
        auto lhs = lhs_sum(slice, cutoff).value();
        r.checks.push_back(make_check("balanced slice closed product", lhs, dougall_ramanujan_value(x), slice_tol));
        r.checks.push_back(make_check("balanced slice general identity", lhs, rhs_closed_form(slice), slice_tol));
    } catch (const std::exception& e) {
        r.checks.push_back(failed_check("balanced slice", e.what()));
    }
    auto label = [](int i) { return "well-poised draw " + std::to_string(i); };
    std::vector<json> draws(count);
    auto more = sweep(count, [&](int i) {
        Rng rng(g.seed, std::uint64_t(i));
        // every fifth draw sits at a = 0 where the three-term closed form also applies
        double a = i % 5 == 0 ? 0.0 : rng.uniform(-0.3, 0.3);
        double x1 = rng.uniform(-0.4, 0.4), x2 = rng.uniform(-0.4, 0.4), x3 = rng.uniform(-0.4, 0.4);
        if (x1 + x2 + x3 > 0.9 + 1.5 * a) x3 -= 0.6;
        draws[i] = {{"a", a}, {"x", {x1, x2, x3}}};
        auto d = dougall_5h5_check(x1, x2, x3, a, cutoff);
        std::vector<Check> out = {make_check(label(i), d.lhs, d.rhs, draw_tol)};
        if (d.ramanujan_applies) out.push_back(make_check(label(i) + " three-term form", d.lhs, d.ramanujan_rhs, draw_tol));
        return out;
    }, label);
    r.checks.insert(r.checks.end(), more.begin(), more.end());
    r.data = {{"draws", draws}};
    return o;
}

// ---------------------------------------------------------------- limits

ExponentPair sample_pair(Rng& rng) {
    auto m = Modulus::from_k(rng.uniform(0.0, 0.8));
    double lp = rng.uniform(0.05, 0.45);
    double lq = lp + rng.uniform(0.1, 0.5);
    return exponents(rapidity_from_lambda(m, lp), rapidity_from_lambda(m, lq), WeightKind::W);
}

Output cmd_limits(const Globals& g, const std::string& sizes_s, const std::string& alphas_s,
                  const std::string& fractions_s, const std::string& orders_s, const std::string& csv_out,
                  const std::string& fits_out) {
    auto sizes = parse_list(sizes_s, "--sizes"), alphas = parse_list(alphas_s, "--alphas");
    auto fractions = parse_list(fractions_s, "--fractions"), orders = parse_list(orders_s, "--orders");
    if (sizes.empty() || alphas.empty() || fractions.empty() || orders.empty()) throw usage_error("empty grid");
    for (double N : sizes)
        if (N < 2 || N > 1 << 20 || N != std::floor(N)) throw usage_error("--sizes: integers in [2, 2^20]");
    for (double f : fractions)
        if (!(f >= 0.0 && f <= 0.5)) throw usage_error("--fractions: values in [0, 1/2]");
    for (double k : orders)
        if (k < 0 || k > 12 || k != std::floor(k)) throw usage_error("--orders: integers in [0, 12]");

    struct Point {
        int N;
        long n;
        double alpha;
        int order;
    };
    std::vector<Point> grid;
    for (double N : sizes)
        for (double f : fractions)
            for (double a : alphas)
                for (double k : orders) grid.push_back({int(N), std::lround(N * f), a, int(k)});

    Output o;
    auto& r = o.report;
    r.command = "limits";
    r.seed = g.seed;
    int count = g.count_or(3);
    double op_tol = g.tol_or(1e-3);
    r.params = {{"sizes", sizes}, {"alphas", alphas}, {"fractions", fractions}, {"orders", orders},
                {"count", count}, {"order_parameter_tol", op_tol}};

    auto results = parallel_map<AsymptoticCheck>(grid.size(), [&](std::size_t i) {
        const auto& p = grid[i];
        return asymptotic_check(p.N, p.alpha, p.n, p.order);
    });
    std::ostringstream grid_csv;
    grid_csv << std::setprecision(17) << "N,n,alpha,order,exact,asymptotic,error,bound,within\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& p = grid[i];
        const auto& c = results[i];
        grid_csv << p.N << ',' << p.n << ',' << p.alpha << ',' << p.order << ',' << c.exact << ',' << c.value << ','
                 << c.error << ',' << c.bound << ',' << (c.within() ? 1 : 0) << '\n';
    }
    for (double N : sizes) {
        // worst error / bound over the points at this N; passes at <= 1
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (grid[i].N != int(N)) continue;
            const auto& c = results[i];
            double ratio = c.error == 0.0 ? 0.0 : c.error / c.bound;
            worst = std::isnan(ratio) ? ratio : std::max(worst, ratio);
        }
        r.checks.push_back(scalar_check("asymptotic error over bound N=" + fmt(N), worst, 1.0));
    }

    // second-order finite-N correction: deviation ratio at N vs 2N near 4
    std::ostringstream fits_csv;
    fits_csv << std::setprecision(17) << "pair,N,n,deviation_N,deviation_2N,ratio\n";
    json fits = json::array();
    for (int i = 0; i < count; ++i) {
        Rng rng(g.seed, std::uint64_t(i));
        auto e = sample_pair(rng);
        for (double N : sizes) {
            int n1 = int(N);
            if (n1 < 64 || std::find(sizes.begin(), sizes.end(), 2.0 * N) == sizes.end()) continue;
            for (int den : {4, 2}) {
                double d1 = finite_n_correction_check(n1, e, n1 / den);
                double d2 = finite_n_correction_check(2 * n1, e, 2 * n1 / den);
                r.checks.push_back(make_check("correction ratio pair " + std::to_string(i) + " N=" +
                                                  std::to_string(n1) + " n=N/" + std::to_string(den),
                                              d1 / d2, 4.0, 0.2));
                fits_csv << i << ',' << n1 << ',' << n1 / den << ',' << d1 << ',' << d2 << ',' << d1 / d2 << '\n';
                fits.push_back({{"pair", i}, {"N", n1}, {"n", n1 / den}, {"ratio", d1 / d2}});
            }
        }
    }

    const int op_N = 1000;
    const double op_kp = 0.6;
    for (long n : {100L, 250L, 500L, 750L})
        r.checks.push_back(make_check("order parameter N=1000 n=" + std::to_string(n), order_parameter(op_N, n, op_kp),
                                      order_parameter_limit(2.0 * pi * double(n) / op_N, op_kp), op_tol));

    r.data = {{"grid_points", grid.size()}, {"fits", fits}};
    o.csv = grid_csv.str();
    auto write = [](const std::string& path, const std::string& text) {
        std::ofstream f(path);
        if (!f) throw usage_error("cannot write " + path);
        f << text;
    };
    if (!csv_out.empty()) write(csv_out, grid_csv.str());
    if (!fits_out.empty()) write(fits_out, fits_csv.str());
    return o;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Chiral Potts model numerics: weights, star-triangle checks, limits and the bilateral identity"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--tol", g.tol, "tolerance for the primary checks (default depends on the command)")
        ->check(CLI::PositiveNumber);
    app.add_option("--cutoff", g.cutoff, "truncation of bilateral sums")->check(CLI::Range(100L, 100000000L));
    app.add_option("--quad-levels", g.quad_levels, "double-exponential refinement levels")->check(CLI::Range(1, 12));
    app.add_option("--seed", g.seed, "seed of the configuration generator");
    app.add_option("--count", g.count, "number of random configurations")->check(CLI::Range(0, 1000000));
    app.add_option("--out", g.out, "write the report here instead of stdout");
    app.add_option("--format", g.format, "report format")->check(CLI::IsMember({"json", "csv"}));

    int N = 3;
    double k = 0.3, lp = 0.2, lq = 0.45, k_max = 0.8;
    std::string scope, source, input, xs = "0.1,0.15,0.25";
    bool orbit = false;
    std::string sizes = "32,64,128,256", alphas = "0.1,0.2,0.3,0.4,0.5,0.6,0.7,0.8,0.9",
                fractions = "0.125,0.25,0.375,0.5", orders = "0,1,2,3,4,5,6", csv_out, fits_out;

    auto* weights = app.add_subcommand("weights", "weight tables for one pair of rapidities");
    weights->add_option("--N", N, "number of states")->check(CLI::Range(2, 4096));
    weights->add_option("--k", k, "modulus, 0 <= k < 1");
    weights->add_option("--lambda-p", lp);
    weights->add_option("--lambda-q", lq);

    auto* ste = app.add_subcommand("ste", "star-triangle checks over seeded random triples");
    ste->add_option("scope", scope)->required()->check(
        CLI::IsMember({"finite", "regime1", "regime2", "regime3", "dual", "fourier"}));
    ste->add_option("--N", N, "number of states (finite, dual)")->check(CLI::Range(2, 64));
    ste->add_option("--k-max", k_max, "largest modulus drawn");

    auto* identity = app.add_subcommand("identity", "the bilateral hypergeometric identity");
    identity->add_option("source", source)->required()->check(CLI::IsMember({"file", "rapidity", "dougall"}));
    identity->add_option("--input", input, "JSON instance or array of instances (file)");
    identity->add_option("--x", xs, "x1,x2,x3 of the balanced slice (dougall)");
    identity->add_flag("--orbit", orbit, "also check every symmetry-orbit member (rapidity)");

    auto* limits = app.add_subcommand("limits", "asymptotic grid, correction order and order parameter");
    limits->add_option("--sizes", sizes, "comma-separated N");
    limits->add_option("--alphas", alphas, "comma-separated alpha");
    limits->add_option("--fractions", fractions, "comma-separated n / N");
    limits->add_option("--orders", orders, "comma-separated truncation orders");
    limits->add_option("--csv-out", csv_out, "write the grid CSV here");
    limits->add_option("--fits-out", fits_out, "write the correction-ratio CSV here");

    for (auto* sub : {weights, ste, identity, limits}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return exit_pass;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return exit_usage;
    }

    auto start = std::chrono::steady_clock::now();
    Output o;
    try {
        if (*weights)
            o = cmd_weights(g, N, k, lp, lq);
        else if (*ste)
            o = cmd_ste(g, scope, N, k_max);
        else if (*identity)
            o = cmd_identity(g, source, input, xs, orbit);
        else
            o = cmd_limits(g, sizes, alphas, fractions, orders, csv_out, fits_out);
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return exit_usage;
    }
    o.report.seed = g.seed;
    o.report.wall_time_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();

    std::string text = g.format == "json" ? to_json(o.report).dump(2) + "\n" : o.csv.value_or(checks_csv(o.report));
    if (g.out.empty()) {
        out << text;
    } else {
        std::ofstream f(g.out);
        if (!f) {
            err << "usage error: cannot write " << g.out << '\n';
            return exit_usage;
        }
        f << text;
    }
    for (const auto& c : o.report.checks)
        if (!c.pass) err << "FAIL " << c.name << " rel_err=" << fmt(c.rel_err) << " tol=" << fmt(c.tolerance) << '\n';
    return o.report.all_pass() ? exit_pass : exit_fail;
}

}  // namespace cpm::cli
