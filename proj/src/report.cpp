#include "cpmlab/report.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace cpm {

Check make_check(std::string name, cplx lhs, cplx rhs, double tolerance) {
    Check c{std::move(name), lhs, rhs, 0.0, tolerance, false};
    double scale = std::abs(rhs);
    c.rel_err = std::abs(lhs - rhs) / (scale > 0.0 ? scale : 1.0);
    c.pass = c.rel_err <= tolerance;  // false for NaN
    return c;
}

Check scalar_check(std::string name, double value, double tolerance) {
    Check c{std::move(name), value, 0.0, value, tolerance, false};
    c.pass = value <= tolerance;
    return c;
}

Check failed_check(std::string name, const std::string& message) {
    double nan = std::numeric_limits<double>::quiet_NaN();
    return {std::move(name) + " [" + message + "]", nan, nan, nan, 0.0, false};
}

bool RunReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

double RunReport::max_rel_err() const {
    double m = 0.0;
    for (const auto& c : checks) m = std::isnan(c.rel_err) ? c.rel_err : std::max(m, c.rel_err);
    return m;
}

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return {j[0].get<double>(), j[1].get<double>()};
    throw std::invalid_argument("expected a number or [re, im], got " + j.dump());
}

json to_json(const Check& c) {
    return {{"name", c.name}, {"lhs", to_json(c.lhs)}, {"rhs", to_json(c.rhs)},
            {"rel_err", c.rel_err}, {"tolerance", c.tolerance}, {"pass", c.pass}};
}

json to_json(const RunReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back(to_json(c));
    std::size_t failed = 0;
    for (const auto& c : r.checks) failed += !c.pass;
    json j = {{"schema_version", report_schema_version},
              {"command", r.command},
              {"params", r.params},
              {"checks", checks},
              {"summary", {{"checks", r.checks.size()}, {"failed", failed}, {"max_rel_err", r.max_rel_err()}}},
              {"seed", r.seed},
              {"wall_time_ms", r.wall_time_ms}};
    if (!r.data.is_null()) j["data"] = r.data;
    return j;
}

std::string checks_csv(const RunReport& r) {
    std::ostringstream os;
    os << std::setprecision(17);
    os << "name,lhs_re,lhs_im,rhs_re,rhs_im,rel_err,tolerance,pass\n";
    for (const auto& c : r.checks) {
        std::string name = c.name;
        for (auto& ch : name)
            if (ch == ',' || ch == '"') ch = ';';
        os << name << ',' << c.lhs.real() << ',' << c.lhs.imag() << ',' << c.rhs.real() << ',' << c.rhs.imag()
           << ',' << c.rel_err << ',' << c.tolerance << ',' << (c.pass ? 1 : 0) << '\n';
    }
    return os.str();
}

json to_json(const WeightTable& t) {
    json re = json::array(), im = json::array();
    for (auto v : t.ratios) {
        re.push_back(v.real());
        im.push_back(v.imag());
    }
    return {{"N", t.n_states}, {"re", re}, {"im", im},
            {"norm_re", t.normalization.real()}, {"norm_im", t.normalization.imag()}};
}

WeightTable weight_table_from_json(const json& j) {
    try {
        WeightTable t;
        t.n_states = j.at("N").get<int>();
        const auto& re = j.at("re");
        const auto& im = j.at("im");
        if (t.n_states < 1 || re.size() != std::size_t(t.n_states) || im.size() != re.size())
            throw std::invalid_argument("table length does not match N");
        for (std::size_t n = 0; n < re.size(); ++n) t.ratios.emplace_back(re[n].get<double>(), im[n].get<double>());
        t.normalization = {j.value("norm_re", 1.0), j.value("norm_im", 0.0)};
        return t;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed weight table: ") + e.what());
    }
}

json to_json(const IdentityInstance& inst) {
    json x = json::array(), y = json::array();
    for (int j = 0; j < 3; ++j) {
        x.push_back(to_json(inst.x[j]));
        y.push_back(to_json(inst.y[j]));
    }
    return {{"x", x}, {"y", y}, {"m", inst.m}};
}

IdentityInstance identity_instance_from_json(const json& j) {
    if (!j.is_object()) throw std::invalid_argument("identity instance must be a JSON object");
    IdentityInstance inst;
    try {
        const auto& x = j.at("x");
        const auto& y = j.at("y");
        if (!x.is_array() || !y.is_array() || x.size() != 3 || y.size() != 3)
            throw std::invalid_argument("x and y must have three entries");
        for (int k = 0; k < 3; ++k) {
            inst.x[k] = complex_from_json(x[k]);
            inst.y[k] = complex_from_json(y[k]);
        }
        if (j.contains("m")) {
            const auto& m = j.at("m");
            if (!m.is_array() || m.size() != 3) throw std::invalid_argument("m must have three entries");
            for (int k = 0; k < 3; ++k) {
                if (!m[k].is_number_integer()) throw std::invalid_argument("m entries must be integers");
                inst.m[k] = m[k].get<long>();
            }
        }
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed identity instance: ") + e.what());
    }
    return inst;
}

}  // namespace cpm
