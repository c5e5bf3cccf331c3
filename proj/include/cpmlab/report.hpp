#pragma once

#include "cpmlab/hyp_identity.hpp"
#include "cpmlab/weights.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace cpm {

using json = nlohmann::ordered_json;

inline constexpr int report_schema_version = 1;

struct Check {
    std::string name;
    cplx lhs, rhs;
    double rel_err = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

// rel_err = |lhs - rhs| / |rhs|; NaN never passes
Check make_check(std::string name, cplx lhs, cplx rhs, double tolerance);
// for quantities that are already relative errors or ratios to a bound: lhs = value, rhs = 0
Check scalar_check(std::string name, double value, double tolerance);
// a configuration that threw: recorded as a failure carrying the message
Check failed_check(std::string name, const std::string& message);

struct RunReport {
    std::string command;
    json params = json::object();
    std::vector<Check> checks;
    std::uint64_t seed = 0;
    std::int64_t wall_time_ms = 0;
    json data;  // command-specific payload (tables, fits); omitted when null

    bool all_pass() const;
    double max_rel_err() const;
};

json to_json(cplx z);  // [re, im]
cplx complex_from_json(const json& j);  // [re, im] or a plain number; throws std::invalid_argument

json to_json(const Check& c);
json to_json(const RunReport& r);
std::string checks_csv(const RunReport& r);

json to_json(const WeightTable& t);  // {N, re[], im[], norm_re, norm_im}
WeightTable weight_table_from_json(const json& j);

json to_json(const IdentityInstance& inst);  // {x, y, m}
IdentityInstance identity_instance_from_json(const json& j);

}  // namespace cpm
