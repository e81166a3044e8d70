#include "report.hpp"

#include <cmath>

namespace disjlab::cli {

ordered_json exact(const Rational& q) {
    return {{"value", to_string(q)}, {"mode", kExact}};
}

ordered_json exact(std::int64_t v) {
    return {{"value", v}, {"mode", kExact}};
}

ordered_json floating(double v) {
    ordered_json j;
    if (std::isfinite(v)) {
        j["value"] = v;
    } else {
        j["value"] = v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
    }
    j["mode"] = kFloat;
    return j;
}

ordered_json monte_carlo(double estimate, double lo, double hi) {
    return {{"value", estimate}, {"ci", {lo, hi}}, {"mode", kMonteCarlo}};
}

ordered_json rectangle_json(const Rectangle& r) {
    ordered_json rows = ordered_json::array();
    ordered_json cols = ordered_json::array();
    for (const auto& x : r.rows()) rows.push_back(x.str());
    for (const auto& y : r.cols()) cols.push_back(y.str());
    return {{"n", r.n()}, {"rows", rows}, {"cols", cols}};
}

std::string dump(const ordered_json& j) {
    return j.dump(2) + "\n";
}

}  // namespace disjlab::cli
