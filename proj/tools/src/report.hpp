#pragma once

#include "disjlab/lp.hpp"
#include "disjlab/rational.hpp"
#include "disjlab/rectangles.hpp"

#include <json.hpp>

#include <chrono>
#include <string>

namespace disjlab::cli {

using nlohmann::ordered_json;

inline constexpr const char* kExact = "exact-rational";
inline constexpr const char* kFloat = "float-tol";
inline constexpr const char* kMonteCarlo = "monte-carlo-CI";

ordered_json exact(const Rational& q);
ordered_json exact(std::int64_t v);
ordered_json floating(double v);
ordered_json monte_carlo(double estimate, double lo, double hi);

ordered_json rectangle_json(const Rectangle& r);

std::string dump(const ordered_json& j);

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

}  // namespace disjlab::cli
