#pragma once

#include "cayleyiso/rational.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace cayleyiso {

inline constexpr const char* kToolkitName = "cayley-iso";
inline constexpr const char* kToolkitVersion = "1.0.0";

using Json = nlohmann::ordered_json;

// provenance tags carried by every numeric report field
inline constexpr const char* kExact = "exact";
inline constexpr const char* kUpperBound = "upper bound";
inline constexpr const char* kLowerBound = "lower bound";
inline constexpr const char* kAnalytic = "analytic";
inline constexpr const char* kCited = "cited";

Json tagged(double value, const std::string& tag);
Json tagged(const Rational& r, const std::string& tag);

struct CheckResult {
    std::string id;           // stable identifier naming the verified formula
    std::string description;  // the inequality/identity in plain notation
    bool pass = false;
    std::string details;
};

Json to_json(const CheckResult& c);

/// Deterministic dump for cross-run comparison: volatile fields (timings,
/// thread count) removed, keys sorted.
std::string canonical_numerics(const Json& report);

void write_text_file(const std::string& path, const std::string& content);
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

std::string format_double(double v);

} // namespace cayleyiso
