#include "cayleyiso/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace cayleyiso {

Json tagged(double value, const std::string& tag) {
    Json j;
    if (std::isinf(value)) j["value"] = value > 0 ? "inf" : "-inf";
    else j["value"] = value;
    j["tag"] = tag;
    return j;
}

Json tagged(const Rational& r, const std::string& tag) {
    Json j;
    j["num"] = r.num();
    j["den"] = r.den();
    j["approx"] = r.to_double();
    j["tag"] = tag;
    return j;
}

Json to_json(const CheckResult& c) {
    Json j;
    j["id"] = c.id;
    j["description"] = c.description;
    j["pass"] = c.pass;
    if (!c.details.empty()) j["details"] = c.details;
    return j;
}

std::string canonical_numerics(const Json& report) {
    nlohmann::json sorted = nlohmann::json::parse(report.dump());
    sorted.erase("timings_ms");
    sorted.erase("threads");
    return sorted.dump();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::string s;
    for (size_t i = 0; i < header.size(); ++i)
        s += header[i] + (i + 1 < header.size() ? "," : "\n");
    for (const auto& row : rows)
        for (size_t i = 0; i < row.size(); ++i)
            s += row[i] + (i + 1 < row.size() ? "," : "\n");
    write_text_file(path, s);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

} // namespace cayleyiso
