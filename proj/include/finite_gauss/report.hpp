#pragma once

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace fg {

struct Check {
    std::string name;
    double residual = 0;
    double tol = 0;
    bool pass = false;
};

inline Check make_check(std::string name, double residual, double tol) {
    bool pass = std::isfinite(residual) && residual < tol;
    return Check{std::move(name), residual, tol, pass};
}

struct RunReport {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params;
    std::vector<Check> checks;
    std::vector<std::string> outputs;

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    int exit_code() const { return all_passed() ? 0 : 1; }
};

// 17 significant digits: doubles round-trip exactly.
inline std::string csv_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// JSON numbers are finite; infinities become the literal strings "inf"/"-inf".
inline nlohmann::ordered_json json_number(double v) {
    if (std::isfinite(v)) return v;
    return v > 0 ? "inf" : "-inf";
}

inline nlohmann::ordered_json to_json(const RunReport& r) {
    nlohmann::ordered_json j;
    j["command"] = r.command;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    j["params"] = params;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
        nlohmann::ordered_json cj;
        cj["name"] = c.name;
        cj["residual"] = json_number(c.residual);
        cj["tol"] = json_number(c.tol);
        cj["pass"] = c.pass;
        checks.push_back(cj);
    }
    j["checks"] = checks;
    j["outputs"] = r.outputs;
    return j;
}

inline void write_csv(const std::string& path, const std::string& header,
                      const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path, std::ios::binary);  // binary: byte-identical across runs
    if (!out) throw std::runtime_error("write_csv: cannot open " + path);
    out << header << "\n";
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ",";
            out << row[i];
        }
        out << "\n";
    }
}

}  // namespace fg
