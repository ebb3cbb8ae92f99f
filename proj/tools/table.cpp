#include "table.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <set>

#include <json.hpp>

namespace wqed::cli {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::vector<std::string> Table::columns() const {
    std::vector<std::string> cols;
    std::set<std::string> seen;
    for (const auto& r : rows)
        for (const auto& [k, v] : r.values)
            if (seen.insert(k).second) cols.push_back(k);
    return cols;
}

void Table::write_csv(std::ostream& out, bool with_timestamp) const {
    out << "# schema=" << schema << "\n";
    for (const auto& [k, v] : header) out << "# " << k << "=" << v << "\n";
    if (with_timestamp) {
        const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        out << "# generated=" << buf << "\n";
    }
    const auto cols = columns();
    for (const auto& c : cols) out << c << ",";
    out << "status\n";
    for (const auto& r : rows) {
        std::map<std::string, double> m(r.values.begin(), r.values.end());
        for (const auto& c : cols) {
            auto it = m.find(c);
            out << (it == m.end() ? "" : format_number(it->second)) << ",";
        }
        std::string s = r.status;
        for (auto& ch : s)
            if (ch == ',' || ch == '\n') ch = ';';
        out << s << "\n";
    }
}

void Table::write_json(std::ostream& out) const {
    nlohmann::json j;
    j["schema"] = schema;
    for (const auto& [k, v] : header) j["header"][k] = v;
    j["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json o;
        for (const auto& [k, v] : r.values) o[k] = std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
        o["status"] = r.status;
        j["rows"].push_back(o);
    }
    out << j.dump(2) << "\n";
}

bool Table::all_failed() const {
    if (rows.empty()) return false;
    for (const auto& r : rows)
        if (r.status == "ok") return false;
    return true;
}

}  // namespace wqed::cli
