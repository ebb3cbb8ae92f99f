#pragma once

#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace wqed::cli {

struct Row {
    std::vector<std::pair<std::string, double>> values;
    std::string status = "ok";
    void add(const std::string& k, double v) { values.emplace_back(k, v); }
};

struct Table {
    std::string schema;  // e.g. "protocol3/1"
    std::vector<std::pair<std::string, std::string>> header;
    std::vector<Row> rows;

    std::vector<std::string> columns() const;
    void write_csv(std::ostream& out, bool with_timestamp = true) const;
    void write_json(std::ostream& out) const;
    bool all_failed() const;
};

std::string format_number(double v);

}  // namespace wqed::cli
