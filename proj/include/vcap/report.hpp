#pragma once

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

namespace vcap {

using Cell = std::variant<std::monostate, long long, double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    /// Throws PreconditionError when the row width differs from the column count.
    void add_row(std::vector<Cell> row);
};

/// Shortest decimal that parses back to the same double; non-finite values as inf, -inf, nan.
std::string format_number(double x);
std::string format_cell(const Cell& c);

/// A CSV/JSON report: metadata lines, a main table and an optional footer table.
struct Report {
    std::vector<std::pair<std::string, std::string>> meta;  ///< tool, version, config_hash, ...
    Table table;
    std::optional<Table> footer;

    void set_meta(const std::string& key, const std::string& value);
    std::optional<std::string> meta_value(const std::string& key) const;

    /// `# key: value` lines, the table, then a blank line and the footer.
    std::string to_csv() const;
    nlohmann::ordered_json to_json() const;
    /// Inverse of to_json; throws ConfigError on a malformed document.
    static Report from_json(const nlohmann::ordered_json& doc);

    std::string render(const std::string& format) const;
};

}  // namespace vcap
