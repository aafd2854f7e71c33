#include "vcap/report.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "vcap/errors.hpp"

namespace vcap {

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size()) {
        throw PreconditionError("Table::add_row: expected " + std::to_string(columns.size()) + " cells, got " +
                                std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

namespace {

std::string quote_csv(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void write_table(std::ostringstream& os, const Table& t) {
    for (std::size_t k = 0; k < t.columns.size(); ++k) os << (k ? "," : "") << quote_csv(t.columns[k]);
    os << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t k = 0; k < row.size(); ++k) os << (k ? "," : "") << quote_csv(format_cell(row[k]));
        os << '\n';
    }
}

nlohmann::ordered_json cell_to_json(const Cell& c) {
    return std::visit(
        [](const auto& v) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) return format_number(v);
                return v;
            } else {
                return v;
            }
        },
        c);
}

Cell cell_from_json(const nlohmann::ordered_json& j) {
    if (j.is_null()) return std::monostate{};
    if (j.is_number_integer()) return j.get<long long>();
    if (j.is_number_float()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
        return s;
    }
    throw ConfigError("report: unsupported cell value " + j.dump());
}

nlohmann::ordered_json table_to_json(const Table& t) {
    nlohmann::ordered_json j;
    j["columns"] = t.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        auto r = nlohmann::ordered_json::array();
        for (const auto& c : row) r.push_back(cell_to_json(c));
        rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
    return j;
}

Table table_from_json(const nlohmann::ordered_json& j) {
    if (!j.is_object() || !j.contains("columns") || !j.contains("rows")) {
        throw ConfigError("report: table needs `columns` and `rows`");
    }
    Table t;
    t.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& r : j.at("rows")) {
        if (!r.is_array()) throw ConfigError("report: table row must be an array");
        std::vector<Cell> row;
        for (const auto& c : r) row.push_back(cell_from_json(c));
        if (row.size() != t.columns.size()) throw ConfigError("report: row width does not match columns");
        t.rows.push_back(std::move(row));
    }
    return t;
}

}  // namespace

std::string format_cell(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return "";
            } else if constexpr (std::is_same_v<T, long long>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, double>) {
                return format_number(v);
            } else {
                return v;
            }
        },
        c);
}

void Report::set_meta(const std::string& key, const std::string& value) {
    for (auto& [k, v] : meta) {
        if (k == key) {
            v = value;
            return;
        }
    }
    meta.emplace_back(key, value);
}

std::optional<std::string> Report::meta_value(const std::string& key) const {
    for (const auto& [k, v] : meta) {
        if (k == key) return v;
    }
    return std::nullopt;
}

std::string Report::to_csv() const {
    std::ostringstream os;
    for (const auto& [k, v] : meta) os << "# " << k << ": " << v << '\n';
    write_table(os, table);
    if (footer) {
        os << '\n';
        write_table(os, *footer);
    }
    return os.str();
}

nlohmann::ordered_json Report::to_json() const {
    nlohmann::ordered_json j;
    nlohmann::ordered_json m = nlohmann::ordered_json::object();
    for (const auto& [k, v] : meta) m[k] = v;
    j["meta"] = std::move(m);
    j["table"] = table_to_json(table);
    j["footer"] = footer ? table_to_json(*footer) : nlohmann::ordered_json(nullptr);
    return j;
}

Report Report::from_json(const nlohmann::ordered_json& doc) {
    if (!doc.is_object() || !doc.contains("meta") || !doc.contains("table")) {
        throw ConfigError("report: document needs `meta` and `table`");
    }
    Report r;
    for (const auto& [k, v] : doc.at("meta").items()) {
        if (!v.is_string()) throw ConfigError("report: meta value for `" + k + "` must be a string");
        r.meta.emplace_back(k, v.get<std::string>());
    }
    r.table = table_from_json(doc.at("table"));
    if (doc.contains("footer") && !doc.at("footer").is_null()) r.footer = table_from_json(doc.at("footer"));
    return r;
}

std::string Report::render(const std::string& format) const {
    if (format == "json") return to_json().dump(2) + "\n";
    if (format == "csv") return to_csv();
    throw ConfigError("unknown report format `" + format + "` (expected csv or json)");
}

}  // namespace vcap
