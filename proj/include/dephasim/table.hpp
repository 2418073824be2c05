// table.hpp — Column tables with metadata, emitted as CSV or JSON with fixed 17-digit formatting

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <json.hpp>

#include "dephasim/errors.hpp"

namespace dephasim {

class OutputError : public Error {
public:
    using Error::Error;
};

using Cell = std::variant<double, std::int64_t, std::string, bool>;

inline std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::string format_cell(const Cell& c) {
    struct Visitor {
        std::string operator()(double x) const { return format_double(x); }
        std::string operator()(std::int64_t x) const { return std::to_string(x); }
        std::string operator()(const std::string& s) const { return s; }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
    };
    return std::visit(Visitor{}, c);
}

enum class OutputFormat { Csv, Json };

class OutputTable {
public:
    OutputTable() = default;
    explicit OutputTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    const std::vector<std::string>& columns() const noexcept { return columns_; }
    const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }
    const std::vector<std::pair<std::string, std::string>>& meta() const noexcept { return meta_; }
    const std::vector<std::string>& warnings() const noexcept { return warnings_; }

    void add_row(std::vector<Cell> row) {
        if (row.size() != columns_.size()) {
            std::ostringstream msg;
            msg << "table row has " << row.size() << " cells, expected " << columns_.size();
            throw PreconditionError(msg.str());
        }
        rows_.push_back(std::move(row));
    }

    void set_meta(std::string key, std::string value) { meta_.emplace_back(std::move(key), std::move(value)); }
    void add_warning(std::string w) { warnings_.push_back(std::move(w)); }

    std::string to_csv() const {
        std::ostringstream out;
        for (const auto& [k, v] : meta_) out << "# " << k << " = " << v << '\n';
        for (const auto& w : warnings_) out << "# warning: " << w << '\n';
        for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
        out << '\n';
        for (const auto& row : rows_) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(format_cell(row[i]));
            out << '\n';
        }
        return out.str();
    }

    std::string to_json() const {
        using nlohmann::ordered_json;
        ordered_json meta = ordered_json::object();
        for (const auto& [k, v] : meta_) meta[k] = v;
        meta["warnings"] = warnings_;
        ordered_json rows = ordered_json::array();
        for (const auto& row : rows_) {
            ordered_json obj = ordered_json::object();
            for (std::size_t i = 0; i < row.size(); ++i) obj[columns_[i]] = json_cell(row[i]);
            rows.push_back(std::move(obj));
        }
        ordered_json doc = ordered_json::object();
        doc["meta"] = std::move(meta);
        doc["columns"] = columns_;
        doc["rows"] = std::move(rows);
        return doc.dump(2) + "\n";
    }

    std::string render(OutputFormat f) const { return f == OutputFormat::Csv ? to_csv() : to_json(); }

private:
    static std::string csv_field(const std::string& s) {
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) {
            if (c == '"') q += '"';
            q += c;
        }
        return q + "\"";
    }

    // Non-finite doubles have no JSON number form and become strings.
    static nlohmann::ordered_json json_cell(const Cell& c) {
        if (const double* d = std::get_if<double>(&c)) {
            if (!std::isfinite(*d)) return format_double(*d);
            return *d;
        }
        if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
        if (const auto* b = std::get_if<bool>(&c)) return *b;
        return std::get<std::string>(c);
    }

    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
    std::vector<std::pair<std::string, std::string>> meta_;
    std::vector<std::string> warnings_;
};

/// Writes to `path`, or to standard output for "-". Throws OutputError on failure.
inline void emit(const OutputTable& table, OutputFormat format, const std::string& path) {
    const std::string text = table.render(format);
    if (path == "-") {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) throw OutputError("failed writing to standard output");
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw OutputError("cannot open output file '" + path + "'");
    file << text;
    file.close();
    if (!file) throw OutputError("failed writing output file '" + path + "'");
}

} // namespace dephasim
