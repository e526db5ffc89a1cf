#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

// Tabular output shared by every CLI command. One float format everywhere
// (scientific, 9 significant digits) so identical runs produce byte-identical
// files and CSV/JSON renderings carry identical values.

namespace qgem {

/// Fixed float format: scientific notation, 9 significant digits.
/// Non-finite values render as "inf" / "-inf" / "nan".
inline std::string format_value(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0.0 ? "inf" : "-inf";
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.8e", v);
    return buf;
}

struct ReportColumn {
    std::string name;
    std::string unit; // "-" for dimensionless
};

/// Ordered numeric table with unit-annotated columns.
class ReportTable {
public:
    explicit ReportTable(std::vector<ReportColumn> columns) : columns_(std::move(columns)) {}

    void add_row(std::vector<double> row) {
        if (row.size() != columns_.size()) {
            throw std::logic_error("ReportTable: row width does not match column count");
        }
        rows_.push_back(std::move(row));
    }

    [[nodiscard]] const std::vector<ReportColumn>& columns() const { return columns_; }
    [[nodiscard]] const std::vector<std::vector<double>>& rows() const { return rows_; }

    /// CSV with a `name[unit]` header row, LF line endings.
    [[nodiscard]] std::string to_csv() const {
        std::string out;
        for (size_t c = 0; c < columns_.size(); ++c) {
            if (c) {
                out += ',';
            }
            out += columns_[c].name + "[" + columns_[c].unit + "]";
        }
        out += '\n';
        for (const auto& row : rows_) {
            for (size_t c = 0; c < row.size(); ++c) {
                if (c) {
                    out += ',';
                }
                out += format_value(row[c]);
            }
            out += '\n';
        }
        return out;
    }

    /// JSON document with the same formatted values as the CSV rendering.
    /// Non-finite entries become the strings "inf"/"-inf"/"nan".
    [[nodiscard]] std::string to_json() const {
        std::string out = "{\n  \"columns\": [";
        for (size_t c = 0; c < columns_.size(); ++c) {
            if (c) {
                out += ", ";
            }
            out += "{\"name\": \"" + columns_[c].name + "\", \"unit\": \"" + columns_[c].unit +
                   "\"}";
        }
        out += "],\n  \"rows\": [\n";
        for (size_t r = 0; r < rows_.size(); ++r) {
            out += "    [";
            for (size_t c = 0; c < rows_[r].size(); ++c) {
                if (c) {
                    out += ", ";
                }
                const double v = rows_[r][c];
                if (std::isfinite(v)) {
                    out += format_value(v);
                } else {
                    out += "\"" + format_value(v) + "\"";
                }
            }
            out += r + 1 < rows_.size() ? "],\n" : "]\n";
        }
        out += "  ]\n}\n";
        return out;
    }

private:
    std::vector<ReportColumn> columns_;
    std::vector<std::vector<double>> rows_;
};

} // namespace qgem
