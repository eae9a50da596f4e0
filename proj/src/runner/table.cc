#include "psa/runner/table.h"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace psa::runner {

bool Table::sentinel_only() const {
    for (const auto &row : rows) {
        for (std::size_t c = key_columns; c < row.size(); ++c) {
            if (!std::holds_alternative<NotAvailable>(row[c])) {
                return false;
            }
        }
    }
    return true;
}

std::string format_number(double value, int precision) {
    if (!std::isfinite(value)) {
        return kSentinel;
    }
    if (value == 0.0) {
        value = 0.0;  // drop the sign of -0
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::scientific, precision);
    if (ec != std::errc()) {
        throw std::runtime_error("number formatting failed");
    }
    return std::string(buf, ptr);
}

double rounded(double value, int precision) {
    std::string s = format_number(value, precision);
    double out = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), out);
    return out;
}

namespace {

std::string cell_text(const Cell &cell, int precision) {
    if (const double *d = std::get_if<double>(&cell)) {
        return format_number(*d, precision);
    }
    if (const std::int64_t *i = std::get_if<std::int64_t>(&cell)) {
        return std::to_string(*i);
    }
    return kSentinel;
}

nlohmann::json cell_json(const Cell &cell, int precision) {
    if (const double *d = std::get_if<double>(&cell)) {
        if (!std::isfinite(*d)) {
            return kSentinel;
        }
        return rounded(*d, precision);
    }
    if (const std::int64_t *i = std::get_if<std::int64_t>(&cell)) {
        return *i;
    }
    return kSentinel;
}

}  // namespace

void write_csv(std::ostream &os, const Table &table, const Provenance &prov, int precision) {
    os << "# command=" << table.command << " config_hash=" << prov.config_hash
       << " seed=" << (prov.seed ? std::to_string(*prov.seed) : std::string("none")) << '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        os << (c ? "," : "") << table.columns[c];
    }
    os << '\n';
    for (const auto &row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            os << (c ? "," : "") << cell_text(row[c], precision);
        }
        os << '\n';
    }
}

void write_json(std::ostream &os, const Table &table, const Provenance &prov, int precision) {
    nlohmann::json doc;
    doc["command"] = table.command;
    doc["config_hash"] = prov.config_hash;
    doc["seed"] = prov.seed ? nlohmann::json(*prov.seed) : nlohmann::json(nullptr);
    doc["columns"] = table.columns;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto &row : table.rows) {
        nlohmann::json r = nlohmann::json::array();
        for (const Cell &cell : row) {
            r.push_back(cell_json(cell, precision));
        }
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    os << doc.dump(2) << '\n';
}

}  // namespace psa::runner
