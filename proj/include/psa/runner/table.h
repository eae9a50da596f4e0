#ifndef PSA_RUNNER_TABLE_H
#define PSA_RUNNER_TABLE_H

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace psa::runner {

/// Literal written in place of undefined quantities.
inline constexpr const char *kSentinel = "NA";

struct NotAvailable {
    bool operator==(const NotAvailable &) const = default;
};

using Cell = std::variant<NotAvailable, double, std::int64_t>;

struct Table {
    std::string command;
    std::vector<std::string> columns;
    /// Leading columns that hold grid coordinates rather than computed values.
    std::size_t key_columns = 1;
    std::vector<std::vector<Cell>> rows;

    /// True when no row carries a computed number.
    bool sentinel_only() const;
};

/// Locale-independent scientific notation with `precision` digits after the point.
std::string format_number(double value, int precision);

/// `value` rounded to what format_number would print.
double rounded(double value, int precision);

struct Provenance {
    std::string config_hash;
    std::optional<std::uint64_t> seed;
};

/// One '#' comment line (hash and seed), a header row, then one line per row.
void write_csv(std::ostream &os, const Table &table, const Provenance &prov, int precision);

void write_json(std::ostream &os, const Table &table, const Provenance &prov, int precision);

}  // namespace psa::runner

#endif
