#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace fastarma::bench {

using Cell = std::variant<std::string, double, long long, bool>;

/// Rectangular result set; the common currency of every experiment.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
};

/// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite.
std::string format_number(double v);

/// RFC 4180 field: quoted when it contains a comma, quote, CR or LF, with
/// embedded quotes doubled.
std::string csv_field(const std::string& s);

void write_csv(std::ostream& os, const Table& table);

/// Array of objects keyed by column name. Non-finite numbers become null.
nlohmann::json to_json(const Table& table);

}  // namespace fastarma::bench
