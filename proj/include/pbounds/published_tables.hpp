#pragma once

#include <optional>
#include <string>
#include <vector>

namespace pbounds {

/// Evaluates key tokens such as "5pi/18", "sqrt2/2", "pi/3-pi/36", "2*pi/3", "0.25".
/// Throws std::invalid_argument on malformed input.
double evaluate_expression(const std::string& text);

struct PublishedRow {
    std::vector<std::string> keys;
    std::vector<double> key_values;   ///< evaluated keys
    std::vector<std::string> printed; ///< values as printed
    std::vector<double> values;
};

struct PublishedTable {
    int id = 0;
    std::vector<std::string> key_names;
    std::vector<std::string> value_names;
    std::vector<PublishedRow> rows;

    /// Row whose evaluated keys match `keys` within 1e-12; nullptr if absent.
    [[nodiscard]] const PublishedRow* find(const std::vector<double>& keys) const;
    [[nodiscard]] std::size_t value_index(const std::string& name) const;
};

/// Parses the block format of data/published_tables.txt.
std::vector<PublishedTable> parse_published_tables(const std::string& text);

/// Raw text of the data file compiled into the library.
const char* published_tables_text();

/// Table by id from the embedded data; throws std::out_of_range if missing.
const PublishedTable& published_table(int id);

} // namespace pbounds
