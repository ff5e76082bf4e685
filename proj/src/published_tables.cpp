#include "pbounds/published_tables.hpp"

#include <cctype>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace pbounds {

namespace {

// expr := term (('+' | '-') term)*
// term := unary (('*' | '/')? unary)*      juxtaposition multiplies: "5pi"
// unary := '-' unary | primary
// primary := number | "pi" | "sqrt" primary | '(' expr ')'
class ExpressionParser {
public:
    explicit ExpressionParser(std::string text) : s_(std::move(text)) {}

    double parse()
    {
        const double v = expr();
        skip();
        if (pos_ != s_.size()) {
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        }
        return v;
    }

private:
    std::string s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& why) const
    {
        throw std::invalid_argument("cannot evaluate '" + s_ + "': " + why);
    }

    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) {
            ++pos_;
        }
    }

    bool peek(char c)
    {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool starts_primary()
    {
        skip();
        if (pos_ >= s_.size()) {
            return false;
        }
        const char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(' || s_.compare(pos_, 2, "pi") == 0 ||
               s_.compare(pos_, 4, "sqrt") == 0;
    }

    double expr()
    {
        double v = term();
        while (true) {
            if (peek('+')) {
                ++pos_;
                v += term();
            } else if (peek('-')) {
                ++pos_;
                v -= term();
            } else {
                return v;
            }
        }
    }

    double term()
    {
        double v = unary();
        while (true) {
            if (peek('*')) {
                ++pos_;
                v *= unary();
            } else if (peek('/')) {
                ++pos_;
                const double d = unary();
                if (d == 0.0) {
                    fail("division by zero");
                }
                v /= d;
            } else if (starts_primary()) {
                v *= primary();
            } else {
                return v;
            }
        }
    }

    double unary()
    {
        if (peek('-')) {
            ++pos_;
            return -unary();
        }
        return primary();
    }

    double primary()
    {
        skip();
        if (pos_ >= s_.size()) {
            fail("unexpected end");
        }
        if (s_.compare(pos_, 2, "pi") == 0) {
            pos_ += 2;
            return std::numbers::pi;
        }
        if (s_.compare(pos_, 4, "sqrt") == 0) {
            pos_ += 4;
            const double v = primary();
            if (v < 0.0) {
                fail("sqrt of a negative number");
            }
            return std::sqrt(v);
        }
        if (s_[pos_] == '(') {
            ++pos_;
            const double v = expr();
            if (!peek(')')) {
                fail("missing ')'");
            }
            ++pos_;
            return v;
        }
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.' ||
                                    ((s_[pos_] == 'e' || s_[pos_] == 'E') && pos_ + 1 < s_.size() &&
                                     (std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])) || s_[pos_ + 1] == '-')))) {
            if (s_[pos_] == 'e' || s_[pos_] == 'E') {
                pos_ += 2;
            } else {
                ++pos_;
            }
        }
        if (start == pos_) {
            fail("expected a number, pi or sqrt");
        }
        try {
            std::size_t used = 0;
            const std::string num = s_.substr(start, pos_ - start);
            const double v = std::stod(num, &used);
            if (used != num.size()) {
                fail("bad number '" + num + "'");
            }
            return v;
        } catch (const std::logic_error&) {
            fail("bad number");
        }
    }
};

std::vector<std::string> split(const std::string& line)
{
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) {
        out.push_back(tok);
    }
    return out;
}

} // namespace

double evaluate_expression(const std::string& text) { return ExpressionParser(text).parse(); }

const PublishedRow* PublishedTable::find(const std::vector<double>& keys) const
{
    for (const auto& row : rows) {
        if (row.key_values.size() != keys.size()) {
            continue;
        }
        bool match = true;
        for (std::size_t k = 0; k < keys.size() && match; ++k) {
            match = std::abs(row.key_values[k] - keys[k]) <= 1e-12 * std::max(1.0, std::abs(keys[k]));
        }
        if (match) {
            return &row;
        }
    }
    return nullptr;
}

std::size_t PublishedTable::value_index(const std::string& name) const
{
    for (std::size_t k = 0; k < value_names.size(); ++k) {
        if (value_names[k] == name) {
            return k;
        }
    }
    throw std::out_of_range("table " + std::to_string(id) + " has no column '" + name + "'");
}

std::vector<PublishedTable> parse_published_tables(const std::string& text)
{
    std::vector<PublishedTable> tables;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    PublishedTable* current = nullptr;
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("published tables, line " + std::to_string(lineno) + ": " + why);
    };
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        const auto tok = split(line);
        if (tok.empty()) {
            continue;
        }
        if (tok[0] == "table") {
            if (current != nullptr || tok.size() != 2) {
                fail("malformed 'table' line");
            }
            tables.emplace_back();
            current = &tables.back();
            current->id = std::stoi(tok[1]);
        } else if (current == nullptr) {
            fail("'" + tok[0] + "' outside a table block");
        } else if (tok[0] == "keys") {
            current->key_names.assign(tok.begin() + 1, tok.end());
        } else if (tok[0] == "values") {
            current->value_names.assign(tok.begin() + 1, tok.end());
        } else if (tok[0] == "row") {
            const std::size_t nk = current->key_names.size(), nv = current->value_names.size();
            if (tok.size() != 1 + nk + nv) {
                fail("row has " + std::to_string(tok.size() - 1) + " fields, expected " + std::to_string(nk + nv));
            }
            PublishedRow row;
            for (std::size_t k = 0; k < nk; ++k) {
                row.keys.push_back(tok[1 + k]);
                row.key_values.push_back(evaluate_expression(tok[1 + k]));
            }
            for (std::size_t k = 0; k < nv; ++k) {
                row.printed.push_back(tok[1 + nk + k]);
                row.values.push_back(std::stod(tok[1 + nk + k]));
            }
            current->rows.push_back(std::move(row));
        } else if (tok[0] == "end") {
            current = nullptr;
        } else {
            fail("unknown directive '" + tok[0] + "'");
        }
    }
    if (current != nullptr) {
        fail("missing 'end'");
    }
    return tables;
}

const PublishedTable& published_table(int id)
{
    static const std::vector<PublishedTable> tables = parse_published_tables(published_tables_text());
    for (const auto& t : tables) {
        if (t.id == id) {
            return t;
        }
    }
    throw std::out_of_range("no published table " + std::to_string(id));
}

} // namespace pbounds
