#ifndef REGFLIP_IO_HPP
#define REGFLIP_IO_HPP

#include <cctype>
#include <charconv>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "point_config.hpp"
#include "symmetry.hpp"
#include "triangulation.hpp"

namespace regflip {

/** Syntax error with a 1-based source position. */
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

struct InputDocument {
    std::vector<Point> points;
    std::vector<Permutation> symmetry;
    bool has_symmetry = false;
};

namespace detail {

class Scanner {
public:
    explicit Scanner(std::string_view text, bool comments) : text_(text), comments_(comments) {}

    void skip_space() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (comments_ && c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n')
                    advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    bool at_end() {
        skip_space();
        return pos_ >= text_.size();
    }

    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    void expect(char c) {
        if (peek() != c)
            fail(std::string("expected '") + c + "'" + found());
        advance();
    }

    bool accept(char c) {
        if (peek() != c)
            return false;
        advance();
        return true;
    }

    std::string identifier() {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            advance();
        if (start == pos_)
            fail("expected a key" + found());
        return std::string(text_.substr(start, pos_ - start));
    }

    long long integer() {
        skip_space();
        std::size_t start = pos_;
        std::size_t line = line_, col = col_;
        if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+'))
            advance();
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            advance();
        std::string_view tok = text_.substr(start, pos_ - start);
        if (!tok.empty() && tok.front() == '+')
            tok.remove_prefix(1);
        long long value = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
            if (ec == std::errc::result_out_of_range)
                throw ParseError("integer out of range", line, col);
            throw ParseError("expected an integer", line, col);
        }
        return value;
    }

    /// `[[a,b,...],[...],...]`
    std::vector<std::vector<long long>> nested_list() {
        std::vector<std::vector<long long>> out;
        expect('[');
        if (accept(']'))
            return out;
        do {
            std::vector<long long> row;
            expect('[');
            if (!accept(']')) {
                do
                    row.push_back(integer());
                while (accept(','));
                expect(']');
            }
            out.push_back(std::move(row));
        } while (accept(','));
        expect(']');
        return out;
    }

    [[noreturn]] void fail(const std::string& what) {
        skip_space();
        throw ParseError(what, line_, col_);
    }

    std::string found() {
        skip_space();
        if (pos_ >= text_.size())
            return ", found end of input";
        return std::string(", found '") + text_[pos_] + "'";
    }

private:
    void advance() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string_view text_;
    bool comments_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

} // namespace detail

/**
 * Parses the input grammar:
 *
 *     # comment
 *     points: [[x,y,...],...]
 *     symmetry: [[p0,...,p(n-1)],...]    # optional
 *
 * Only syntax is checked here; geometry and permutations are validated when
 * the configuration and group are built.
 */
inline InputDocument parse_input(std::string_view text) {
    detail::Scanner sc(text, true);
    InputDocument doc;
    bool has_points = false;
    while (!sc.at_end()) {
        std::string key = sc.identifier();
        if (key != "points" && key != "symmetry")
            sc.fail("unknown key '" + key + "'");
        sc.expect(':');
        auto rows = sc.nested_list();
        if (key == "points") {
            if (has_points)
                sc.fail("duplicate key 'points'");
            has_points = true;
            doc.points = std::move(rows);
        } else {
            if (doc.has_symmetry)
                sc.fail("duplicate key 'symmetry'");
            doc.has_symmetry = true;
            for (auto& r : rows)
                doc.symmetry.emplace_back(r.begin(), r.end());
        }
    }
    if (!has_points)
        sc.fail("missing required key 'points'");
    return doc;
}

/// Parses the canonical text form `{{i,j,...},...}`.
inline Triangulation parse_triangulation(std::string_view text) {
    detail::Scanner sc(text, true);
    std::vector<Simplex> cells;
    sc.expect('{');
    if (!sc.accept('}')) {
        do {
            sc.expect('{');
            IndexSet s;
            if (!sc.accept('}')) {
                do {
                    long long i = sc.integer();
                    if (i < 0 || i >= static_cast<long long>(max_points))
                        sc.fail("point index " + std::to_string(i) + " out of range");
                    if (s.contains(static_cast<int>(i)))
                        sc.fail("repeated index " + std::to_string(i) + " in simplex");
                    s.insert(static_cast<int>(i));
                } while (sc.accept(','));
                sc.expect('}');
            }
            cells.push_back(s);
        } while (sc.accept(','));
        sc.expect('}');
    }
    if (!sc.at_end())
        sc.fail("trailing input after triangulation");
    return Triangulation(std::move(cells));
}

} // namespace regflip

#endif // REGFLIP_IO_HPP
