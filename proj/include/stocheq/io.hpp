#ifndef STOCHEQ_IO_HPP
#define STOCHEQ_IO_HPP

// Text and JSON input/output for matrices, graphs and results.
//
// Input formats
//   matrix   one row per line, entries separated by whitespace and/or commas;
//            each entry an integer ("3"), decimal ("0.25", "1e-3") or
//            rational ("1/3") literal
//   graph    header "nodes N", then edge lines "i j [multiplicity]" with
//            1-based nodes; or, without the header, adjacency rows of
//            nonnegative integers
//   json     {"kind": "matrix", "n": 2, "rows": [["1/3", "2/3"], [...]]}
//            {"kind": "graph", "n": 3, "edges": [[1, 2], [2, 3, 2]]}
//            {"kind": "graph", "n": 3, "rows": [[0, 1, 0], ...]}
//            Entries may be JSON numbers or literal strings.
// Blank lines and lines starting with '#' are ignored in the text formats.
//
// Mode inference: any decimal literal selects float mode, otherwise exact.
// An explicit mode overrides this; decimals are then read exactly.

#include <stocheq/closed_form.hpp>
#include <stocheq/equilibrium.hpp>
#include <stocheq/graph_walk.hpp>
#include <stocheq/oracle.hpp>

#include <json.hpp>

#include <cctype>
#include <charconv>
#include <cstdio>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace stocheq::io {

using json = nlohmann::json;

/// Input error with a 1-based position. line/column are 0 when unknown.
struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : std::runtime_error(locate(what, line, column)), line(line), column(column) {}
    std::size_t line;
    std::size_t column;

private:
    static std::string locate(const std::string& what, std::size_t line, std::size_t column) {
        if (line == 0) return what;
        std::string where = "line " + std::to_string(line);
        if (column) where += ", column " + std::to_string(column);
        return where + ": " + what;
    }
};

struct Literal {
    Rational value;
    /// Written with a decimal point or exponent.
    bool decimal = false;
};

namespace detail {

inline bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

// Decimal digits to BigInt. Leading zeros are stripped: boost reads a
// leading 0 as an octal prefix.
inline BigInt decimal_int(std::string_view digits) {
    const auto nz = digits.find_first_not_of('0');
    return nz == std::string_view::npos ? BigInt(0) : BigInt(std::string(digits.substr(nz)));
}

inline BigInt pow10(long e) {
    BigInt r = 1;
    for (long k = 0; k < e; ++k) r *= 10;
    return r;
}

}  // namespace detail

/// Parses an integer, decimal or rational literal. Decimals are converted
/// exactly (0.1 is 1/10). Returns nullopt when malformed.
inline std::optional<Literal> parse_literal(std::string_view text) {
    if (text.empty()) return std::nullopt;
    bool negative = false;
    std::string_view s = text;
    if (s.front() == '+' || s.front() == '-') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    Literal lit;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        const auto num = s.substr(0, slash), den = s.substr(slash + 1);
        if (!detail::all_digits(num) || !detail::all_digits(den)) return std::nullopt;
        const BigInt d = detail::decimal_int(den);
        if (d == 0) return std::nullopt;
        lit.value = Rational(detail::decimal_int(num), d);
    } else {
        std::string_view mantissa = s, exponent;
        if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
            mantissa = s.substr(0, e);
            exponent = s.substr(e + 1);
            lit.decimal = true;
        }
        std::string_view whole = mantissa, frac;
        if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
            whole = mantissa.substr(0, dot);
            frac = mantissa.substr(dot + 1);
            lit.decimal = true;
        }
        if (whole.empty() && frac.empty()) return std::nullopt;
        if (!whole.empty() && !detail::all_digits(whole)) return std::nullopt;
        if (!frac.empty() && !detail::all_digits(frac)) return std::nullopt;
        long exp = 0;
        if (lit.decimal && mantissa.size() != s.size()) {
            std::string_view ev = exponent;
            bool eneg = false;
            if (!ev.empty() && (ev.front() == '+' || ev.front() == '-')) {
                eneg = ev.front() == '-';
                ev.remove_prefix(1);
            }
            if (!detail::all_digits(ev) || ev.size() > 6) return std::nullopt;
            std::from_chars(ev.data(), ev.data() + ev.size(), exp);
            if (eneg) exp = -exp;
        }
        const BigInt digits = detail::decimal_int(std::string(whole) + std::string(frac));
        exp -= static_cast<long>(frac.size());
        lit.value = exp >= 0 ? Rational(digits * detail::pow10(exp)) : Rational(digits, detail::pow10(-exp));
    }
    if (negative) lit.value = -lit.value;
    return lit;
}

enum class InputFormat { Auto, Matrix, Graph, Json };
enum class InputKind { Matrix, Graph };

struct InputDocument {
    InputKind kind;
    Mode source_mode;
    std::variant<StochasticMatrix<Rational>, StochasticMatrix<double>, Graph> payload;

    const Graph& graph() const { return std::get<Graph>(payload); }
    template <Scalar T>
    const StochasticMatrix<T>& matrix() const {
        return std::get<StochasticMatrix<T>>(payload);
    }
};

namespace detail {

struct Token {
    std::string text;
    std::size_t column;  // 1-based
};

inline std::vector<Token> tokenize(const std::string& line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (std::isspace(static_cast<unsigned char>(line[i])) || line[i] == ',')) ++i;
        if (i >= line.size()) break;
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) && line[i] != ',') ++i;
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

struct Line {
    std::size_t number;
    std::vector<Token> tokens;
};

inline std::vector<Line> content_lines(std::string_view text) {
    std::vector<Line> out;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        out.push_back({number, tokenize(line)});
    }
    return out;
}

struct Cell {
    Literal lit;
    std::size_t line, column;
};

template <Scalar T>
StochasticMatrix<T> build_matrix(const std::vector<std::vector<Cell>>& cells) {
    const std::size_t n = cells.size();
    Matrix<T> m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Cell& c = cells[i][j];
            if (c.lit.value < 0) throw ParseError("negative entry " + format_scalar(c.lit.value), c.line, c.column);
            if constexpr (is_exact_v<T>) {
                m(i, j) = c.lit.value;
            } else {
                m(i, j) = static_cast<double>(c.lit.value);
            }
        }
    try {
        return StochasticMatrix<T>(std::move(m));
    } catch (const NotStochastic& e) {
        const std::size_t line = e.row < n && !cells[e.row].empty() ? cells[e.row].front().line : 0;
        throw ParseError(e.what(), line);
    }
}

inline InputDocument matrix_document(const std::vector<std::vector<Cell>>& cells, std::optional<Mode> mode) {
    const std::size_t n = cells.size();
    if (n == 0) throw ParseError("empty matrix");
    bool any_decimal = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (cells[i].size() != n) {
            const std::size_t line = cells[i].empty() ? 0 : cells[i].front().line;
            throw ParseError("matrix is not square: row " + std::to_string(i + 1) + " has " +
                                 std::to_string(cells[i].size()) + " entries, expected " + std::to_string(n),
                             line);
        }
        for (const Cell& c : cells[i]) any_decimal |= c.lit.decimal;
    }
    const Mode m = mode.value_or(any_decimal ? Mode::Float : Mode::Exact);
    if (m == Mode::Exact) return {InputKind::Matrix, m, build_matrix<Rational>(cells)};
    return {InputKind::Matrix, m, build_matrix<double>(cells)};
}

inline Cell parse_cell(const Token& t, std::size_t line) {
    auto lit = parse_literal(t.text);
    if (!lit) throw ParseError("malformed literal '" + t.text + "'", line, t.column);
    return {*lit, line, t.column};
}

inline BigInt parse_count(const std::string& text, std::size_t line, std::size_t column, const char* what) {
    if (!all_digits(text)) throw ParseError(std::string("malformed ") + what + " '" + text + "'", line, column);
    return decimal_int(text);
}

inline std::size_t parse_node(const Token& t, std::size_t line, std::size_t n) {
    const BigInt v = parse_count(t.text, line, t.column, "node index");
    if (v < 1 || v > n)
        throw ParseError("node index " + t.text + " out of range 1.." + std::to_string(n), line, t.column);
    return static_cast<std::size_t>(v) - 1;
}

inline InputDocument graph_from_lines(const std::vector<Line>& lines) {
    if (lines.empty()) throw ParseError("empty graph");
    const auto& head = lines.front();
    if (head.tokens.front().text == "nodes") {
        if (head.tokens.size() != 2) throw ParseError("expected 'nodes N'", head.number);
        const BigInt n = parse_count(head.tokens[1].text, head.number, head.tokens[1].column, "node count");
        if (n < 1) throw ParseError("graph needs at least one node", head.number, head.tokens[1].column);
        Graph g = Graph::empty(static_cast<std::size_t>(n));
        for (std::size_t k = 1; k < lines.size(); ++k) {
            const Line& l = lines[k];
            if (l.tokens.size() < 2 || l.tokens.size() > 3)
                throw ParseError("expected 'i j [multiplicity]'", l.number, l.tokens.front().column);
            const std::size_t i = parse_node(l.tokens[0], l.number, g.size());
            const std::size_t j = parse_node(l.tokens[1], l.number, g.size());
            BigInt mult = 1;
            if (l.tokens.size() == 3) mult = parse_count(l.tokens[2].text, l.number, l.tokens[2].column, "multiplicity");
            g.add_edge(i, j, mult);
        }
        return {InputKind::Graph, Mode::Exact, std::move(g)};
    }
    const std::size_t n = lines.size();
    Matrix<BigInt> a(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Line& l = lines[i];
        if (l.tokens.size() != n)
            throw ParseError("adjacency matrix is not square: row " + std::to_string(i + 1) + " has " +
                                 std::to_string(l.tokens.size()) + " entries, expected " + std::to_string(n),
                             l.number);
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = parse_count(l.tokens[j].text, l.number, l.tokens[j].column, "link count");
    }
    return {InputKind::Graph, Mode::Exact, Graph(std::move(a))};
}

inline Literal json_literal(const json& v, std::size_t row, std::size_t col) {
    const std::string where = "rows[" + std::to_string(row) + "][" + std::to_string(col) + "]";
    if (v.is_string()) {
        if (auto lit = parse_literal(v.get<std::string>())) return *lit;
        throw ParseError("malformed literal at " + where);
    }
    if (v.is_number_integer()) return {Rational(v.get<long long>()), false};
    if (v.is_number_float()) {
        // The shortest round-trip text of the double is the intended literal.
        const std::string text = v.dump();
        if (auto lit = parse_literal(text)) return {lit->value, true};
    }
    throw ParseError("expected a number or literal string at " + where);
}

inline InputDocument json_document(const json& doc, std::optional<Mode> mode) {
    if (!doc.is_object() || !doc.contains("kind")) throw ParseError("JSON input needs an object with a 'kind' field");
    const std::string kind = doc.at("kind").get<std::string>();
    const bool has_n = doc.contains("n");
    const std::size_t n = has_n ? doc.at("n").get<std::size_t>() : 0;
    if (kind == "matrix") {
        const json& rows = doc.at("rows");
        std::vector<std::vector<Cell>> cells;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            cells.emplace_back();
            for (std::size_t j = 0; j < rows[i].size(); ++j) cells.back().push_back({json_literal(rows[i][j], i, j), 0, 0});
        }
        if (has_n && n != cells.size()) throw ParseError("'n' does not match the number of rows");
        return matrix_document(cells, mode);
    }
    if (kind == "graph") {
        if (mode == Mode::Float) throw ParseError("graph input is integer data; float mode does not apply");
        if (doc.contains("rows")) {
            const json& rows = doc.at("rows");
            Matrix<BigInt> a(rows.size());
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i].size() != rows.size()) throw ParseError("adjacency matrix is not square");
                for (std::size_t j = 0; j < rows.size(); ++j) a(i, j) = BigInt(rows[i][j].get<long long>());
            }
            if (has_n && n != rows.size()) throw ParseError("'n' does not match the number of rows");
            return {InputKind::Graph, Mode::Exact, Graph(std::move(a))};
        }
        if (!has_n) throw ParseError("graph edge list needs 'n'");
        if (n == 0) throw ParseError("graph needs at least one node");
        Graph g = Graph::empty(n);
        for (const json& e : doc.at("edges")) {
            if (e.size() < 2 || e.size() > 3) throw ParseError("edge must be [i, j] or [i, j, multiplicity]");
            const auto i = e[0].get<long long>(), j = e[1].get<long long>();
            if (i < 1 || j < 1 || static_cast<std::size_t>(i) > n || static_cast<std::size_t>(j) > n)
                throw ParseError("edge endpoint out of range 1.." + std::to_string(n));
            const long long mult = e.size() == 3 ? e[2].get<long long>() : 1;
            if (mult < 0) throw ParseError("negative multiplicity");
            g.add_edge(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1), mult);
        }
        return {InputKind::Graph, Mode::Exact, std::move(g)};
    }
    throw ParseError("unknown kind '" + kind + "'");
}

}  // namespace detail

/// Parses a document from text. `mode` forces the scalar mode of matrix
/// input; graphs are always exact.
inline InputDocument parse_input(std::string_view text, InputFormat format = InputFormat::Auto,
                                 std::optional<Mode> mode = std::nullopt) {
    if (format == InputFormat::Auto) {
        const auto first = text.find_first_not_of(" \t\r\n");
        if (first != std::string_view::npos && text[first] == '{') {
            format = InputFormat::Json;
        } else {
            const auto lines = detail::content_lines(text);
            format = (!lines.empty() && lines.front().tokens.front().text == "nodes") ? InputFormat::Graph
                                                                                       : InputFormat::Matrix;
        }
    }
    if (format == InputFormat::Json) {
        json doc;
        try {
            doc = json::parse(text);
        } catch (const json::parse_error& e) {
            throw ParseError(std::string("invalid JSON: ") + e.what());
        }
        try {
            return detail::json_document(doc, mode);
        } catch (const json::exception& e) {
            throw ParseError(std::string("invalid document: ") + e.what());
        }
    }
    const auto lines = detail::content_lines(text);
    if (format == InputFormat::Graph) {
        if (mode == Mode::Float) throw ParseError("graph input is integer data; float mode does not apply");
        return detail::graph_from_lines(lines);
    }
    std::vector<std::vector<detail::Cell>> cells;
    for (const auto& l : lines) {
        cells.emplace_back();
        for (const auto& t : l.tokens) cells.back().push_back(detail::parse_cell(t, l.number));
    }
    return detail::matrix_document(cells, mode);
}

inline InputDocument parse_input(std::istream& in, InputFormat format = InputFormat::Auto,
                                 std::optional<Mode> mode = std::nullopt) {
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_input(buf.str(), format, mode);
}

/// Reads a probability vector: a JSON array, a JSON object with a "pi" field
/// (as written by `stationary --json`), or one line of literals.
inline std::vector<Literal> parse_vector(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) throw ParseError("empty vector");
    std::vector<Literal> out;
    if (text[first] == '{' || text[first] == '[') {
        json doc;
        try {
            doc = json::parse(text);
        } catch (const json::parse_error& e) {
            throw ParseError(std::string("invalid JSON: ") + e.what());
        }
        const json& arr = doc.is_object() ? doc.at("pi") : doc;
        for (std::size_t k = 0; k < arr.size(); ++k) out.push_back(detail::json_literal(arr[k], 0, k));
        return out;
    }
    const auto lines = detail::content_lines(text);
    for (const auto& l : lines)
        for (const auto& t : l.tokens) out.push_back(detail::parse_cell(t, l.number).lit);
    return out;
}

// ---------------------------------------------------------------------------
// Output

/// Exact scalars become "a/b" strings; floats stay JSON numbers.
template <Scalar T>
json to_json(const T& x) {
    if constexpr (is_exact_v<T>) {
        return format_scalar(x);
    } else {
        return x;
    }
}

template <Scalar T>
json to_json(std::span<const T> v) {
    json arr = json::array();
    for (const T& x : v) arr.push_back(to_json(x));
    return arr;
}

inline json indices_to_json(std::span<const std::size_t> idx) {
    json arr = json::array();
    for (std::size_t i : idx) arr.push_back(i + 1);
    return arr;
}

template <Scalar T>
json to_json(const DecompositionReport<T>& r) {
    json classes = json::array();
    for (const auto& c : r.classes) classes.push_back(indices_to_json(c));
    json vertices = json::array();
    for (const auto& v : r.vertex_equilibria) vertices.push_back(to_json(v.span()));
    json closed = json::array();
    for (bool b : r.closed) closed.push_back(b);
    return {{"type", "DecompositionReport"},
            {"classes", classes},
            {"closed_flags", closed},
            {"transitory_states", indices_to_json(r.transitory_states)},
            {"vertex_equilibria", vertices}};
}

template <Scalar T>
json to_json(const EquilibriumResult<T>& r) {
    json out{{"type", "EquilibriumResult"}, {"mode", to_string(ScalarTraits<T>::mode)}};
    out["weights"] = to_json(std::span<const T>(r.weights().values));
    if (r.is_unique()) {
        out["variant"] = "Unique";
        out["pi"] = to_json(r.pi().span());
    } else {
        out["variant"] = "Degenerate";
        out["report"] = to_json(r.degenerate().report);
    }
    return out;
}

inline json to_json(const PowerMethodReport& r) {
    return {{"type", "PowerMethodReport"},
            {"iterations", r.iterations},
            {"final_spread", r.final_spread},
            {"pi_estimate", to_json(r.pi_estimate.span())},
            {"converged", r.converged},
            {"stalled", r.stalled},
            {"idempotent", r.idempotent}};
}

/// Text form of a vector: "[2/3, 1/3]".
template <Scalar T>
std::string format_vector(std::span<const T> v) {
    std::string s = "[";
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) s += ", ";
        s += format_scalar(v[k]);
    }
    return s + "]";
}

inline std::string format_indices(std::span<const std::size_t> idx) {
    std::string s = "{";
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (k) s += ", ";
        s += std::to_string(idx[k] + 1);
    }
    return s + "}";
}

}  // namespace stocheq::io

#endif  // STOCHEQ_IO_HPP
