#pragma once

// Text, LaTeX and JSON forms of expressions, and parsers for text and JSON.
//
// Text grammar (UTF-8):
//
//   expr      := "0" | term { "+" term }
//   term      := delta | atom
//   delta     := "Δ" [ "^" INT ] "_{" expr { "," expr } "}" IDENT "(" expr ")"
//   atom      := IDENT "(" expr ")"          function application
//              | IDENT [ "_" subscript ]     point, vector or cuboid component
//   subscript := INT | "{" INT { "," INT } "}"
//
// In a difference term the exponent, when present, must equal the number of
// listed directions; a direction repeated n times means Δ_t applied n times.
// Whether an identifier is a point, a vector or a cuboid component is decided
// by the ParseContext: names in `cuboids` with a subscript are components
// (u_0, u_2, u_{1,3}), names in `points` are points, everything else is a
// vector symbol whose name keeps its subscript verbatim (v_1).

#include "fdb/expr.hpp"
#include "fdb/multi_index.hpp"

#include <json.hpp>

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fdb {

enum class Format { text, latex, json };

inline Format parse_format(std::string_view s) {
    if (s == "text") return Format::text;
    if (s == "latex") return Format::latex;
    if (s == "json") return Format::json;
    throw std::invalid_argument("unknown format '" + std::string(s) + "'");
}

inline constexpr int json_schema_version = 1;

namespace detail {

inline std::string subscript_list(const MultiIndex& idx, bool latex) {
    const auto supp = idx.support();
    if (supp.empty()) return latex ? "{0}" : "0";
    std::string s;
    for (std::size_t i = 0; i < supp.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(supp[i] + 1);
    }
    if (supp.size() == 1 && !latex) return s;
    return "{" + s + "}";
}

inline std::string latex_name(const std::string& name) {
    const auto us = name.find('_');
    if (us == std::string::npos || us + 1 == name.size()) return name;
    std::string sub = name.substr(us + 1);
    if (sub.front() == '{') return name;
    return name.substr(0, us) + "_{" + sub + "}";
}

inline void render_into(std::string& out, const Expr& e, bool latex) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, PointSym> || std::is_same_v<T, VecSym>) {
                out += latex ? latex_name(n.name) : n.name;
            } else if constexpr (std::is_same_v<T, ComponentSym>) {
                out += n.cuboid + "_" + subscript_list(n.index, latex);
            } else if constexpr (std::is_same_v<T, Sum>) {
                if (n.terms.empty()) {
                    out += "0";
                    return;
                }
                for (std::size_t i = 0; i < n.terms.size(); ++i) {
                    if (i) out += " + ";
                    render_into(out, n.terms[i], latex);
                }
            } else if constexpr (std::is_same_v<T, App>) {
                out += n.function + "(";
                render_into(out, *n.arg, latex);
                out += ")";
            } else {
                unsigned total = 0;
                for (auto x : n.exponents) total += x;
                if (total == 0) {
                    out += n.function + "(";
                    render_into(out, *n.base, latex);
                    out += ")";
                    return;
                }
                out += latex ? "\\Delta" : "Δ";
                if (total > 1) out += latex ? "^{" + std::to_string(total) + "}" : "^" + std::to_string(total);
                out += "_{";
                bool first = true;
                for (std::size_t i = 0; i < n.directions.size(); ++i) {
                    for (unsigned r = 0; r < n.exponents[i]; ++r) {
                        if (!first) out += ", ";
                        first = false;
                        render_into(out, n.directions[i], latex);
                    }
                }
                out += "} " + n.function + "(";
                render_into(out, *n.base, latex);
                out += ")";
            }
        },
        e.node());
}

}  // namespace detail

inline std::string render_text(const Expr& e) {
    std::string out;
    detail::render_into(out, e, false);
    return out;
}

/// Math-mode LaTeX for one expression (no delimiters).
inline std::string render_latex(const Expr& e) {
    std::string out;
    detail::render_into(out, e, true);
    return out;
}

inline nlohmann::json to_json(const Expr& e) {
    return std::visit(
        [](const auto& n) -> nlohmann::json {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, PointSym>) {
                return {{"kind", "point"}, {"name", n.name}};
            } else if constexpr (std::is_same_v<T, VecSym>) {
                return {{"kind", "vector"}, {"name", n.name}};
            } else if constexpr (std::is_same_v<T, ComponentSym>) {
                return {{"kind", "component"}, {"cuboid", n.cuboid}, {"index", n.index.bitstring()}};
            } else if constexpr (std::is_same_v<T, Sum>) {
                nlohmann::json terms = nlohmann::json::array();
                for (const auto& t : n.terms) terms.push_back(to_json(t));
                return {{"kind", "sum"}, {"terms", std::move(terms)}};
            } else if constexpr (std::is_same_v<T, App>) {
                return {{"kind", "app"}, {"function", n.function}, {"arg", to_json(*n.arg)}};
            } else {
                nlohmann::json dirs = nlohmann::json::array();
                for (const auto& d : n.directions) dirs.push_back(to_json(d));
                return {{"kind", "delta"},
                        {"alpha", n.exponents},
                        {"directions", std::move(dirs)},
                        {"function", n.function},
                        {"base", to_json(*n.base)}};
            }
        },
        e.node());
}

inline Expr expr_from_json(const nlohmann::json& j) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "point") return point(j.at("name").get<std::string>());
    if (kind == "vector") return vec(j.at("name").get<std::string>());
    if (kind == "component")
        return component(j.at("cuboid").get<std::string>(), MultiIndex::from_bitstring(j.at("index").get<std::string>()));
    if (kind == "sum") {
        std::vector<Expr> terms;
        for (const auto& t : j.at("terms")) terms.push_back(expr_from_json(t));
        return sum(std::move(terms));
    }
    if (kind == "app") return app(j.at("function").get<std::string>(), expr_from_json(j.at("arg")));
    if (kind == "delta") {
        std::vector<Expr> dirs;
        for (const auto& d : j.at("directions")) dirs.push_back(expr_from_json(d));
        return delta_term(j.at("alpha").get<std::vector<unsigned>>(), std::move(dirs), j.at("function").get<std::string>(),
                          expr_from_json(j.at("base")));
    }
    throw std::invalid_argument("unknown expression kind '" + kind + "'");
}

/// Versioned document: {"schema_version": 1, "expr": …}.
inline nlohmann::json to_json_document(const Expr& e) {
    return {{"schema_version", json_schema_version}, {"expr", to_json(e)}};
}

inline Expr parse_json(std::string_view text) {
    const auto j = nlohmann::json::parse(text);
    if (j.at("schema_version").get<int>() != json_schema_version)
        throw std::invalid_argument("unsupported expression schema version");
    return expr_from_json(j.at("expr"));
}

inline std::string render(const Expr& e, Format format) {
    switch (format) {
        case Format::text: return render_text(e);
        case Format::latex: return render_latex(e);
        case Format::json: return to_json_document(e).dump();
    }
    throw std::invalid_argument("unknown format");
}

struct ParseContext {
    std::set<std::string> cuboids{"u"};
    std::set<std::string> points{"x"};
    /// Cuboid dimension; inferred from the largest subscript when absent.
    std::size_t dim = 0;
};

namespace detail {

class TextParser {
public:
    TextParser(std::string_view src, const ParseContext& ctx) : src_(src), ctx_(ctx) {}

    Expr parse() {
        Expr e = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected trailing input");
        const std::size_t k = std::max(ctx_.dim, max_subscript_);
        return map_leaves(e, [k](const Expr& leaf) {
            if (!leaf.is<ComponentSym>()) return leaf;
            const auto& c = leaf.as<ComponentSym>();
            return component(c.cuboid, pad(c.index, k));
        });
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw std::invalid_argument("parse error at offset " + std::to_string(pos_) + ": " + what);
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    }
    bool consume(std::string_view tok) {
        skip_ws();
        if (src_.substr(pos_, tok.size()) == tok) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }
    void expect(std::string_view tok) {
        if (!consume(tok)) fail("expected '" + std::string(tok) + "'");
    }
    bool peek(std::string_view tok) {
        skip_ws();
        return src_.substr(pos_, tok.size()) == tok;
    }

    std::size_t parse_int() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return std::stoul(std::string(src_.substr(start, pos_ - start)));
    }

    std::string parse_ident() {
        skip_ws();
        const std::size_t start = pos_;
        if (pos_ >= src_.size() || !std::isalpha(static_cast<unsigned char>(src_[pos_]))) fail("expected identifier");
        while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        return std::string(src_.substr(start, pos_ - start));
    }

    Expr parse_expr() {
        skip_ws();
        if (peek("0")) {
            ++pos_;
            return sum({});
        }
        std::vector<Expr> terms{parse_term()};
        while (consume("+")) terms.push_back(parse_term());
        if (terms.size() == 1) return std::move(terms.front());
        return sum(std::move(terms));
    }

    Expr parse_term() {
        if (consume("Δ")) return parse_delta();
        return parse_atom();
    }

    Expr parse_delta() {
        std::size_t exponent = 0;
        bool has_exponent = false;
        if (consume("^")) {
            has_exponent = true;
            if (consume("{")) {
                exponent = parse_int();
                expect("}");
            } else {
                exponent = parse_int();
            }
        }
        expect("_");
        expect("{");
        std::vector<Expr> dirs{parse_expr()};
        while (consume(",")) dirs.push_back(parse_expr());
        expect("}");
        if (has_exponent && exponent != dirs.size()) fail("exponent differs from the number of directions");
        const std::string fn = parse_ident();
        expect("(");
        Expr base = parse_expr();
        expect(")");
        return delta_term(std::move(dirs), fn, std::move(base));
    }

    Expr parse_atom() {
        std::string name = parse_ident();
        if (consume("(")) {
            Expr arg = parse_expr();
            expect(")");
            return app(std::move(name), std::move(arg));
        }
        std::vector<std::size_t> subs;
        std::string raw_sub;
        // A subscript directly follows the identifier, with no space.
        if (pos_ < src_.size() && src_[pos_] == '_') {
            ++pos_;
            const std::size_t start = pos_;
            if (pos_ < src_.size() && src_[pos_] == '{') {
                ++pos_;
                subs.push_back(parse_int());
                while (consume(",")) subs.push_back(parse_int());
                expect("}");
            } else {
                subs.push_back(parse_int());
            }
            raw_sub = std::string(src_.substr(start, pos_ - start));
        }
        if (!raw_sub.empty() && ctx_.cuboids.contains(name)) {
            std::uint64_t bits = 0;
            std::size_t len = 0;
            const bool is_zero = subs.size() == 1 && subs.front() == 0;
            if (!is_zero) {
                for (std::size_t i = 0; i < subs.size(); ++i) {
                    const auto s = subs[i];
                    if (s == 0 || s > MultiIndex::max_length) fail("bad cuboid subscript");
                    if (i > 0 && s <= subs[i - 1]) fail("cuboid subscripts must increase");
                    bits |= std::uint64_t{1} << (s - 1);
                    len = std::max(len, s);
                }
            }
            max_subscript_ = std::max(max_subscript_, len);
            return component(std::move(name), MultiIndex(len, bits));
        }
        if (!raw_sub.empty()) name += "_" + raw_sub;
        if (ctx_.points.contains(name)) return point(std::move(name));
        return vec(std::move(name));
    }

    std::string_view src_;
    const ParseContext& ctx_;
    std::size_t pos_ = 0;
    std::size_t max_subscript_ = 0;
};

}  // namespace detail

inline Expr parse_text(std::string_view text, const ParseContext& ctx = {}) {
    return detail::TextParser(text, ctx).parse();
}

}  // namespace fdb
