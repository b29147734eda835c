#pragma once

// Exact rational scalars and fixed-dimension rational vectors.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fdb {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Formats as "p/q" with q > 0, always including the denominator.
inline std::string to_string(const Rational& r) {
    return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

/// Accepts "p/q" or a bare integer "p".
inline Rational parse_rational(std::string_view text) {
    auto parse_int = [](std::string_view s) {
        if (s.empty()) throw std::invalid_argument("empty integer in rational literal");
        std::size_t i = (s.front() == '-' || s.front() == '+') ? 1 : 0;
        if (i == s.size()) throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
        for (std::size_t j = i; j < s.size(); ++j) {
            if (s[j] < '0' || s[j] > '9') throw std::invalid_argument("malformed integer '" + std::string(s) + "'");
        }
        if (s.front() == '+') s.remove_prefix(1);
        return Integer(std::string(s));
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text));
    Integer den = parse_int(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(parse_int(text.substr(0, slash)), den);
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// A point or vector of a rational coordinate space.
class Value {
public:
    Value() = default;
    explicit Value(std::size_t dim) : coords_(dim) {}
    explicit Value(std::vector<Rational> coords) : coords_(std::move(coords)) {}
    Value(std::initializer_list<Rational> coords) : coords_(coords) {}

    static Value zero(std::size_t dim) { return Value(dim); }

    [[nodiscard]] std::size_t dim() const noexcept { return coords_.size(); }
    [[nodiscard]] const std::vector<Rational>& coords() const noexcept { return coords_; }

    Rational& operator[](std::size_t i) { return coords_[i]; }
    const Rational& operator[](std::size_t i) const { return coords_[i]; }

    [[nodiscard]] bool is_zero() const {
        for (const auto& c : coords_)
            if (c != 0) return false;
        return true;
    }

    Value& operator+=(const Value& o) {
        check_dim(o);
        for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += o.coords_[i];
        return *this;
    }
    Value& operator-=(const Value& o) {
        check_dim(o);
        for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= o.coords_[i];
        return *this;
    }
    Value& operator*=(const Rational& s) {
        for (auto& c : coords_) c *= s;
        return *this;
    }

    friend Value operator+(Value a, const Value& b) { return a += b; }
    friend Value operator-(Value a, const Value& b) { return a -= b; }
    friend Value operator-(Value a) {
        for (auto& c : a.coords_) c = -c;
        return a;
    }
    friend Value operator*(const Rational& s, Value a) { return a *= s; }
    friend Value operator*(Value a, const Rational& s) { return a *= s; }

    friend bool operator==(const Value& a, const Value& b) { return a.coords_ == b.coords_; }
    friend bool operator<(const Value& a, const Value& b) { return a.coords_ < b.coords_; }

    [[nodiscard]] std::string str() const {
        std::string out = "[";
        for (std::size_t i = 0; i < coords_.size(); ++i) {
            if (i) out += ", ";
            out += to_string(coords_[i]);
        }
        return out + "]";
    }

private:
    void check_dim(const Value& o) const {
        if (o.dim() != dim())
            throw std::invalid_argument("dimension mismatch: " + std::to_string(dim()) + " vs " +
                                        std::to_string(o.dim()));
    }

    std::vector<Rational> coords_;
};

}  // namespace fdb
