#pragma once

// Binary multi-indices: elements of the discrete cube {0,1}^k.
//
// Digit i (0-based) is stored in bit i of an unsigned word, so the integer
// encoding of a multi-index is also its slot in a dense cuboid array, and
// appending a digit at the end sets the new highest bit.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fdb {

class MultiIndex {
public:
    static constexpr std::size_t max_length = 62;

    MultiIndex() = default;

    MultiIndex(std::size_t length, std::uint64_t bits) : length_(length), bits_(bits) {
        if (length > max_length) throw std::invalid_argument("multi-index longer than " + std::to_string(max_length));
        if (length < 64 && (bits >> length) != 0) throw std::invalid_argument("multi-index bits exceed its length");
    }

    static MultiIndex zero(std::size_t length) { return {length, 0}; }
    static MultiIndex ones(std::size_t length) {
        return {length, length == 0 ? 0 : (~std::uint64_t{0} >> (64 - length))};
    }
    /// Single 1-digit at 0-based position `pos`.
    static MultiIndex unit(std::size_t length, std::size_t pos) {
        if (pos >= length) throw std::out_of_range("unit position out of range");
        return {length, std::uint64_t{1} << pos};
    }

    /// Parses "101": the first character is digit 0.
    static MultiIndex from_bitstring(std::string_view s) {
        if (s.size() > max_length) throw std::invalid_argument("bitstring too long");
        std::uint64_t bits = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1')
                bits |= std::uint64_t{1} << i;
            else if (s[i] != '0')
                throw std::invalid_argument("malformed bitstring '" + std::string(s) + "'");
        }
        return {s.size(), bits};
    }

    [[nodiscard]] std::size_t length() const noexcept { return length_; }
    [[nodiscard]] std::uint64_t bits() const noexcept { return bits_; }
    [[nodiscard]] bool digit(std::size_t i) const { return ((bits_ >> i) & 1U) != 0; }
    [[nodiscard]] bool is_zero() const noexcept { return bits_ == 0; }

    /// Number of 1-digits, written |α|.
    [[nodiscard]] std::size_t order() const noexcept { return static_cast<std::size_t>(__builtin_popcountll(bits_)); }

    /// 0-based positions of the 1-digits, ascending.
    [[nodiscard]] std::vector<std::size_t> support() const {
        std::vector<std::size_t> out;
        for (std::size_t i = 0; i < length_; ++i)
            if (digit(i)) out.push_back(i);
        return out;
    }

    /// Position of the least 1-digit, or length() for the zero index.
    [[nodiscard]] std::size_t least_support() const noexcept {
        return bits_ == 0 ? length_ : static_cast<std::size_t>(__builtin_ctzll(bits_));
    }

    [[nodiscard]] std::string bitstring() const {
        std::string s(length_, '0');
        for (std::size_t i = 0; i < length_; ++i)
            if (digit(i)) s[i] = '1';
        return s;
    }

    /// Total order used for sorted containers: length, then bitstring lexicographically.
    friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
        if (auto c = a.length_ <=> b.length_; c != 0) return c;
        for (std::size_t i = 0; i < a.length_; ++i) {
            if (auto c = a.digit(i) <=> b.digit(i); c != 0) return c;
        }
        return std::strong_ordering::equal;
    }
    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

private:
    std::size_t length_ = 0;
    std::uint64_t bits_ = 0;
};

inline std::size_t order(const MultiIndex& a) { return a.order(); }

namespace detail {
inline void require_same_length(const MultiIndex& a, const MultiIndex& b) {
    if (a.length() != b.length())
        throw std::invalid_argument("multi-index length mismatch: " + a.bitstring() + " vs " + b.bitstring());
}
}  // namespace detail

/// Componentwise partial order α ≤ β.
inline bool leq(const MultiIndex& a, const MultiIndex& b) {
    detail::require_same_length(a, b);
    return (a.bits() & ~b.bits()) == 0;
}

/// α < β in the partial order (α ≤ β and α ≠ β).
inline bool strictly_below(const MultiIndex& a, const MultiIndex& b) { return leq(a, b) && a != b; }

inline bool disjoint(const MultiIndex& a, const MultiIndex& b) {
    detail::require_same_length(a, b);
    return (a.bits() & b.bits()) == 0;
}

/// Componentwise sum of two indices with disjoint supports.
inline MultiIndex disjoint_sum(const MultiIndex& a, const MultiIndex& b) {
    if (!disjoint(a, b)) throw std::invalid_argument("overlapping supports in disjoint_sum");
    return {a.length(), a.bits() | b.bits()};
}

/// α⋄d: appends digit d at the end.
inline MultiIndex diamond(const MultiIndex& a, bool d) {
    const std::size_t k = a.length();
    return {k + 1, a.bits() | (d ? std::uint64_t{1} << k : 0)};
}

inline std::vector<MultiIndex> diamond(const std::vector<MultiIndex>& set, bool d) {
    std::vector<MultiIndex> out;
    out.reserve(set.size());
    for (const auto& b : set) out.push_back(diamond(b, d));
    return out;
}

/// The down-set [α] = {β : β ≤ α}, ascending by integer encoding.
inline std::vector<MultiIndex> down_set(const MultiIndex& a) {
    std::vector<std::uint64_t> codes;
    std::uint64_t sub = a.bits();
    // Standard submask walk, collected then sorted.
    while (true) {
        codes.push_back(sub);
        if (sub == 0) break;
        sub = (sub - 1) & a.bits();
    }
    std::sort(codes.begin(), codes.end());
    std::vector<MultiIndex> out;
    out.reserve(codes.size());
    for (auto c : codes) out.emplace_back(a.length(), c);
    return out;
}

/// Ordering used in canonical expressions: by order |γ|, then by the
/// ascending list of 1-based subscripts (so u_1 < u_2 < u_{1,2} < u_{1,3}).
inline std::strong_ordering subscript_order(const MultiIndex& a, const MultiIndex& b) {
    if (auto c = a.order() <=> b.order(); c != 0) return c;
    const auto sa = a.support();
    const auto sb = b.support();
    if (auto c = std::lexicographical_compare_three_way(sa.begin(), sa.end(), sb.begin(), sb.end()); c != 0)
        return c;
    return a.length() <=> b.length();
}

/// Maps an index on m digits into k digits, digit j landing on position positions[j].
inline MultiIndex embed(const MultiIndex& a, const std::vector<std::size_t>& positions, std::size_t k) {
    if (positions.size() != a.length()) throw std::invalid_argument("embedding size mismatch");
    std::uint64_t bits = 0;
    for (std::size_t j = 0; j < a.length(); ++j) {
        if (positions[j] >= k) throw std::out_of_range("embedding position out of range");
        if (a.digit(j)) bits |= std::uint64_t{1} << positions[j];
    }
    return {k, bits};
}

/// Appends zero digits up to length k.
inline MultiIndex pad(const MultiIndex& a, std::size_t k) {
    if (k < a.length()) throw std::invalid_argument("cannot pad to a shorter length");
    return {k, a.bits()};
}

}  // namespace fdb
