// Bitstrings over {0,1}: shortlex order and ranking, a bijective pairing
// function, and the doubled-character multiset codec.

#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace assoc {

/// Arbitrary-precision shortlex index of a bitstring.
using Rank = boost::multiprecision::cpp_int;

/// Token used for the empty string in textual I/O.
inline constexpr std::string_view kEmptyLiteral = "@e";

/// A finite word over {0,1}. Ordered shortlex: shorter first, then
/// left-to-right with 0 < 1.
class BitString {
public:
    BitString() = default;

    /// Throws std::invalid_argument on any character other than '0'/'1'.
    explicit BitString(std::string_view bits);

    /// Accepts "@e" for the empty string, otherwise a '0'/'1' literal.
    static BitString parse_literal(std::string_view text);

    /// Inverse of parse_literal.
    std::string literal() const;

    const std::string& bits() const noexcept { return bits_; }
    std::size_t size() const noexcept { return bits_.size(); }
    bool empty() const noexcept { return bits_.empty(); }

    /// Zero-based character access.
    char operator[](std::size_t i) const { return bits_[i]; }

    /// Suffix starting at zero-based position `pos`; empty when past the end.
    BitString suffix(std::size_t pos) const;

    /// Replaces this string with its shortlex successor.
    BitString& advance();

    BitString& operator+=(const BitString& other);
    friend BitString operator+(BitString lhs, const BitString& rhs) {
        lhs += rhs;
        return lhs;
    }

    friend bool operator==(const BitString&, const BitString&) = default;
    friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) noexcept;

private:
    struct Unchecked {};
    BitString(Unchecked, std::string bits) : bits_(std::move(bits)) {}
    friend BitString unrank(const Rank&);
    friend BitString unrank_u64(std::uint64_t);

    std::string bits_;
};

/// Shortlex comparison on raw '0'/'1' buffers.
std::strong_ordering shortlex_compare(std::string_view a, std::string_view b) noexcept;

/// Shortlex index: the integer value of "1"·s minus one.
Rank rank(const BitString& s);
BitString unrank(const Rank& n);

/// Fast paths for strings of length < 64.
std::uint64_t rank_u64(const BitString& s);
BitString unrank_u64(std::uint64_t n);

/// Shortlex rank of the largest string of length `len`, i.e. 2^(len+1) - 2.
Rank last_rank_of_length(std::size_t len);

/// Advances `s` to its shortlex successor in place.
void shortlex_increment(std::string& s);

/// Cantor pairing on naturals: (m+n)(m+n+1)/2 + n.
Rank cantor_pair(const Rank& m, const Rank& n);
std::pair<Rank, Rank> cantor_unpair(const Rank& z);

/// Bijective pairing on bitstrings: unrank(cantor_pair(rank(a), rank(b))).
/// Strictly increasing in each argument when the other is fixed.
BitString pair_encode(const BitString& a, const BitString& b);
std::pair<BitString, BitString> pair_decode(const BitString& s);

/// A finite multiset of bitstrings, kept sorted shortlex.
class MultisetOfStrings {
public:
    MultisetOfStrings() = default;
    MultisetOfStrings(std::initializer_list<BitString> elems);
    explicit MultisetOfStrings(std::vector<BitString> elems);

    static MultisetOfStrings singleton(BitString s);

    void insert(BitString s);

    /// Multiset union: multiplicities add.
    friend MultisetOfStrings operator|(const MultisetOfStrings& a, const MultisetOfStrings& b);

    std::size_t size() const noexcept { return elems_.size(); }
    bool empty() const noexcept { return elems_.empty(); }
    const std::vector<BitString>& elements() const noexcept { return elems_; }
    auto begin() const noexcept { return elems_.begin(); }
    auto end() const noexcept { return elems_.end(); }

    /// Number of copies of `s`.
    std::size_t count(const BitString& s) const;

    friend bool operator==(const MultisetOfStrings&, const MultisetOfStrings&) = default;
    friend auto operator<=>(const MultisetOfStrings&, const MultisetOfStrings&) = default;

private:
    std::vector<BitString> elems_;
};

/// Thrown by multiset_decode; `position` is the zero-based index of the
/// first offending character.
class DecodeError : public std::runtime_error {
public:
    DecodeError(std::size_t position, const std::string& what);
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Doubles every character (0→00, 1→11), renders ε as 10, and joins the
/// shortlex-sorted elements with 01. Throws std::invalid_argument when empty.
BitString multiset_encode(const MultisetOfStrings& m);

/// Exact inverse of multiset_encode. Rejects non-canonical element order.
MultisetOfStrings multiset_decode(const BitString& s);

/// Human-readable rendering, e.g. {@e,0}.
std::string to_string(const MultisetOfStrings& m);

} // namespace assoc

template <>
struct std::hash<assoc::BitString> {
    std::size_t operator()(const assoc::BitString& s) const noexcept {
        return std::hash<std::string>{}(s.bits());
    }
};
