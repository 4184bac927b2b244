#include "assoc/strings.hpp"

#include <algorithm>
#include <iterator>
#include <limits>

namespace assoc {

namespace {

bool is_bit(char c) { return c == '0' || c == '1'; }

} // namespace

BitString::BitString(std::string_view bits) : bits_(bits) {
    for (std::size_t i = 0; i < bits_.size(); ++i) {
        if (!is_bit(bits_[i])) {
            throw std::invalid_argument("bitstring contains '" + std::string(1, bits_[i]) +
                                        "' at position " + std::to_string(i));
        }
    }
}

BitString BitString::parse_literal(std::string_view text) {
    if (text == kEmptyLiteral) return BitString{};
    if (text.empty()) throw std::invalid_argument("empty bitstring literal; write @e for the empty string");
    return BitString{text};
}

std::string BitString::literal() const {
    return bits_.empty() ? std::string(kEmptyLiteral) : bits_;
}

BitString BitString::suffix(std::size_t pos) const {
    if (pos >= bits_.size()) return BitString{};
    return BitString{Unchecked{}, bits_.substr(pos)};
}

BitString& BitString::advance() {
    shortlex_increment(bits_);
    return *this;
}

BitString& BitString::operator+=(const BitString& other) {
    bits_ += other.bits_;
    return *this;
}

std::strong_ordering shortlex_compare(std::string_view a, std::string_view b) noexcept {
    if (a.size() != b.size()) return a.size() <=> b.size();
    const int c = a.compare(b);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::strong_ordering operator<=>(const BitString& a, const BitString& b) noexcept {
    return shortlex_compare(a.bits_, b.bits_);
}

Rank rank(const BitString& s) {
    if (s.size() < 63) return Rank(rank_u64(s));
    Rank r = 1;
    for (char c : s.bits()) {
        r <<= 1;
        if (c == '1') r += 1;
    }
    return r - 1;
}

BitString unrank(const Rank& n) {
    if (n < 0) throw std::invalid_argument("negative rank");
    if (n < Rank(std::numeric_limits<std::uint64_t>::max())) {
        return unrank_u64(static_cast<std::uint64_t>(n));
    }
    const Rank v = n + 1;
    const std::size_t top = boost::multiprecision::msb(v);
    std::string bits(top, '0');
    for (std::size_t i = 0; i < top; ++i) {
        if (boost::multiprecision::bit_test(v, top - 1 - i)) bits[i] = '1';
    }
    return BitString{BitString::Unchecked{}, std::move(bits)};
}

std::uint64_t rank_u64(const BitString& s) {
    if (s.size() >= 63) throw std::overflow_error("rank does not fit in 64 bits");
    std::uint64_t r = 1;
    for (char c : s.bits()) r = (r << 1) | static_cast<std::uint64_t>(c == '1');
    return r - 1;
}

BitString unrank_u64(std::uint64_t n) {
    const unsigned __int128 v = static_cast<unsigned __int128>(n) + 1;
    int top = 0;
    while ((v >> (top + 1)) != 0) ++top;
    std::string bits(static_cast<std::size_t>(top), '0');
    for (int i = 0; i < top; ++i) {
        if ((v >> (top - 1 - i)) & 1U) bits[static_cast<std::size_t>(i)] = '1';
    }
    return BitString{BitString::Unchecked{}, std::move(bits)};
}

Rank last_rank_of_length(std::size_t len) {
    Rank r = 1;
    r <<= (len + 1);
    return r - 2;
}

void shortlex_increment(std::string& s) {
    for (std::size_t i = s.size(); i-- > 0;) {
        if (s[i] == '0') {
            s[i] = '1';
            return;
        }
        s[i] = '0';
    }
    // All ones rolled over: first string of the next length.
    s.assign(s.size() + 1, '0');
}

Rank cantor_pair(const Rank& m, const Rank& n) {
    const Rank d = m + n;
    return d * (d + 1) / 2 + n;
}

std::pair<Rank, Rank> cantor_unpair(const Rank& z) {
    const Rank disc = 8 * z + 1;
    const Rank w = (Rank(boost::multiprecision::sqrt(disc)) - 1) / 2;
    const Rank n = z - w * (w + 1) / 2;
    return {w - n, n};
}

BitString pair_encode(const BitString& a, const BitString& b) {
    return unrank(cantor_pair(rank(a), rank(b)));
}

std::pair<BitString, BitString> pair_decode(const BitString& s) {
    auto [m, n] = cantor_unpair(rank(s));
    return {unrank(m), unrank(n)};
}

MultisetOfStrings::MultisetOfStrings(std::initializer_list<BitString> elems) : elems_(elems) {
    std::sort(elems_.begin(), elems_.end());
}

MultisetOfStrings::MultisetOfStrings(std::vector<BitString> elems) : elems_(std::move(elems)) {
    std::sort(elems_.begin(), elems_.end());
}

MultisetOfStrings MultisetOfStrings::singleton(BitString s) {
    MultisetOfStrings m;
    m.elems_.push_back(std::move(s));
    return m;
}

void MultisetOfStrings::insert(BitString s) {
    elems_.insert(std::upper_bound(elems_.begin(), elems_.end(), s), std::move(s));
}

MultisetOfStrings operator|(const MultisetOfStrings& a, const MultisetOfStrings& b) {
    MultisetOfStrings out;
    out.elems_.reserve(a.size() + b.size());
    std::merge(a.elems_.begin(), a.elems_.end(), b.elems_.begin(), b.elems_.end(),
               std::back_inserter(out.elems_));
    return out;
}

std::size_t MultisetOfStrings::count(const BitString& s) const {
    auto [lo, hi] = std::equal_range(elems_.begin(), elems_.end(), s);
    return static_cast<std::size_t>(hi - lo);
}

DecodeError::DecodeError(std::size_t position, const std::string& what)
    : std::runtime_error("multiset decode error at position " + std::to_string(position) + ": " +
                         what),
      position_(position) {}

BitString multiset_encode(const MultisetOfStrings& m) {
    if (m.empty()) throw std::invalid_argument("cannot encode the empty multiset");
    std::string out;
    bool first = true;
    for (const BitString& e : m) {
        if (!first) out += "01";
        first = false;
        if (e.empty()) {
            out += "10";
            continue;
        }
        for (char c : e.bits()) {
            out += c;
            out += c;
        }
    }
    return BitString{out};
}

MultisetOfStrings multiset_decode(const BitString& s) {
    const std::string& in = s.bits();
    if (in.empty()) throw DecodeError(0, "empty input encodes no multiset");
    std::vector<BitString> elems;
    std::string current;
    bool have_epsilon = false;   // current element is the ε token
    bool element_open = false;   // at least one token seen for current element
    std::size_t element_start = 0;

    auto close_element = [&](std::size_t pos) {
        if (!element_open) throw DecodeError(pos, "empty element");
        BitString e = have_epsilon ? BitString{} : BitString{current};
        if (!elems.empty() && e < elems.back()) {
            throw DecodeError(element_start, "elements not in shortlex order");
        }
        elems.push_back(std::move(e));
        current.clear();
        have_epsilon = false;
        element_open = false;
    };

    for (std::size_t i = 0; i < in.size(); i += 2) {
        if (i + 1 >= in.size()) throw DecodeError(i, "odd trailing character");
        const char a = in[i];
        const char b = in[i + 1];
        if (a == b) {
            if (have_epsilon) throw DecodeError(i, "character after empty-string token");
            if (!element_open) element_start = i;
            current += a;
            element_open = true;
        } else if (a == '1') {  // "10": ε
            if (element_open) throw DecodeError(i, "empty-string token inside element");
            element_start = i;
            have_epsilon = true;
            element_open = true;
        } else {  // "01": separator
            close_element(i);
        }
    }
    close_element(in.size());
    return MultisetOfStrings(std::move(elems));
}

std::string to_string(const MultisetOfStrings& m) {
    std::string out = "{";
    bool first = true;
    for (const BitString& e : m) {
        if (!first) out += ',';
        first = false;
        out += e.literal();
    }
    return out + "}";
}

} // namespace assoc
