// Independent slow reference implementations used as test oracles.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace oracle {

// All strings of length <= max_len in shortlex order, built level by level.
inline std::vector<std::string> shortlex_strings(std::size_t max_len) {
    std::vector<std::string> out{""};
    std::vector<std::string> level{""};
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<std::string> next;
        for (const auto& s : level) next.push_back(s + "0");
        for (const auto& s : level) next.push_back(s + "1");
        std::sort(next.begin(), next.end());
        out.insert(out.end(), next.begin(), next.end());
        level = std::move(next);
    }
    return out;
}

// Offset of the first string of length |s| plus its binary value.
inline std::uint64_t rank(const std::string& s) {
    std::uint64_t offset = (std::uint64_t{1} << s.size()) - 1;
    std::uint64_t value = 0;
    for (char c : s) value = value * 2 + static_cast<std::uint64_t>(c - '0');
    return offset + value;
}

// Cantor pairing by walking diagonals.
inline std::uint64_t cantor(std::uint64_t m, std::uint64_t n) {
    std::uint64_t z = 0;
    for (std::uint64_t d = 0; d < m + n; ++d) z += d + 1;
    return z + n;
}

// Literal ordering of the replay: every pair with (m+1)(n+1) <= limit,
// sorted by product and then by decreasing m.
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> replay_pairs(std::uint64_t limit) {
    std::vector<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> keyed;
    for (std::uint64_t m = 0; m + 1 <= limit; ++m) {
        for (std::uint64_t n = 0; (m + 1) * (n + 1) <= limit; ++n) {
            keyed.emplace_back((m + 1) * (n + 1), ~m, n);
        }
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    for (const auto& [p, nm, n] : keyed) out.emplace_back(~nm, n);
    return out;
}

// Direct transcription of the factor-table construction over plain strings
// and std::multiset, with a linear scan for new product strings.
class ReferenceMachine {
public:
    using Bound = std::uint64_t (*)(std::uint64_t);

    explicit ReferenceMachine(Bound g) : g_(g) {}

    std::multiset<std::string> get_factors(const std::string& s) {
        auto it = find(s);
        if (it != entries_.end()) return it->second;
        entries_.emplace_back(s, std::multiset<std::string>{s});
        return entries_.back().second;
    }

    std::string get_product(const std::multiset<std::string>& a) {
        for (const auto& [k, v] : entries_) {
            if (v == a) return k;
        }
        const std::uint64_t threshold = (std::uint64_t{1} << a.size()) - 2;
        for (std::size_t len = 0;; ++len) {
            if (g_(len) <= threshold) continue;
            for (std::uint64_t v = 0; len >= 64 || v < (std::uint64_t{1} << len); ++v) {
                const std::string y = string_of_length(len, v);
                if (find(y) == entries_.end()) {
                    entries_.emplace_back(y, a);
                    return y;
                }
            }
        }
    }

    std::string step(const std::string& a, const std::string& b) {
        std::multiset<std::string> u = get_factors(a);
        const std::multiset<std::string> fb = get_factors(b);
        u.insert(fb.begin(), fb.end());
        return get_product(u);
    }

    // `<index>,<key>,<encoding>` per entry.
    std::string dump() const {
        std::string out;
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            out += std::to_string(i) + "," + (entries_[i].first.empty() ? "@e" : entries_[i].first) +
                   "," + encode(entries_[i].second) + "\n";
        }
        return out;
    }

    const std::vector<std::pair<std::string, std::multiset<std::string>>>& entries() const {
        return entries_;
    }

private:
    // The v-th string of length len in lexicographic order (v < 2^64).
    static std::string string_of_length(std::size_t len, std::uint64_t v) {
        std::string s(len, '0');
        for (std::size_t i = 0; i < len && i < 64; ++i) {
            if ((v >> i) & 1U) s[len - 1 - i] = '1';
        }
        return s;
    }

    static bool shortlex_less(const std::string& a, const std::string& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    }

    static std::string encode(const std::multiset<std::string>& m) {
        std::vector<std::string> v(m.begin(), m.end());
        std::sort(v.begin(), v.end(), shortlex_less);
        std::string out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += "01";
            if (v[i].empty()) out += "10";
            for (char c : v[i]) out += std::string(2, c);
        }
        return out;
    }

    std::vector<std::pair<std::string, std::multiset<std::string>>>::iterator find(
        const std::string& s) {
        return std::find_if(entries_.begin(), entries_.end(),
                            [&](const auto& e) { return e.first == s; });
    }

    Bound g_;
    std::vector<std::pair<std::string, std::multiset<std::string>>> entries_;
};

} // namespace oracle
