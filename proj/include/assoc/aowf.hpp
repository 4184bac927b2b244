// The associative function sigma = alpha(beta(s), beta(t)) over a pluggable
// witness relation, with analytic and brute-force preimage oracles for its
// building blocks.

#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "assoc/ambiguity.hpp"
#include "assoc/strings.hpp"

namespace assoc {

/// A polynomial-time verifier with exact witness length rho(|x|) and a cap f
/// on the number of witnesses per instance.
struct WitnessRelation {
    std::string name;
    std::function<bool(const BitString& x, const BitString& w)> verify;
    std::function<std::size_t(std::size_t)> rho;
    AmbiguityBound f;
};

namespace relations {

/// w = x·1 and x has an odd number of ones. rho(n) = n + 1, f = 1.
WitnessRelation parity_up();

/// w = x·i, i in {00, 01, 10} with value(i) < (ones(x) mod 3) + 1.
/// rho(n) = n + 2, f = 3.
WitnessRelation mod3_few();

/// "parity-up" or "mod3-few"; std::invalid_argument otherwise.
WitnessRelation by_name(std::string_view name);

} // namespace relations

inline constexpr std::size_t kWitnessLengthCeiling = 24;

/// Every w of length rho(|x|) accepted by the verifier, shortlex order.
/// Throws BudgetError when rho(|x|) exceeds `ceiling`.
std::vector<BitString> wit(const WitnessRelation& rel, const BitString& x,
                           std::size_t ceiling = kWitnessLengthCeiling);

class SigmaAowf {
public:
    explicit SigmaAowf(WitnessRelation rel);

    const WitnessRelation& relation() const noexcept { return rel_; }

    /// d = <x,w>: "1"·x when w is a witness for x, otherwise "0"·d.
    BitString gamma(const BitString& d) const;

    /// ε -> 111; 1·c' -> 0·gamma(c'); 0·c' -> 00·c(4+).
    BitString beta(const BitString& c) const;

    /// "0"·(b1 & a2)·(a1 & b2)·a(3+)·b(3+). Throws std::domain_error when
    /// either operand is shorter than 2.
    static BitString alpha(const BitString& a, const BitString& b);

    BitString sigma(const BitString& s, const BitString& t) const;
    BitString operator()(const BitString& s, const BitString& t) const { return sigma(s, t); }

    /// Longest component any preimage of `y` can have; 0 when `y` is not in
    /// the image at all.
    std::size_t preimage_length_cap(const BitString& y) const;

    /// (n - 2)(f(n - 2) + 9)^2.
    AmbiguityBound declared_ambiguity() const;

    BinaryOperation as_operation() const;

private:
    WitnessRelation rel_;
};

/// Which branch of beta can produce `e`.
enum class BetaBranch { Empty, Gate, Drop, None };

/// Empty for 111, Gate for 01·x, Drop for 00·r, None otherwise.
BetaBranch beta_branch(const BitString& e);

/// Per-branch preimage bound: 1, f(|e| - 2), 8, 0.
std::size_t beta_preimage_bound(const WitnessRelation& rel, const BitString& e);

/// All c with |c| <= len_cap and beta(c) = e, by exhaustive search.
std::vector<BitString> beta_preimages(const SigmaAowf& machine, const BitString& e,
                                      std::size_t len_cap);

/// The full preimage set of `e` under beta, computed from the branch
/// structure (no length cap).
std::vector<BitString> beta_candidates(const SigmaAowf& machine, const BitString& e);

/// Z(e) = {0, 00, 01} ∪ {0xy·e(3+)} ∪ {1·e(3+)}.
bool in_drop_set(const BitString& e, const BitString& c);

/// W(x) = {1·<x,w> : w in Wit(x)}.
bool in_gate_set(const WitnessRelation& rel, const BitString& x, const BitString& c);

enum class CaseSet { Drop, Gate, Empty };

struct CaseRow {
    int index;
    std::string_view a_prefix;  // first two bits of beta(s)
    std::string_view b_prefix;  // first two bits of beta(t)
    std::string_view y23;       // second and third bit of sigma(s, t)
    CaseSet s_set;
    CaseSet t_set;
};

/// The nine combinations of beta branches for (s, t).
const std::array<CaseRow, 9>& case_rows();

struct CaseEntry {
    BitString s;
    BitString t;
    int row;
};

struct CaseTableReport {
    BitString y;
    std::size_t len_cap = 0;
    std::vector<CaseEntry> classified;
    std::vector<Pair> unclassified;

    bool pass() const noexcept { return unclassified.empty(); }
};

/// Enumerates every (s, t) with |s|, |t| <= len_cap and sigma(s, t) = y and
/// places each under its table row. Requires y1 = 0 and |y| >= 3
/// (std::domain_error otherwise).
CaseTableReport case_table_check(const SigmaAowf& machine, const BitString& y,
                                 std::size_t len_cap);

} // namespace assoc
