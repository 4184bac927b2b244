// Ambiguity bounds, binary operations with declared properties, and
// brute-force preimage census oracles.

#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "assoc/errors.hpp"
#include "assoc/strings.hpp"

namespace assoc {

/// A named total function N -> N, nondecreasing by contract.
struct AmbiguityBound {
    std::string name;
    std::function<std::uint64_t(std::uint64_t)> evaluate;
    bool unbounded = true;

    std::uint64_t operator()(std::uint64_t n) const { return evaluate(n); }
};

namespace bounds {

AmbiguityBound linear();       // n
AmbiguityBound log2_ceil();    // ceil(log2(n + 2))
AmbiguityBound sqrt_ceil();    // ceil(sqrt(n))
AmbiguityBound constant(std::uint64_t c);

/// Built-in g by name: linear, log, sqrt. Throws std::invalid_argument.
AmbiguityBound by_name(std::string_view name);

/// Spot check of monotonicity on 0..limit; returns the first n with
/// evaluate(n) > evaluate(n + 1).
std::optional<std::uint64_t> first_decrease(const AmbiguityBound& h, std::uint64_t limit);

} // namespace bounds

using Pair = std::pair<BitString, BitString>;

/// A total 2-ary function on bitstrings plus what its author declares about it.
struct BinaryOperation {
    std::string name;
    std::function<BitString(const BitString&, const BitString&)> apply;

    bool associative = false;
    bool commutative = false;

    /// |op(x, y)| is polynomially bounded in max(|x|, |y|).
    bool polynomial_output = true;

    /// |op(x, y)| >= |x| + |y|; lets targeted censuses prune by length.
    bool length_superadditive = false;

    /// Upper bound on the component lengths of any preimage of `image`;
    /// empty when no bound is known (preimage sets may be infinite).
    std::function<std::optional<std::size_t>(const BitString&)> preimage_length_cap;

    /// Ambiguity bound h the operation is claimed to meet (h(|y|) preimages).
    std::optional<AmbiguityBound> declared_ambiguity;

    BitString operator()(const BitString& a, const BitString& b) const { return apply(a, b); }

    std::optional<std::size_t> length_cap_for(const BitString& image) const {
        if (!preimage_length_cap) return std::nullopt;
        return preimage_length_cap(image);
    }
};

namespace ops {

BinaryOperation concatenation();
BinaryOperation shortlex_max();
BinaryOperation left_projection();

} // namespace ops

/// All known preimages of one image within a search bound.
class PreimageReport {
public:
    /// Sorts and deduplicates `preimages`, then re-applies `op` to each;
    /// throws std::logic_error if any pair does not map to `image`.
    PreimageReport(const BinaryOperation& op, BitString image, std::vector<Pair> preimages,
                   std::uint64_t search_bound, bool complete);

    const BitString& image() const noexcept { return image_; }
    const std::vector<Pair>& preimages() const noexcept { return preimages_; }
    std::size_t count() const noexcept { return preimages_.size(); }
    std::uint64_t search_bound() const noexcept { return search_bound_; }
    bool complete() const noexcept { return complete_; }

private:
    BitString image_;
    std::vector<Pair> preimages_;
    std::uint64_t search_bound_;
    bool complete_;
};

/// Reports keyed by image, iterated shortlex.
using CensusTable = std::map<BitString, PreimageReport>;

/// Thrown when a census would exceed its evaluation budget; carries the
/// reports for the completed prefix of the enumeration (all incomplete).
class PartialCensusError : public BudgetError {
public:
    PartialCensusError(const std::string& what, CensusTable partial, std::uint64_t evaluated);
    const CensusTable& partial() const noexcept { return partial_; }
    std::uint64_t evaluated() const noexcept { return evaluated_; }

private:
    CensusTable partial_;
    std::uint64_t evaluated_;
};

inline constexpr std::uint64_t kDefaultCensusBudget = 50'000'000;

/// True when every string of length <= `len` has rank <= max_rank.
bool covers_length(std::uint64_t max_rank, std::size_t len);

/// Whether a report for `image` found at `max_rank` saw every preimage.
bool census_complete_for(const BinaryOperation& op, const BitString& image,
                         std::uint64_t max_rank);

/// Evaluates `op` on every (x, y) with rank(x), rank(y) <= max_rank,
/// x-major, and groups by output.
CensusTable preimage_census(const BinaryOperation& op, std::uint64_t max_rank,
                            std::uint64_t budget = kDefaultCensusBudget);

/// Preimages of a single image among inputs of rank <= max_rank. Uses the
/// operation's declared length structure to skip pairs that cannot map to
/// `image`; the report is complete exactly when census_complete_for holds.
PreimageReport image_census(const BinaryOperation& op, const BitString& image,
                            std::uint64_t max_rank,
                            std::uint64_t budget = kDefaultCensusBudget);

struct HVerdict {
    bool pass = true;
    std::optional<BitString> counterexample;  // smallest-rank failing image
    std::size_t count = 0;                    // its preimage count
    std::uint64_t bound = 0;                  // h(|counterexample|)
    std::size_t checked = 0;                  // complete reports examined
};

/// PASS iff every complete report satisfies count <= h(|image|).
HVerdict check_h_to_one(const CensusTable& census, const AmbiguityBound& h);

struct ProfileRow {
    std::size_t length = 0;
    std::size_t max_count = 0;
    bool complete = false;  // max taken over complete reports only
};

/// Per output length, the maximum preimage count. Lengths with at least one
/// complete report use complete reports only; others fall back to the
/// truncated counts and are flagged incomplete.
std::vector<ProfileRow> ambiguity_profile(const CensusTable& census);
std::vector<ProfileRow> ambiguity_profile(const BinaryOperation& op, std::uint64_t max_rank,
                                          std::uint64_t budget = kDefaultCensusBudget);

/// CSV with header `output,length,count,complete`.
void write_census_csv(std::ostream& out, const CensusTable& census);
/// CSV with header `length,max_count,complete`.
void write_profile_csv(std::ostream& out, const std::vector<ProfileRow>& rows);

} // namespace assoc
