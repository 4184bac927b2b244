#include "assoc/ambiguity.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <ostream>

namespace assoc {

namespace bounds {

AmbiguityBound linear() {
    return {"linear", [](std::uint64_t n) { return n; }, true};
}

AmbiguityBound log2_ceil() {
    return {"log",
            [](std::uint64_t n) -> std::uint64_t {
                // ceil(log2(x)) == bit_width(x - 1) for x >= 1; here x = n + 2.
                return static_cast<std::uint64_t>(std::bit_width(n + 1));
            },
            true};
}

AmbiguityBound sqrt_ceil() {
    return {"sqrt",
            [](std::uint64_t n) -> std::uint64_t {
                std::uint64_t s = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
                while (s * s > n) --s;
                while ((s + 1) * (s + 1) <= n) ++s;
                return s * s == n ? s : s + 1;
            },
            true};
}

AmbiguityBound constant(std::uint64_t c) {
    return {"const" + std::to_string(c), [c](std::uint64_t) { return c; }, false};
}

AmbiguityBound by_name(std::string_view name) {
    if (name == "linear") return linear();
    if (name == "log") return log2_ceil();
    if (name == "sqrt") return sqrt_ceil();
    throw std::invalid_argument("unknown g '" + std::string(name) + "' (expected linear, log, sqrt)");
}

std::optional<std::uint64_t> first_decrease(const AmbiguityBound& h, std::uint64_t limit) {
    std::uint64_t prev = h(0);
    for (std::uint64_t n = 1; n <= limit; ++n) {
        const std::uint64_t cur = h(n);
        if (cur < prev) return n - 1;
        prev = cur;
    }
    return std::nullopt;
}

} // namespace bounds

namespace ops {

BinaryOperation concatenation() {
    BinaryOperation op;
    op.name = "concat";
    op.apply = [](const BitString& a, const BitString& b) { return a + b; };
    op.associative = true;
    op.length_superadditive = true;
    op.preimage_length_cap = [](const BitString& y) -> std::optional<std::size_t> {
        return y.size();
    };
    op.declared_ambiguity = AmbiguityBound{"splits", [](std::uint64_t n) { return n + 1; }, true};
    return op;
}

BinaryOperation shortlex_max() {
    BinaryOperation op;
    op.name = "max";
    op.apply = [](const BitString& a, const BitString& b) { return a < b ? b : a; };
    op.associative = true;
    op.commutative = true;
    op.preimage_length_cap = [](const BitString& y) -> std::optional<std::size_t> {
        return y.size();
    };
    // Image y has 2*rank(y) + 1 preimages; the largest of length n has rank 2^(n+1) - 2.
    op.declared_ambiguity = AmbiguityBound{"max-preimages",
                                           [](std::uint64_t n) -> std::uint64_t {
                                               if (n >= 61) return std::numeric_limits<std::uint64_t>::max();
                                               return (std::uint64_t{1} << (n + 2)) - 3;
                                           },
                                           true};
    return op;
}

BinaryOperation left_projection() {
    BinaryOperation op;
    op.name = "proj";
    op.apply = [](const BitString& a, const BitString&) { return a; };
    op.associative = true;
    return op;
}

} // namespace ops

PreimageReport::PreimageReport(const BinaryOperation& op, BitString image,
                               std::vector<Pair> preimages, std::uint64_t search_bound,
                               bool complete)
    : image_(std::move(image)),
      preimages_(std::move(preimages)),
      search_bound_(search_bound),
      complete_(complete) {
    std::sort(preimages_.begin(), preimages_.end());
    preimages_.erase(std::unique(preimages_.begin(), preimages_.end()), preimages_.end());
    for (const auto& [x, y] : preimages_) {
        if (op(x, y) != image_) {
            throw std::logic_error("census report for " + image_.literal() + " lists (" +
                                   x.literal() + "," + y.literal() + ") which does not map to it");
        }
    }
}

PartialCensusError::PartialCensusError(const std::string& what, CensusTable partial,
                                       std::uint64_t evaluated)
    : BudgetError(what), partial_(std::move(partial)), evaluated_(evaluated) {}

bool covers_length(std::uint64_t max_rank, std::size_t len) {
    if (len >= 62) return false;
    return (std::uint64_t{1} << (len + 1)) - 2 <= max_rank;
}

bool census_complete_for(const BinaryOperation& op, const BitString& image,
                         std::uint64_t max_rank) {
    const auto cap = op.length_cap_for(image);
    return cap.has_value() && covers_length(max_rank, *cap);
}

namespace {

std::vector<BitString> strings_up_to_rank(std::uint64_t max_rank) {
    std::vector<BitString> out;
    out.reserve(static_cast<std::size_t>(max_rank) + 1);
    BitString s;
    for (std::uint64_t r = 0; r <= max_rank; ++r) {
        out.push_back(s);
        s.advance();
    }
    return out;
}

CensusTable build_table(const BinaryOperation& op, std::map<BitString, std::vector<Pair>>& groups,
                        std::uint64_t max_rank, bool allow_complete) {
    CensusTable table;
    for (auto& [image, pairs] : groups) {
        const bool complete = allow_complete && census_complete_for(op, image, max_rank);
        table.emplace(image, PreimageReport(op, image, std::move(pairs), max_rank, complete));
    }
    return table;
}

// Number of strings of length `len` whose rank is <= max_rank.
std::uint64_t strings_of_length_within(std::size_t len, std::uint64_t max_rank) {
    if (len >= 63) return 0;
    const std::uint64_t first = (std::uint64_t{1} << len) - 1;
    if (first > max_rank) return 0;
    return std::min<std::uint64_t>(std::uint64_t{1} << len, max_rank - first + 1);
}

} // namespace

CensusTable preimage_census(const BinaryOperation& op, std::uint64_t max_rank,
                            std::uint64_t budget) {
    if (max_rank >= (std::uint64_t{1} << 32)) throw BudgetError("census max_rank too large");
    const std::vector<BitString> inputs = strings_up_to_rank(max_rank);
    const std::uint64_t total = (max_rank + 1) * (max_rank + 1);
    std::map<BitString, std::vector<Pair>> groups;
    std::uint64_t evaluated = 0;
    for (const BitString& x : inputs) {
        for (const BitString& y : inputs) {
            if (evaluated == budget) {
                CensusTable partial = build_table(op, groups, max_rank, false);
                throw PartialCensusError("census budget of " + std::to_string(budget) +
                                             " evaluations exceeded (needs " +
                                             std::to_string(total) + ")",
                                         std::move(partial), evaluated);
            }
            groups[op(x, y)].emplace_back(x, y);
            ++evaluated;
        }
    }
    return build_table(op, groups, max_rank, true);
}

PreimageReport image_census(const BinaryOperation& op, const BitString& image,
                            std::uint64_t max_rank, std::uint64_t budget) {
    // Longest length fully or partially present among ranks <= max_rank.
    std::size_t longest = 0;
    while (strings_of_length_within(longest + 1, max_rank) > 0) ++longest;

    std::size_t x_limit = longest;
    if (const auto cap = op.length_cap_for(image)) x_limit = std::min(x_limit, *cap);
    const bool additive = op.length_superadditive;
    if (additive) x_limit = std::min(x_limit, image.size());

    std::vector<Pair> found;
    std::uint64_t evaluated = 0;
    for (std::size_t lx = 0; lx <= x_limit; ++lx) {
        const std::uint64_t nx = strings_of_length_within(lx, max_rank);
        const std::size_t y_limit = additive ? std::min(x_limit, image.size() - lx) : x_limit;
        BitString x{std::string(lx, '0')};
        for (std::uint64_t ix = 0; ix < nx; ++ix, x.advance()) {
            for (std::size_t ly = 0; ly <= y_limit; ++ly) {
                const std::uint64_t ny = strings_of_length_within(ly, max_rank);
                if (evaluated + ny > budget) {
                    throw BudgetError("image census for " + image.literal() + " exceeds budget of " +
                                      std::to_string(budget) + " evaluations");
                }
                evaluated += ny;
                BitString y{std::string(ly, '0')};
                for (std::uint64_t iy = 0; iy < ny; ++iy, y.advance()) {
                    if (op(x, y) == image) found.emplace_back(x, y);
                }
            }
        }
    }
    return PreimageReport(op, image, std::move(found), max_rank,
                          census_complete_for(op, image, max_rank));
}

HVerdict check_h_to_one(const CensusTable& census, const AmbiguityBound& h) {
    HVerdict v;
    for (const auto& [image, report] : census) {
        if (!report.complete()) continue;
        ++v.checked;
        const std::uint64_t bound = h(image.size());
        if (report.count() > bound) {
            v.pass = false;
            v.counterexample = image;
            v.count = report.count();
            v.bound = bound;
            return v;
        }
    }
    return v;
}

std::vector<ProfileRow> ambiguity_profile(const CensusTable& census) {
    std::map<std::size_t, ProfileRow> rows;
    for (const auto& [image, report] : census) {
        auto [it, inserted] = rows.try_emplace(image.size(), ProfileRow{image.size(), 0, false});
        ProfileRow& row = it->second;
        if (report.complete()) {
            if (!row.complete) {
                row.complete = true;
                row.max_count = 0;
            }
            row.max_count = std::max(row.max_count, report.count());
        } else if (!row.complete) {
            row.max_count = std::max(row.max_count, report.count());
        }
    }
    std::vector<ProfileRow> out;
    out.reserve(rows.size());
    for (auto& [len, row] : rows) out.push_back(row);
    return out;
}

std::vector<ProfileRow> ambiguity_profile(const BinaryOperation& op, std::uint64_t max_rank,
                                          std::uint64_t budget) {
    return ambiguity_profile(preimage_census(op, max_rank, budget));
}

void write_census_csv(std::ostream& out, const CensusTable& census) {
    out << "output,length,count,complete\n";
    for (const auto& [image, report] : census) {
        out << image.literal() << ',' << image.size() << ',' << report.count() << ','
            << (report.complete() ? 1 : 0) << '\n';
    }
}

void write_profile_csv(std::ostream& out, const std::vector<ProfileRow>& rows) {
    out << "length,max_count,complete\n";
    for (const ProfileRow& r : rows) {
        out << r.length << ',' << r.max_count << ',' << (r.complete ? 1 : 0) << '\n';
    }
}

} // namespace assoc
