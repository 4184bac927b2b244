// A g(n)-to-one, total, commutative, associative function built from an
// append-only factor table that is filled by replaying every input pair in a
// fixed order.
//
// Every string x is eventually keyed to a multiset of irreducible factors
// prfact(x). An evaluation a*b replays all pairs that precede (a, b), then
// looks up (or assigns) the string whose factors are prfact(a) ∪ prfact(b).
// New product strings are the shortlex-least unkeyed y with
// g(|y|) > 2^k - 2, k the multiset size, so no image has more than g(|y|)
// preimages.

#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "assoc/ambiguity.hpp"
#include "assoc/errors.hpp"
#include "assoc/strings.hpp"

namespace assoc {

/// Append-only association of bitstring keys to multisets of prime keys.
///
/// A prime entry is keyed to the singleton of itself; a product entry to the
/// union of its operands' factors. Factors are stored as sorted ids of prime
/// entries. Keys are unique and so are values; both are checked on append.
class KTable {
public:
    using EntryId = std::uint32_t;

    struct Entry {
        BitString key;
        std::vector<EntryId> factors;  // sorted ids of prime entries
    };

    KTable();
    KTable(KTable&&) noexcept = default;
    KTable& operator=(KTable&&) noexcept = default;
    KTable(const KTable&) = delete;
    KTable& operator=(const KTable&) = delete;

    std::optional<EntryId> find_key(std::string_view key) const;
    std::optional<EntryId> find_value(std::span<const EntryId> factors) const;

    /// Keys `key` to {key}. Throws std::logic_error if already keyed.
    EntryId append_prime(BitString key);
    /// Keys `key` to `factors`. Throws std::logic_error if the key or the value
    /// is already present, or if a factor id is not a prime entry.
    EntryId append_product(BitString key, std::vector<EntryId> factors);

    std::size_t size() const noexcept { return entries_->size(); }
    const Entry& entry(EntryId id) const { return (*entries_)[id]; }
    bool is_prime(EntryId id) const;

    /// The multiset of factor strings for entry `id`.
    MultisetOfStrings value(EntryId id) const;

    /// Converts a multiset of prime keys to sorted factor ids; nullopt if some
    /// element is not a prime key.
    std::optional<std::vector<EntryId>> factor_ids(const MultisetOfStrings& m) const;

    /// One line per entry: `<index>,<key>,<multiset_encode(value)>`.
    void dump(std::ostream& out) const;
    std::string dump() const;

private:
    struct KeyHash {
        using is_transparent = void;
        const std::deque<Entry>* entries;
        std::size_t operator()(std::string_view s) const noexcept;
        std::size_t operator()(EntryId id) const noexcept;
    };
    struct KeyEq {
        using is_transparent = void;
        const std::deque<Entry>* entries;
        bool operator()(EntryId a, EntryId b) const noexcept { return a == b; }
        bool operator()(std::string_view s, EntryId id) const noexcept;
        bool operator()(EntryId id, std::string_view s) const noexcept { return (*this)(s, id); }
    };
    struct ValueHash {
        using is_transparent = void;
        const std::deque<Entry>* entries;
        std::size_t operator()(std::span<const EntryId> f) const noexcept;
        std::size_t operator()(EntryId id) const noexcept;
    };
    struct ValueEq {
        using is_transparent = void;
        const std::deque<Entry>* entries;
        bool operator()(EntryId a, EntryId b) const noexcept { return a == b; }
        bool operator()(std::span<const EntryId> f, EntryId id) const noexcept;
        bool operator()(EntryId id, std::span<const EntryId> f) const noexcept { return (*this)(f, id); }
    };

    EntryId push(BitString key, std::vector<EntryId> factors);

    std::unique_ptr<std::deque<Entry>> entries_;
    std::unordered_set<EntryId, KeyHash, KeyEq> key_index_;
    std::unordered_set<EntryId, ValueHash, ValueEq> value_index_;
};

/// Enumeration of all rank pairs (m, n) used for replay: by (m+1)(n+1),
/// ties broken by larger m first. Pairs where one side is small come early,
/// so evaluating x*c for a long x and a short c replays O(|x| c log) pairs
/// rather than the quadratic prefix of the Cantor diagonal.
class ReplayOrder {
public:
    /// Zero-based position of (m, n); throws BudgetError when (m+1)(n+1)
    /// exceeds `limit` (the count would be astronomically large).
    static std::uint64_t index_of(std::uint64_t m, std::uint64_t n,
                                  std::uint64_t limit = std::uint64_t{1} << 40);

    /// Number of pairs (m, n) with (m+1)(n+1) <= x.
    static std::uint64_t pairs_with_product_at_most(std::uint64_t x);

    /// Sequential walk through the order.
    class Walker {
    public:
        Walker();
        std::pair<std::uint64_t, std::uint64_t> current() const;
        void next();
        std::uint64_t index() const noexcept { return index_; }

    private:
        void load_product();
        std::uint64_t product_ = 1;
        std::vector<std::uint64_t> divisors_;  // descending
        std::size_t pos_ = 0;
        std::uint64_t index_ = 0;
    };
};

struct GMachineOptions {
    /// Maximum number of pairs that may be replayed.
    std::uint64_t pair_budget = 12'000'000;
    /// Ceiling on product-string length and on keyed candidates skipped by a
    /// single product search.
    std::uint64_t search_ceiling = std::uint64_t{1} << 20;
    /// Called when a product search settles on a length above 2^16.
    std::function<void(std::size_t factors, std::size_t length)> growth_listener;
};

/// An image together with how many replayed pairs produced it.
struct ImageCount {
    BitString image;
    std::size_t count = 0;
    std::size_t factors = 0;  // ‖prfact(image)‖
};

class GMachine {
public:
    explicit GMachine(AmbiguityBound g, GMachineOptions options = {});

    const AmbiguityBound& g() const noexcept { return g_; }
    const KTable& table() const noexcept { return table_; }

    /// Number of pairs replayed so far; pair i of ReplayOrder is processed
    /// iff i < cursor().
    std::uint64_t cursor() const noexcept { return walker_.index(); }

    /// The table value of s, keying s as a prime first if it is unkeyed.
    MultisetOfStrings get_factors(const BitString& s);

    /// The key whose value is `a`, or the shortlex-least unkeyed y with
    /// g(|y|) > 2^‖a‖ - 2 after keying y to `a`. Elements of `a` must be
    /// prime keys (std::invalid_argument otherwise).
    BitString get_product(const MultisetOfStrings& a);

    /// a*b. Replays every pair up to and including (a, b) unless the product
    /// is already keyed.
    BitString eval(const BitString& a, const BitString& b);

    /// prfact(s), replaying through the pair (s, ε) if s is unkeyed.
    MultisetOfStrings prfact(const BitString& s);

    /// Replays pairs until cursor() == target.
    void replay_to(std::uint64_t target);

    /// Replay position of (a, b); BudgetError when beyond the pair budget.
    std::uint64_t replay_index(const BitString& a, const BitString& b) const;

    /// Per product key, the number of replayed pairs that produced it.
    std::vector<ImageCount> evaluated_census() const;

    /// Shortest length n with g(n) > 2^k - 2.
    std::size_t product_length(std::size_t k);

private:
    KTable::EntryId factors_id(const BitString& s);
    std::optional<KTable::EntryId> keyed_product(const BitString& a, const BitString& b) const;
    KTable::EntryId product_id(std::vector<KTable::EntryId> factors);
    KTable::EntryId step();
    BitString claim(std::size_t min_length);

    AmbiguityBound g_;
    GMachineOptions options_;
    KTable table_;
    ReplayOrder::Walker walker_;
    std::vector<std::uint32_t> produced_;  // per entry id: replayed pairs mapping to it
    std::vector<std::string> next_free_;   // per length: shortlex cursor over unkeyed strings
    std::map<std::size_t, std::size_t> length_for_size_;
};

/// Adapts a shared machine as a BinaryOperation. The machine is mutated by
/// every call; callers serialize access.
BinaryOperation as_operation(std::shared_ptr<GMachine> machine);

} // namespace assoc
