#include "assoc/gconstruct.hpp"

#include <algorithm>
#include <iterator>
#include <limits>
#include <ostream>
#include <sstream>

namespace assoc {

// ---------------------------------------------------------------- KTable

namespace {

// Long operands are shown by prefix and length.
std::string brief(const BitString& s) {
    if (s.size() <= 40) return s.literal();
    return s.bits().substr(0, 16) + "...(" + std::to_string(s.size()) + " bits)";
}

std::size_t hash_factors(std::span<const KTable::EntryId> f) noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (KTable::EntryId id : f) {
        h ^= id + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

} // namespace

std::size_t KTable::KeyHash::operator()(std::string_view s) const noexcept {
    return std::hash<std::string_view>{}(s);
}
std::size_t KTable::KeyHash::operator()(EntryId id) const noexcept {
    return (*this)(std::string_view((*entries)[id].key.bits()));
}
bool KTable::KeyEq::operator()(std::string_view s, EntryId id) const noexcept {
    return (*entries)[id].key.bits() == s;
}
std::size_t KTable::ValueHash::operator()(std::span<const EntryId> f) const noexcept {
    return hash_factors(f);
}
std::size_t KTable::ValueHash::operator()(EntryId id) const noexcept {
    return hash_factors((*entries)[id].factors);
}
bool KTable::ValueEq::operator()(std::span<const EntryId> f, EntryId id) const noexcept {
    const auto& g = (*entries)[id].factors;
    return std::equal(f.begin(), f.end(), g.begin(), g.end());
}

KTable::KTable()
    : entries_(std::make_unique<std::deque<Entry>>()),
      key_index_(64, KeyHash{entries_.get()}, KeyEq{entries_.get()}),
      value_index_(64, ValueHash{entries_.get()}, ValueEq{entries_.get()}) {}

std::optional<KTable::EntryId> KTable::find_key(std::string_view key) const {
    auto it = key_index_.find(key);
    if (it == key_index_.end()) return std::nullopt;
    return *it;
}

std::optional<KTable::EntryId> KTable::find_value(std::span<const EntryId> factors) const {
    auto it = value_index_.find(factors);
    if (it == value_index_.end()) return std::nullopt;
    return *it;
}

bool KTable::is_prime(EntryId id) const {
    const auto& f = entry(id).factors;
    return f.size() == 1 && f.front() == id;
}

KTable::EntryId KTable::push(BitString key, std::vector<EntryId> factors) {
    if (entries_->size() >= std::numeric_limits<EntryId>::max()) {
        throw BudgetError("factor table is full");
    }
    const auto id = static_cast<EntryId>(entries_->size());
    entries_->push_back(Entry{std::move(key), std::move(factors)});
    key_index_.insert(id);
    value_index_.insert(id);
    return id;
}

KTable::EntryId KTable::append_prime(BitString key) {
    if (find_key(key.bits())) {
        throw std::logic_error("factor table already keys " + key.literal());
    }
    const auto id = static_cast<EntryId>(entries_->size());
    // {key} is new: no other entry can hold the singleton of an unkeyed id.
    return push(std::move(key), std::vector<EntryId>{id});
}

KTable::EntryId KTable::append_product(BitString key, std::vector<EntryId> factors) {
    if (find_key(key.bits())) {
        throw std::logic_error("factor table already keys " + key.literal());
    }
    if (factors.empty() || !std::is_sorted(factors.begin(), factors.end())) {
        throw std::logic_error("product factors must be a nonempty sorted id list");
    }
    for (EntryId f : factors) {
        if (f >= entries_->size() || !is_prime(f)) {
            throw std::logic_error("product factor " + std::to_string(f) + " is not a prime entry");
        }
    }
    if (auto existing = find_value(factors)) {
        throw std::logic_error("factor table already maps " + entry(*existing).key.literal() +
                               " to the value offered for " + key.literal());
    }
    return push(std::move(key), std::move(factors));
}

MultisetOfStrings KTable::value(EntryId id) const {
    std::vector<BitString> elems;
    for (EntryId f : entry(id).factors) elems.push_back(entry(f).key);
    return MultisetOfStrings(std::move(elems));
}

std::optional<std::vector<KTable::EntryId>> KTable::factor_ids(const MultisetOfStrings& m) const {
    std::vector<EntryId> ids;
    ids.reserve(m.size());
    for (const BitString& s : m) {
        auto id = find_key(s.bits());
        if (!id || !is_prime(*id)) return std::nullopt;
        ids.push_back(*id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

void KTable::dump(std::ostream& out) const {
    for (EntryId id = 0; id < entries_->size(); ++id) {
        out << id << ',' << entry(id).key.literal() << ',' << multiset_encode(value(id)).bits()
            << '\n';
    }
}

std::string KTable::dump() const {
    std::ostringstream out;
    dump(out);
    return out.str();
}

// ----------------------------------------------------------- ReplayOrder

std::uint64_t ReplayOrder::pairs_with_product_at_most(std::uint64_t x) {
    if (x == 0) return 0;
    std::uint64_t s = 0;
    while ((s + 1) * (s + 1) <= x) ++s;
    std::uint64_t total = 0;
    for (std::uint64_t i = 1; i <= s; ++i) total += x / i;
    return 2 * total - s * s;
}

std::uint64_t ReplayOrder::index_of(std::uint64_t m, std::uint64_t n, std::uint64_t limit) {
    const unsigned __int128 h =
        (static_cast<unsigned __int128>(m) + 1) * (static_cast<unsigned __int128>(n) + 1);
    if (h > limit) {
        throw BudgetError("replay position of pair (" + std::to_string(m) + "," +
                          std::to_string(n) + ") is out of range");
    }
    const auto prod = static_cast<std::uint64_t>(h);
    std::uint64_t before = pairs_with_product_at_most(prod - 1);
    // Same product, larger first component comes first.
    for (std::uint64_t d = 1; d * d <= prod; ++d) {
        if (prod % d != 0) continue;
        const std::uint64_t e = prod / d;
        if (d > m + 1) ++before;
        if (e != d && e > m + 1) ++before;
    }
    return before;
}

namespace {

// Smallest-prime-factor sieve shared by all walkers; grows on demand.
const std::vector<std::uint32_t>& spf_table(std::uint64_t needed) {
    static std::vector<std::uint32_t> spf;
    if (needed < spf.size()) return spf;
    std::size_t size = std::max<std::size_t>(1024, spf.size());
    while (size <= needed) size *= 2;
    spf.assign(size, 0);
    for (std::size_t i = 2; i < size; ++i) {
        if (spf[i] != 0) continue;
        for (std::size_t j = i; j < size; j += i) {
            if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
        }
    }
    return spf;
}

} // namespace

ReplayOrder::Walker::Walker() { load_product(); }

void ReplayOrder::Walker::load_product() {
    divisors_.assign(1, 1);
    std::uint64_t rest = product_;
    if (rest < (std::uint64_t{1} << 31)) {
        const auto& spf = spf_table(rest);
        while (rest > 1) {
            const std::uint64_t p = spf[rest];
            std::size_t mult = 0;
            while (rest % p == 0) {
                rest /= p;
                ++mult;
            }
            const std::size_t base = divisors_.size();
            std::uint64_t pk = 1;
            for (std::size_t e = 0; e < mult; ++e) {
                pk *= p;
                for (std::size_t i = 0; i < base; ++i) divisors_.push_back(divisors_[i] * pk);
            }
        }
    } else {
        divisors_.clear();
        for (std::uint64_t d = 1; d * d <= rest; ++d) {
            if (rest % d != 0) continue;
            divisors_.push_back(d);
            if (rest / d != d) divisors_.push_back(rest / d);
        }
    }
    std::sort(divisors_.begin(), divisors_.end(), std::greater<>());
    pos_ = 0;
}

std::pair<std::uint64_t, std::uint64_t> ReplayOrder::Walker::current() const {
    const std::uint64_t d = divisors_[pos_];
    return {d - 1, product_ / d - 1};
}

void ReplayOrder::Walker::next() {
    ++index_;
    if (++pos_ == divisors_.size()) {
        ++product_;
        load_product();
    }
}

// -------------------------------------------------------------- GMachine

GMachine::GMachine(AmbiguityBound g, GMachineOptions options)
    : g_(std::move(g)), options_(std::move(options)) {}

std::size_t GMachine::product_length(std::size_t k) {
    if (auto it = length_for_size_.find(k); it != length_for_size_.end()) return it->second;
    const std::uint64_t ceiling = options_.search_ceiling;
    auto fail = [&] {
        return NonTerminationError("no length n <= " + std::to_string(ceiling) + " has " + g_.name +
                                   "(n) > 2^" + std::to_string(k) + " - 2; g looks bounded");
    };
    if (k >= 64) throw fail();
    const std::uint64_t threshold = (std::uint64_t{1} << k) - 2;
    if (g_(ceiling) <= threshold) throw fail();
    std::uint64_t lo = 0, hi = ceiling;  // g(hi) > threshold
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        if (g_(mid) > threshold) hi = mid;
        else lo = mid + 1;
    }
    const auto len = static_cast<std::size_t>(lo);
    if (len > (std::size_t{1} << 16) && options_.growth_listener) options_.growth_listener(k, len);
    length_for_size_.emplace(k, len);
    return len;
}

BitString GMachine::claim(std::size_t min_length) {
    std::uint64_t probes = 0;
    for (std::size_t n = min_length;; ++n) {
        if (n >= next_free_.size()) next_free_.resize(n + 1);
        std::string& cand = next_free_[n];
        if (cand.size() != n) {
            // Uninitialised (size 0 for n > 0) or already rolled past length n.
            if (cand.size() > n) continue;
            cand.assign(n, '0');
        }
        while (cand.size() == n && table_.find_key(cand)) {
            if (++probes > options_.search_ceiling) {
                throw NonTerminationError("product search skipped more than " +
                                          std::to_string(options_.search_ceiling) +
                                          " keyed strings");
            }
            shortlex_increment(cand);
        }
        if (cand.size() != n) continue;  // length n exhausted
        BitString found{cand};
        shortlex_increment(cand);
        return found;
    }
}

KTable::EntryId GMachine::factors_id(const BitString& s) {
    if (auto id = table_.find_key(s.bits())) return *id;
    const auto id = table_.append_prime(s);
    produced_.push_back(0);
    return id;
}

KTable::EntryId GMachine::product_id(std::vector<KTable::EntryId> factors) {
    if (auto id = table_.find_value(factors)) return *id;
    BitString key = claim(product_length(factors.size()));
    const auto id = table_.append_product(std::move(key), std::move(factors));
    produced_.push_back(0);
    return id;
}

KTable::EntryId GMachine::step() {
    const auto [m, n] = walker_.current();
    const KTable::EntryId fa = factors_id(unrank_u64(m));
    const KTable::EntryId fb = factors_id(unrank_u64(n));
    const auto& va = table_.entry(fa).factors;
    const auto& vb = table_.entry(fb).factors;
    std::vector<KTable::EntryId> merged;
    merged.reserve(va.size() + vb.size());
    std::merge(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(merged));
    const KTable::EntryId out = product_id(std::move(merged));
    ++produced_[out];
    walker_.next();
    return out;
}

void GMachine::replay_to(std::uint64_t target) {
    if (target > options_.pair_budget) {
        throw BudgetError("replay to pair " + std::to_string(target) + " exceeds the budget of " +
                          std::to_string(options_.pair_budget) + " pairs");
    }
    while (cursor() < target) step();
}

std::uint64_t GMachine::replay_index(const BitString& a, const BitString& b) const {
    const std::string over = "pair (" + brief(a) + "," + brief(b) +
                             ") lies beyond the replay budget of " +
                             std::to_string(options_.pair_budget) + " pairs";
    if (a.size() >= 62 || b.size() >= 62) throw BudgetError(over);
    const std::uint64_t m = rank_u64(a);
    const std::uint64_t n = rank_u64(b);
    // index >= (m+1)(n+1) - 1, so a product past the budget needs no exact count.
    const unsigned __int128 h =
        (static_cast<unsigned __int128>(m) + 1) * (static_cast<unsigned __int128>(n) + 1);
    if (h > static_cast<unsigned __int128>(options_.pair_budget)) throw BudgetError(over);
    const std::uint64_t idx = ReplayOrder::index_of(m, n);
    if (idx >= options_.pair_budget) throw BudgetError(over);
    return idx;
}

MultisetOfStrings GMachine::get_factors(const BitString& s) {
    return table_.value(factors_id(s));
}

BitString GMachine::get_product(const MultisetOfStrings& a) {
    if (a.empty()) throw std::invalid_argument("get_product needs a nonempty multiset");
    auto ids = table_.factor_ids(a);
    if (!ids) throw std::invalid_argument("multiset " + to_string(a) + " contains a non-prime string");
    return table_.entry(product_id(std::move(*ids))).key;
}

std::optional<KTable::EntryId> GMachine::keyed_product(const BitString& a,
                                                       const BitString& b) const {
    const auto fa = table_.find_key(a.bits());
    const auto fb = table_.find_key(b.bits());
    if (!fa || !fb) return std::nullopt;
    const auto& va = table_.entry(*fa).factors;
    const auto& vb = table_.entry(*fb).factors;
    std::vector<KTable::EntryId> merged;
    std::merge(va.begin(), va.end(), vb.begin(), vb.end(), std::back_inserter(merged));
    return table_.find_value(merged);
}

BitString GMachine::eval(const BitString& a, const BitString& b) {
    // Keys and values never change once appended.
    if (const auto known = keyed_product(a, b)) return table_.entry(*known).key;
    const std::uint64_t idx = replay_index(a, b);
    replay_to(std::max(cursor(), idx + 1));
    const auto out = keyed_product(a, b);
    if (!out) throw std::logic_error("replayed pair left its product unkeyed");
    return table_.entry(*out).key;
}

MultisetOfStrings GMachine::prfact(const BitString& s) {
    if (const auto known = table_.find_key(s.bits())) return table_.value(*known);
    const std::uint64_t idx = replay_index(s, BitString{});
    replay_to(std::max(cursor(), idx + 1));
    const auto id = table_.find_key(s.bits());
    if (!id) throw std::logic_error("replay through (s, @e) left s unkeyed");
    return table_.value(*id);
}

std::vector<ImageCount> GMachine::evaluated_census() const {
    std::vector<ImageCount> out;
    for (KTable::EntryId id = 0; id < produced_.size(); ++id) {
        if (produced_[id] == 0) continue;
        out.push_back({table_.entry(id).key, produced_[id], table_.entry(id).factors.size()});
    }
    std::sort(out.begin(), out.end(),
              [](const ImageCount& a, const ImageCount& b) { return a.image < b.image; });
    return out;
}

BinaryOperation as_operation(std::shared_ptr<GMachine> machine) {
    BinaryOperation op;
    op.name = "gfun:" + machine->g().name;
    op.associative = true;
    op.commutative = true;
    op.polynomial_output = false;
    op.declared_ambiguity = machine->g();
    op.apply = [machine](const BitString& a, const BitString& b) { return machine->eval(a, b); };
    return op;
}

} // namespace assoc
