#include "assoc/prober.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <set>

#include <json.hpp>

namespace assoc {

namespace {

using Json = nlohmann::ordered_json;

std::uint64_t last_rank(std::size_t len) {
    if (len >= 62) throw BudgetError("length " + std::to_string(len) + " is beyond census range");
    return (std::uint64_t{1} << (len + 1)) - 2;
}

BitString random_string(std::mt19937_64& rng, std::size_t max_len) {
    const std::size_t len = static_cast<std::size_t>(rng() % (max_len + 1));
    std::string bits(len, '0');
    for (char& c : bits) c = (rng() & 1U) ? '1' : '0';
    return BitString{bits};
}

// ceil(log2 k) for k >= 1.
unsigned ceil_log2(std::uint64_t k) {
    return k <= 1 ? 0 : static_cast<unsigned>(std::bit_width(k - 1));
}

void spot_check(const BinaryOperation& op, const ProberOptions& options) {
    std::mt19937_64 rng(options.seed);
    for (std::size_t i = 0; i < options.spot_checks; ++i) {
        const BitString a = random_string(rng, options.spot_check_length);
        const BitString b = random_string(rng, options.spot_check_length);
        const BitString c = random_string(rng, options.spot_check_length);
        if (op(op(a, b), c) != op(a, op(b, c))) {
            throw RefusalError(op.name + " is not associative on (" + a.literal() + "," +
                               b.literal() + "," + c.literal() + ")");
        }
    }
}

BitString product(const BinaryOperation& op, const std::vector<BitString>& chain) {
    BitString acc = chain.front();
    for (std::size_t i = 1; i < chain.size(); ++i) acc = op(acc, chain[i]);
    return acc;
}

// Source of fresh strings for the induction step.
class FreshStream {
public:
    explicit FreshStream(bool restart) : restart_(restart) {}

    std::vector<BitString> draw(std::size_t count, const std::set<BitString>& exclude) {
        if (restart_) cursor_ = BitString{};
        std::vector<BitString> out;
        while (out.size() < count) {
            if (!exclude.contains(cursor_)) out.push_back(cursor_);
            cursor_.advance();
        }
        return out;
    }

private:
    bool restart_;
    BitString cursor_;
};

BitString apply_side(const BinaryOperation& op, Side side, const BitString& factor,
                     const BitString& partner) {
    return side == Side::Left ? op(factor, partner) : op(partner, factor);
}

// One induction step: a witness with c factors becomes one with at least
// c + 1.
AmbiguityWitness grow(const BinaryOperation& op, const AmbiguityWitness& w, FreshStream& fresh) {
    const std::size_t c = w.factors.size();
    std::set<BitString> exclude(w.factors.begin(), w.factors.end());
    exclude.insert(w.t);
    const std::vector<BitString> s = fresh.draw(c * c + c + 1, exclude);
    const bool left = w.side == Side::Left;
    auto extend = [&](const BitString& si) {
        std::vector<BitString> chain;
        if (!left) chain.push_back(si);
        chain.insert(chain.end(), w.chain.begin(), w.chain.end());
        if (left) chain.push_back(si);
        return chain;
    };

    std::vector<BitString> u;
    u.reserve(s.size());
    for (const BitString& si : s) {
        u.push_back(left ? op(w.t, si) : op(si, w.t));
        if (exclude.contains(u.back())) continue;

        // The old factors together with t share the new image u on the same side.
        AmbiguityWitness next;
        next.t = u.back();
        next.side = w.side;
        for (std::size_t j = 0; j < c; ++j) {
            next.factors.push_back(w.factors[j]);
            next.partners.push_back(left ? op(w.partners[j], si) : op(si, w.partners[j]));
        }
        next.factors.push_back(w.t);
        next.partners.push_back(si);
        next.chain = extend(si);
        return next;
    }

    // Every u lands in factors ∪ {t}: some value is hit at least c + 1 times.
    std::map<BitString, std::vector<std::size_t>> hits;
    for (std::size_t i = 0; i < u.size(); ++i) hits[u[i]].push_back(i);
    auto best = std::max_element(hits.begin(), hits.end(), [](const auto& a, const auto& b) {
        return a.second.size() < b.second.size();
    });
    AmbiguityWitness next;
    next.t = best->first;
    next.side = left ? Side::Right : Side::Left;
    for (std::size_t i : best->second) {
        next.factors.push_back(s[i]);
        next.partners.push_back(w.t);
    }
    next.chain = extend(s[best->second.front()]);
    return next;
}

void check_reapplies(const BinaryOperation& op, const AmbiguityWitness& w) {
    for (std::size_t j = 0; j < w.factors.size(); ++j) {
        if (apply_side(op, w.side, w.factors[j], w.partners[j]) != w.t) {
            throw RefusalError(op.name + " broke a witness re-application for factor " +
                               w.factors[j].literal() + "; it is not associative");
        }
    }
    if (product(op, w.chain) != w.t) {
        throw RefusalError(op.name + " chain product differs from the witness image");
    }
}

AmbiguityWitness search(const BinaryOperation& op, std::size_t k, const ProberOptions& options,
                        const BitString& x, const BitString& y, bool shortest) {
    if (!op.associative) {
        throw std::invalid_argument(op.name + " is not declared associative");
    }
    AmbiguityWitness w;
    if (k == 0) {
        w.chain = {y};
        w.t = y;
        return w;
    }
    if (k > options.max_steps) {
        throw BudgetError("witness size " + std::to_string(k) + " exceeds the step budget");
    }
    spot_check(op, options);

    w.t = op(x, y);
    w.chain = {x, y};
    if (x != w.t) {
        w.side = Side::Left;
        w.factors = {x};
        w.partners = {y};
    } else {
        w.side = Side::Right;
        w.factors = {y};
        w.partners = {x};
    }
    FreshStream fresh(shortest);
    try {
        while (w.factors.size() < k) {
            AmbiguityWitness next = grow(op, w, fresh);
            check_reapplies(op, next);
            w = std::move(next);
        }
    } catch (const PartialWitnessError&) {
        throw;
    } catch (const BudgetError& e) {
        throw PartialWitnessError(e.what(), w);
    }
    return w;
}

} // namespace

std::string_view to_string(Side side) { return side == Side::Left ? "LEFT" : "RIGHT"; }

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "PASS";
        case Verdict::Fail: return "FAIL";
        case Verdict::PassUnverifiedCount: return "PASS-UNVERIFIED-COUNT";
    }
    return "FAIL";
}

std::size_t AmbiguityWitness::max_chain_length() const {
    std::size_t m = 0;
    for (const BitString& s : chain) m = std::max(m, s.size());
    return m;
}

std::string witness_record(const AmbiguityWitness& w) {
    auto literals = [](const std::vector<BitString>& v) {
        Json a = Json::array();
        for (const BitString& s : v) a.push_back(s.literal());
        return a;
    };
    Json j;
    j["t"] = w.t.literal();
    j["side"] = std::string(to_string(w.side));
    j["factors"] = literals(w.factors);
    j["partners"] = literals(w.partners);
    j["chain"] = literals(w.chain);
    return j.dump();
}

AmbiguityWitness parse_witness_record(std::string_view text) {
    const Json j = Json::parse(text);
    auto strings = [](const Json& a) {
        std::vector<BitString> v;
        for (const auto& s : a) v.push_back(BitString::parse_literal(s.get<std::string>()));
        return v;
    };
    AmbiguityWitness w;
    w.t = BitString::parse_literal(j.at("t").get<std::string>());
    const std::string side = j.at("side").get<std::string>();
    if (side != "LEFT" && side != "RIGHT") throw std::invalid_argument("bad witness side " + side);
    w.side = side == "LEFT" ? Side::Left : Side::Right;
    w.factors = strings(j.at("factors"));
    w.partners = strings(j.at("partners"));
    w.chain = strings(j.at("chain"));
    return w;
}

AmbiguityWitness find_witness(const BinaryOperation& op, std::size_t k,
                              const ProberOptions& options) {
    return search(op, k, options, BitString{"0"}, BitString{"1"}, false);
}

AmbiguityWitness find_short_witness(const BinaryOperation& op, std::size_t k,
                                    const ProberOptions& options) {
    return search(op, k, options, BitString{}, BitString{"00"}, true);
}

std::size_t short_factor_ceiling(std::size_t k) {
    // ceil(2 log2(k+1)) = ceil(log2((k+1)^2)).
    const std::uint64_t sq = static_cast<std::uint64_t>(k + 1) * (k + 1);
    return ceil_log2(sq);
}

WitnessVerdict verify_witness(const BinaryOperation& op, const AmbiguityWitness& w,
                              std::uint64_t max_rank, std::uint64_t budget) {
    WitnessVerdict v;
    if (w.factors.size() != w.partners.size()) {
        v.failures.push_back("factor and partner lists differ in length");
    }
    if (w.chain.empty()) {
        v.failures.push_back("empty factor chain");
    } else if (const BitString p = product(op, w.chain); p != w.t) {
        v.failures.push_back("chain product " + p.literal() + " != t " + w.t.literal());
    }
    std::set<BitString> seen;
    for (std::size_t j = 0; j < std::min(w.factors.size(), w.partners.size()); ++j) {
        const BitString& f = w.factors[j];
        const BitString& p = w.partners[j];
        if (f == w.t) v.failures.push_back("factor " + f.literal() + " equals t");
        if (!seen.insert(f).second) v.failures.push_back("factor " + f.literal() + " repeated");
        const BitString got = apply_side(op, w.side, f, p);
        if (got != w.t) {
            const std::string pair = w.side == Side::Left ? "(" + f.literal() + "," + p.literal() + ")"
                                                          : "(" + p.literal() + "," + f.literal() + ")";
            v.failures.push_back("pair " + pair + " maps to " + got.literal() + ", not " +
                                 w.t.literal());
        }
    }
    try {
        const PreimageReport report = image_census(op, w.t, max_rank, budget);
        v.census_count = report.count();
        v.census_complete = report.complete();
    } catch (const BudgetError&) {
        v.census_complete = false;
    }
    if (v.census_complete && v.census_count < w.factors.size()) {
        v.failures.push_back("census finds " + std::to_string(v.census_count) +
                             " preimages, fewer than " + std::to_string(w.factors.size()) +
                             " factors");
    }
    if (!v.failures.empty()) v.verdict = Verdict::Fail;
    else v.verdict = v.census_complete ? Verdict::Pass : Verdict::PassUnverifiedCount;
    return v;
}

unsigned derive_j(const BinaryOperation& op, const LengthBoundParams& params) {
    if (params.m > 12) throw BudgetError("length threshold m too large to brute-force");
    std::size_t widest = 0;
    for (BitString x; x.size() <= params.m; x.advance()) {
        for (BitString y; y.size() <= params.m; y.advance()) {
            widest = std::max(widest, op(x, y).size());
        }
    }
    const unsigned from_table = 1 + ceil_log2(std::max<std::size_t>(widest, 1));
    return std::max({params.i + 1, from_table, 2U});
}

BoundReport measure_output_bound(const BinaryOperation& op, const LengthBoundParams& params,
                                 std::size_t k_max, std::size_t samples, std::uint64_t seed,
                                 std::size_t max_factor_length) {
    if (!op.polynomial_output) {
        throw std::invalid_argument(op.name + " is not declared to have polynomially bounded output");
    }
    if (k_max < 2) throw std::invalid_argument("k_max must be at least 2");
    BoundReport report;
    report.j = derive_j(op, params);
    std::mt19937_64 rng(seed);

    for (std::size_t n = 0; n < samples; ++n) {
        const std::size_t k = 2 + n % (k_max - 1);
        std::vector<BitString> factors;
        std::size_t widest = 2;
        for (std::size_t i = 0; i < k; ++i) {
            factors.push_back(random_string(rng, max_factor_length));
            widest = std::max(widest, factors.back().size());
        }
        // Random binary bracketing of factors[lo, hi).
        auto bracket = [&](auto& self, std::size_t lo, std::size_t hi)
            -> std::pair<BitString, std::string> {
            if (hi - lo == 1) return {factors[lo], factors[lo].literal()};
            const std::size_t mid = lo + 1 + static_cast<std::size_t>(rng() % (hi - lo - 1));
            auto [a, ea] = self(self, lo, mid);
            auto [b, eb] = self(self, mid, hi);
            return {op(a, b), "(" + ea + " " + eb + ")"};
        };
        auto [value, expr] = bracket(bracket, 0, k);
        ++report.samples;

        const double exponent = std::pow(static_cast<double>(report.j), ceil_log2(k));
        const double log_bound = exponent * std::log2(static_cast<double>(widest));
        bool holds = true;
        if (log_bound < 62) {
            std::uint64_t bound = 1;
            const auto e = static_cast<std::uint64_t>(exponent);
            for (std::uint64_t i = 0; i < e; ++i) bound *= widest;
            holds = value.size() < bound;
        }
        if (!holds) report.violations.push_back({factors, expr, value.size()});
    }
    return report;
}

double log2_f(std::uint64_t n, std::uint64_t l) {
    if (n <= 1) return -std::numeric_limits<double>::infinity();
    const unsigned base = ceil_log2(n * n);
    return std::pow(static_cast<double>(l), ceil_log2(n)) * std::log2(static_cast<double>(base));
}

std::uint64_t g_inverse(std::size_t m, std::uint64_t l) {
    const double log_m = m == 0 ? -std::numeric_limits<double>::infinity()
                                : std::log2(static_cast<double>(m));
    std::uint64_t best = 1;
    for (std::uint64_t n = 2; n < (std::uint64_t{1} << 20); ++n) {
        if (log2_f(n, l) > log_m + 1e-9) break;
        best = n;
    }
    return best;
}

LowerBoundDemo lower_bound_demo(const BinaryOperation& op, const LengthBoundParams& params,
                                std::size_t N, std::uint64_t budget,
                                const ProberOptions& options) {
    if (N > 12) throw BudgetError("lower-bound demo census over lengths <= " + std::to_string(N) +
                                  " is beyond budget");
    LowerBoundDemo demo;
    demo.N = N;
    for (BitString s; s.size() <= N; s.advance()) {
        const auto cap = op.length_cap_for(s);
        if (!cap) {
            throw BudgetError(op.name + " declares no preimage length bound; the census for " +
                              s.literal() + " cannot be completed");
        }
        const PreimageReport r = image_census(op, s, last_rank(*cap), budget);
        demo.census_max = std::max(demo.census_max, r.count());
    }
    demo.n = 8 + demo.census_max;
    demo.j = derive_j(op, params);
    demo.l = static_cast<std::uint64_t>(demo.j) * demo.j;
    demo.witness = find_short_witness(op, demo.n - 1, options);
    demo.m = demo.witness.t.size();

    const auto cap = op.length_cap_for(demo.witness.t);
    const std::uint64_t rank = cap && *cap < 62 ? last_rank(*cap) : last_rank(std::min<std::size_t>(demo.m, 20));
    const WitnessVerdict v = verify_witness(op, demo.witness, rank, budget);
    if (v.verdict == Verdict::Fail) {
        throw std::logic_error("lower-bound witness failed verification: " + v.failures.front());
    }
    demo.count_complete = v.census_complete;
    demo.verified_count = v.census_complete ? v.census_count : demo.witness.factors.size();
    demo.g_of_m = g_inverse(demo.m, demo.l);
    demo.ratio = static_cast<double>(demo.verified_count) / static_cast<double>(demo.g_of_m);
    return demo;
}

} // namespace assoc
