#include "assoc/aowf.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>

#include "assoc/errors.hpp"

namespace assoc {

namespace {

std::size_t ones(const BitString& x) {
    return static_cast<std::size_t>(std::count(x.bits().begin(), x.bits().end(), '1'));
}

bool has_prefix(const BitString& s, std::string_view p) {
    return s.bits().compare(0, p.size(), p) == 0 && s.size() >= p.size();
}

} // namespace

namespace relations {

WitnessRelation parity_up() {
    WitnessRelation rel;
    rel.name = "parity-up";
    rel.rho = [](std::size_t n) { return n + 1; };
    rel.verify = [](const BitString& x, const BitString& w) {
        return w.size() == x.size() + 1 && ones(x) % 2 == 1 &&
               w.bits().compare(0, x.size(), x.bits()) == 0 && w[x.size()] == '1';
    };
    rel.f = bounds::constant(1);
    return rel;
}

WitnessRelation mod3_few() {
    WitnessRelation rel;
    rel.name = "mod3-few";
    rel.rho = [](std::size_t n) { return n + 2; };
    rel.verify = [](const BitString& x, const BitString& w) {
        if (w.size() != x.size() + 2 || w.bits().compare(0, x.size(), x.bits()) != 0) return false;
        const std::string_view tail = std::string_view(w.bits()).substr(x.size());
        if (tail == "11") return false;
        const unsigned value = static_cast<unsigned>((tail[0] - '0') * 2 + (tail[1] - '0'));
        return value < ones(x) % 3 + 1;
    };
    rel.f = bounds::constant(3);
    return rel;
}

WitnessRelation by_name(std::string_view name) {
    if (name == "parity-up") return parity_up();
    if (name == "mod3-few") return mod3_few();
    throw std::invalid_argument("unknown relation '" + std::string(name) +
                                "' (expected parity-up, mod3-few)");
}

} // namespace relations

std::vector<BitString> wit(const WitnessRelation& rel, const BitString& x, std::size_t ceiling) {
    const std::size_t len = rel.rho(x.size());
    if (len > ceiling) {
        throw BudgetError("witness length " + std::to_string(len) + " for " + x.literal() +
                          " exceeds the brute-force ceiling " + std::to_string(ceiling));
    }
    std::vector<BitString> out;
    std::string w(len, '0');
    const std::uint64_t total = std::uint64_t{1} << len;
    for (std::uint64_t i = 0; i < total; ++i, shortlex_increment(w)) {
        BitString cand{w};
        if (rel.verify(x, cand)) out.push_back(std::move(cand));
    }
    return out;
}

SigmaAowf::SigmaAowf(WitnessRelation rel) : rel_(std::move(rel)) {}

BitString SigmaAowf::gamma(const BitString& d) const {
    auto [x, w] = pair_decode(d);
    if (w.size() == rel_.rho(x.size()) && rel_.verify(x, w)) return BitString{"1"} + x;
    return BitString{"0"} + d;
}

BitString SigmaAowf::beta(const BitString& c) const {
    if (c.empty()) return BitString{"111"};
    if (c[0] == '1') return BitString{"0"} + gamma(c.suffix(1));
    return BitString{"00"} + c.suffix(3);
}

BitString SigmaAowf::alpha(const BitString& a, const BitString& b) {
    if (a.size() < 2 || b.size() < 2) {
        throw std::domain_error("alpha needs operands of length >= 2, got " + a.literal() + " and " +
                                b.literal());
    }
    std::string out;
    out.reserve(a.size() + b.size() - 1);
    out += '0';
    out += (b[0] == '1' && a[1] == '1') ? '1' : '0';
    out += (a[0] == '1' && b[1] == '1') ? '1' : '0';
    out.append(a.bits(), 2);
    out.append(b.bits(), 2);
    return BitString{out};
}

BitString SigmaAowf::sigma(const BitString& s, const BitString& t) const {
    return alpha(beta(s), beta(t));
}

std::size_t SigmaAowf::preimage_length_cap(const BitString& y) const {
    if (y.size() < 3 || y[0] != '0') return 0;
    const BitString rest = y.suffix(3);
    std::size_t cap = y.size();
    auto gate_length = [&](const BitString& x) {
        const BitString widest{std::string(rel_.rho(x.size()), '1')};
        return 1 + pair_encode(x, widest).size();
    };
    for (std::size_t n = 0; n <= rest.size(); ++n) {
        cap = std::max(cap, gate_length(BitString{rest.bits().substr(0, n)}));
        cap = std::max(cap, gate_length(rest.suffix(rest.size() - n)));
    }
    return cap;
}

AmbiguityBound SigmaAowf::declared_ambiguity() const {
    AmbiguityBound f = rel_.f;
    return {"aowf-" + rel_.name,
            [f](std::uint64_t n) -> std::uint64_t {
                if (n < 2) return 0;
                const std::uint64_t v = f(n - 2) + 9;
                return (n - 2) * v * v;
            },
            true};
}

BinaryOperation SigmaAowf::as_operation() const {
    BinaryOperation op;
    op.name = "aowf:" + rel_.name;
    auto self = std::make_shared<const SigmaAowf>(*this);
    op.apply = [self](const BitString& s, const BitString& t) { return self->sigma(s, t); };
    op.associative = true;
    op.preimage_length_cap = [self](const BitString& y) -> std::optional<std::size_t> {
        return self->preimage_length_cap(y);
    };
    op.declared_ambiguity = declared_ambiguity();
    return op;
}

BetaBranch beta_branch(const BitString& e) {
    if (e.bits() == "111") return BetaBranch::Empty;
    if (has_prefix(e, "01")) return BetaBranch::Gate;
    if (has_prefix(e, "00")) return BetaBranch::Drop;
    return BetaBranch::None;
}

std::size_t beta_preimage_bound(const WitnessRelation& rel, const BitString& e) {
    switch (beta_branch(e)) {
        case BetaBranch::Empty: return 1;
        case BetaBranch::Gate: return static_cast<std::size_t>(rel.f(e.size() - 2));
        case BetaBranch::Drop: return 8;
        case BetaBranch::None: return 0;
    }
    return 0;
}

std::vector<BitString> beta_preimages(const SigmaAowf& machine, const BitString& e,
                                      std::size_t len_cap) {
    if (len_cap >= 40) throw BudgetError("beta preimage search length cap too large");
    std::vector<BitString> out;
    BitString c;
    while (c.size() <= len_cap) {
        if (machine.beta(c) == e) out.push_back(c);
        c.advance();
    }
    return out;
}

std::vector<BitString> beta_candidates(const SigmaAowf& machine, const BitString& e) {
    std::vector<BitString> out;
    switch (beta_branch(e)) {
        case BetaBranch::Empty:
            out.emplace_back();
            break;
        case BetaBranch::Gate: {
            const BitString x = e.suffix(2);
            for (const BitString& w : wit(machine.relation(), x)) {
                out.push_back(BitString{"1"} + pair_encode(x, w));
            }
            break;
        }
        case BetaBranch::Drop: {
            const BitString r = e.suffix(2);
            if (r.empty()) {
                for (const char* c : {"0", "00", "01"}) out.emplace_back(c);
            }
            for (const char* head : {"000", "001", "010", "011"}) out.push_back(BitString{head} + r);
            // 1·r maps here exactly when gamma falls through on r.
            if (machine.gamma(r) == BitString{"0"} + r) out.push_back(BitString{"1"} + r);
            break;
        }
        case BetaBranch::None:
            break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool in_drop_set(const BitString& e, const BitString& c) {
    const BitString r = e.suffix(2);
    const std::string& b = c.bits();
    if (b == "0" || b == "00" || b == "01") return true;
    if (c.size() == r.size() + 3 && b[0] == '0' && c.suffix(3) == r) return true;
    return c.size() == r.size() + 1 && b[0] == '1' && c.suffix(1) == r;
}

bool in_gate_set(const WitnessRelation& rel, const BitString& x, const BitString& c) {
    if (c.empty() || c[0] != '1') return false;
    auto [xx, w] = pair_decode(c.suffix(1));
    return xx == x && w.size() == rel.rho(x.size()) && rel.verify(x, w);
}

const std::array<CaseRow, 9>& case_rows() {
    static const std::array<CaseRow, 9> rows{{
        {1, "00", "00", "00", CaseSet::Drop, CaseSet::Drop},
        {2, "00", "01", "00", CaseSet::Drop, CaseSet::Gate},
        {3, "01", "00", "00", CaseSet::Gate, CaseSet::Drop},
        {4, "01", "01", "00", CaseSet::Gate, CaseSet::Gate},
        {5, "00", "11", "00", CaseSet::Drop, CaseSet::Empty},
        {6, "11", "00", "00", CaseSet::Empty, CaseSet::Drop},
        {7, "01", "11", "10", CaseSet::Gate, CaseSet::Empty},
        {8, "11", "01", "01", CaseSet::Empty, CaseSet::Gate},
        {9, "11", "11", "11", CaseSet::Empty, CaseSet::Empty},
    }};
    return rows;
}

namespace {

bool in_case_set(const WitnessRelation& rel, CaseSet set, const BitString& e, const BitString& c) {
    switch (set) {
        case CaseSet::Empty: return c.empty();
        case CaseSet::Gate: return in_gate_set(rel, e.suffix(2), c);
        case CaseSet::Drop: return in_drop_set(e, c);
    }
    return false;
}

} // namespace

CaseTableReport case_table_check(const SigmaAowf& machine, const BitString& y,
                                 std::size_t len_cap) {
    if (y.size() < 3 || y[0] != '0') {
        throw std::domain_error("case table needs an image starting with 0 of length >= 3, got " +
                                y.literal());
    }
    if (len_cap >= 24) throw BudgetError("case table length cap too large");
    CaseTableReport report;
    report.y = y;
    report.len_cap = len_cap;

    std::vector<std::pair<BitString, BitString>> images;  // (input, beta(input))
    for (BitString c; c.size() <= len_cap; c.advance()) images.emplace_back(c, machine.beta(c));

    const std::string_view y23 = std::string_view(y.bits()).substr(1, 2);
    for (const auto& [s, a] : images) {
        for (const auto& [t, b] : images) {
            if (a.size() + b.size() - 1 != y.size()) continue;
            if (SigmaAowf::alpha(a, b) != y) continue;
            const auto& rows = case_rows();
            auto row = std::find_if(rows.begin(), rows.end(), [&](const CaseRow& r) {
                return has_prefix(a, r.a_prefix) && has_prefix(b, r.b_prefix) && r.y23 == y23 &&
                       in_case_set(machine.relation(), r.s_set, a, s) &&
                       in_case_set(machine.relation(), r.t_set, b, t);
            });
            if (row == rows.end()) report.unclassified.emplace_back(s, t);
            else report.classified.push_back({s, t, row->index});
        }
    }
    return report;
}

} // namespace assoc
