#include <gtest/gtest.h>

#include <random>

#include "assoc/aowf.hpp"
#include "assoc/errors.hpp"
#include "oracles.hpp"

using namespace assoc;

namespace {

BitString bs(const char* s) { return BitString::parse_literal(s); }

const SigmaAowf& parity() {
    static const SigmaAowf m(relations::parity_up());
    return m;
}
const SigmaAowf& mod3() {
    static const SigmaAowf m(relations::mod3_few());
    return m;
}

// pair_decode by looking the rank up in a table built from the Cantor diagonals.
std::pair<std::string, std::string> slow_decode(const std::string& d) {
    static const auto table = [] {
        const auto all = oracle::shortlex_strings(7);
        std::map<std::uint64_t, std::pair<std::string, std::string>> t;
        for (std::uint64_t m = 0; m < 128; ++m) {
            for (std::uint64_t n = 0; m + n < 128; ++n) t[oracle::cantor(m, n)] = {all[m], all[n]};
        }
        return t;
    }();
    const auto it = table.find(oracle::rank(d));
    return it == table.end() ? std::pair<std::string, std::string>{"?", "?"} : it->second;
}

// Textbook transcription of sigma over std::string.
std::string slow_sigma(const WitnessRelation& rel, const std::string& s, const std::string& t) {
    auto gamma = [&](const std::string& d) {
        auto [x, w] = slow_decode(d);
        if (w.size() == rel.rho(x.size()) && rel.verify(BitString{x}, BitString{w})) return "1" + x;
        return "0" + d;
    };
    auto beta = [&](const std::string& c) -> std::string {
        if (c.empty()) return "111";
        if (c[0] == '1') return "0" + gamma(c.substr(1));
        return "00" + (c.size() > 3 ? c.substr(3) : "");
    };
    const std::string a = beta(s), b = beta(t);
    std::string y = "0";
    y += (b[0] == '1' && a[1] == '1') ? '1' : '0';
    y += (a[0] == '1' && b[1] == '1') ? '1' : '0';
    return y + a.substr(2) + b.substr(2);
}

BitString random_string(std::mt19937_64& rng, std::size_t max_len) {
    std::string s(rng() % (max_len + 1), '0');
    for (char& c : s) c = (rng() & 1) ? '1' : '0';
    return BitString{s};
}

}  // namespace

TEST(RelationTest, ParityUpWitnesses) {
    const auto rel = relations::parity_up();
    EXPECT_EQ(wit(rel, bs("1")), std::vector<BitString>{bs("11")});
    EXPECT_TRUE(wit(rel, bs("0")).empty());
    EXPECT_EQ(wit(rel, bs("10")), std::vector<BitString>{bs("101")});
    EXPECT_THROW(wit(rel, BitString{std::string(30, '1')}), BudgetError);
}

TEST(RelationTest, WitnessCountsRespectCaps) {
    for (const auto& rel : {relations::parity_up(), relations::mod3_few()}) {
        for (const auto& x : oracle::shortlex_strings(8)) {
            const auto w = wit(rel, BitString{x});
            ASSERT_LE(w.size(), rel.f(x.size())) << rel.name << " " << x;
            for (const auto& v : w) ASSERT_EQ(v.size(), rel.rho(x.size()));
        }
    }
    const auto rel = relations::mod3_few();
    EXPECT_EQ(wit(rel, bs("00")).size(), 1U);
    EXPECT_EQ(wit(rel, bs("1")).size(), 2U);
    EXPECT_EQ(wit(rel, bs("11")), (std::vector<BitString>{bs("1100"), bs("1101"), bs("1110")}));
    EXPECT_THROW(relations::by_name("sat"), std::invalid_argument);
}

TEST(SigmaTest, GammaExamples) {
    EXPECT_EQ(parity().gamma(bs("01011")), bs("11"));
    EXPECT_EQ(parity().gamma(bs("0")), bs("00"));
    EXPECT_EQ(parity().gamma(bs("@e")), bs("0"));
}

TEST(SigmaTest, BetaExamples) {
    EXPECT_EQ(parity().beta(bs("@e")), bs("111"));
    EXPECT_EQ(parity().beta(bs("0101")), bs("001"));
    EXPECT_EQ(parity().beta(bs("101011")), bs("011"));
}

TEST(SigmaTest, AlphaExamples) {
    EXPECT_EQ(SigmaAowf::alpha(bs("111"), bs("111")), bs("01111"));
    EXPECT_EQ(SigmaAowf::alpha(bs("00"), bs("01")), bs("000"));
    // "0", (0 & 1), (1 & 1), then a(3+) = "1" and b(3+) = "1".
    EXPECT_EQ(SigmaAowf::alpha(bs("111"), bs("011")), bs("00111"));
    EXPECT_THROW(SigmaAowf::alpha(bs("1"), bs("111")), std::domain_error);
    EXPECT_THROW(SigmaAowf::alpha(bs("111"), bs("@e")), std::domain_error);
}

TEST(SigmaTest, SigmaExamples) {
    EXPECT_EQ(parity().sigma(bs("@e"), bs("@e")), bs("01111"));
    EXPECT_EQ(parity().sigma(bs("@e"), bs("1") + pair_encode(bs("1"), bs("11"))), bs("00111"));
    EXPECT_EQ(parity().sigma(bs("0101"), bs("0000")), bs("00010"));
    EXPECT_EQ(mod3().sigma(bs("0101"), bs("0000")), bs("00010"));
}

TEST(SigmaTest, MatchesTextbookTranscription) {
    const auto all = oracle::shortlex_strings(5);
    for (const SigmaAowf* m : {&parity(), &mod3()}) {
        for (const auto& s : all) {
            for (const auto& t : all) {
                ASSERT_EQ(m->sigma(BitString{s}, BitString{t}).bits(),
                          slow_sigma(m->relation(), s, t));
            }
        }
    }
}

TEST(SigmaTest, AssociativeAndAbsorbingExhaustive) {
    const auto all = oracle::shortlex_strings(3);
    for (const SigmaAowf* m : {&parity(), &mod3()}) {
        for (const auto& s : all) {
            for (const auto& t : all) {
                const BitString st = m->sigma(BitString{s}, BitString{t});
                const BitString absorbed =
                    BitString{"00"} + m->beta(BitString{s}).suffix(2) + m->beta(BitString{t}).suffix(2);
                ASSERT_EQ(m->beta(st), absorbed);
                for (const auto& u : all) {
                    ASSERT_EQ(m->sigma(st, BitString{u}),
                              m->sigma(BitString{s}, m->sigma(BitString{t}, BitString{u})));
                }
            }
        }
    }
}

TEST(SigmaTest, OutputLengthAndHonesty) {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 500; ++i) {
        const BitString s = random_string(rng, 12), t = random_string(rng, 12);
        const BitString y = parity().sigma(s, t);
        EXPECT_EQ(y.size(), parity().beta(s).size() + parity().beta(t).size() - 1);
        EXPECT_LE(std::max(s.size(), t.size()), parity().preimage_length_cap(y));
    }
}

TEST(SigmaTest, SumOfLengthsCanExceedTwiceImage) {
    // |s| + |t| = 9 > 2|y|; the per-image cap still covers both.
    const BitString y = parity().sigma(bs("000"), bs("101011"));
    EXPECT_EQ(y, bs("0001"));
    EXPECT_GE(parity().preimage_length_cap(y), 6U);
}

TEST(SigmaTest, PreimageCapIsSound) {
    // Every preimage found at rank 510 fits under the cap for its image.
    const BinaryOperation op = parity().as_operation();
    const auto census = preimage_census(op, 510);
    for (const auto& [y, report] : census) {
        const std::size_t cap = parity().preimage_length_cap(y);
        for (const auto& [s, t] : report.preimages()) {
            ASSERT_LE(s.size(), cap);
            ASSERT_LE(t.size(), cap);
        }
    }
    EXPECT_EQ(parity().preimage_length_cap(bs("1")), 0U);
    EXPECT_EQ(parity().preimage_length_cap(bs("000")), 3U);
    EXPECT_GT(parity().preimage_length_cap(bs("0001")), 5U);
}

TEST(SigmaTest, DeclaredAmbiguity) {
    const auto h = parity().declared_ambiguity();
    EXPECT_EQ(h(3), 100U);
    EXPECT_EQ(h(2), 0U);
    EXPECT_EQ(mod3().declared_ambiguity()(5), 3U * 144U);
}

TEST(BetaPreimageTest, Examples) {
    EXPECT_EQ(beta_preimages(parity(), bs("111"), 6), std::vector<BitString>{bs("@e")});
    const auto drop = beta_preimages(parity(), bs("001"), 6);
    EXPECT_NE(std::find(drop.begin(), drop.end(), bs("0101")), drop.end());
    EXPECT_EQ(std::find(drop.begin(), drop.end(), bs("101011")), drop.end());
    for (const auto& c : drop) EXPECT_TRUE(in_drop_set(bs("001"), c)) << c.literal();
    EXPECT_EQ(beta_preimages(parity(), bs("011"), 6), std::vector<BitString>{bs("101011")});
}

TEST(BetaPreimageTest, AnalyticSetMatchesBruteForce) {
    for (const SigmaAowf* m : {&parity(), &mod3()}) {
        std::map<BitString, std::vector<BitString>> by_image;
        for (BitString c; c.size() <= 9; c.advance()) by_image[m->beta(c)].push_back(c);
        for (const auto& [e, brute] : by_image) {
            if (e.size() > 6) continue;
            auto analytic = beta_candidates(*m, e);
            // Candidates longer than the search are out of the brute-force range.
            std::erase_if(analytic, [](const BitString& c) { return c.size() > 9; });
            ASSERT_EQ(analytic, brute) << e.literal();
            ASSERT_LE(brute.size(), beta_preimage_bound(m->relation(), e)) << e.literal();
        }
    }
    EXPECT_EQ(beta_candidates(parity(), bs("00")).size(), 8U);
    EXPECT_TRUE(beta_candidates(parity(), bs("10")).empty());
}

TEST(CaseTableTest, Examples) {
    const auto r1 = case_table_check(parity(), bs("01111"), 6);
    ASSERT_TRUE(r1.pass());
    ASSERT_EQ(r1.classified.size(), 1U);
    EXPECT_EQ(r1.classified[0].row, 9);
    EXPECT_EQ(r1.classified[0].s, bs("@e"));

    const auto r2 = case_table_check(parity(), bs("00111"), 6);
    ASSERT_TRUE(r2.pass());
    const BitString gate = bs("1") + pair_encode(bs("1"), bs("11"));
    EXPECT_TRUE(std::any_of(r2.classified.begin(), r2.classified.end(), [&](const CaseEntry& e) {
        return e.s.empty() && e.t == gate && e.row == 8;
    }));

    const auto r3 = case_table_check(parity(), bs("00010"), 6);
    ASSERT_TRUE(r3.pass());
    EXPECT_TRUE(std::any_of(r3.classified.begin(), r3.classified.end(), [&](const CaseEntry& e) {
        return e.s == bs("0101") && e.t == bs("0000") && e.row == 1;
    }));
    EXPECT_THROW(case_table_check(parity(), bs("1000"), 4), std::domain_error);
    EXPECT_THROW(case_table_check(parity(), bs("00"), 4), std::domain_error);
}

TEST(CaseTableTest, EveryShortImageClassifies) {
    for (const SigmaAowf* m : {&parity(), &mod3()}) {
        for (BitString y{"000"}; y.size() <= 6; y.advance()) {
            if (y[0] != '0') continue;
            const auto r = case_table_check(*m, y, 5);
            ASSERT_TRUE(r.pass()) << y.literal();
            for (const auto& e : r.classified) {
                const auto& row = case_rows()[static_cast<std::size_t>(e.row - 1)];
                ASSERT_EQ(y.bits().substr(1, 2), row.y23);
            }
        }
    }
}
