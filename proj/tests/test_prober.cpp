#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "assoc/errors.hpp"
#include "assoc/prober.hpp"

using namespace assoc;

namespace {

BitString bs(const char* s) { return BitString::parse_literal(s); }

std::uint64_t rank_for_length(std::size_t len) { return (std::uint64_t{1} << (len + 1)) - 2; }

void expect_sound(const BinaryOperation& op, const AmbiguityWitness& w, std::size_t k) {
    EXPECT_GE(w.factors.size(), k);
    EXPECT_LE(w.chain.size(), k + 1);
    std::set<BitString> distinct(w.factors.begin(), w.factors.end());
    EXPECT_EQ(distinct.size(), w.factors.size());
    for (std::size_t i = 0; i < w.factors.size(); ++i) {
        EXPECT_NE(w.factors[i], w.t);
        const BitString image = w.side == Side::Left ? op(w.factors[i], w.partners[i])
                                                     : op(w.partners[i], w.factors[i]);
        EXPECT_EQ(image, w.t);
    }
}

BinaryOperation left_zero_xor() {
    BinaryOperation op;
    op.name = "xor-ish";
    op.associative = true;  // a false claim
    op.apply = [](const BitString& a, const BitString& b) {
        std::string out = a.bits() + "1" + b.bits();
        return BitString{out.substr(out.size() / 2)};
    };
    return op;
}

}  // namespace

TEST(FindWitnessTest, ConcatenationBase) {
    const auto op = ops::concatenation();
    const auto w = find_witness(op, 1);
    EXPECT_EQ(w.t, bs("01"));
    EXPECT_EQ(w.side, Side::Left);
    ASSERT_EQ(w.factors.size(), 1U);
    EXPECT_EQ(w.factors[0], bs("0"));
    EXPECT_EQ(w.partners[0], bs("1"));
}

TEST(FindWitnessTest, GrowsForConcatenationAndMax) {
    for (const auto& op : {ops::concatenation(), ops::shortlex_max()}) {
        for (std::size_t k = 1; k <= 8; ++k) {
            const auto w = find_witness(op, k);
            expect_sound(op, w, k);
            const auto v = verify_witness(op, w, rank_for_length(std::min<std::size_t>(w.t.size(), 12)));
            EXPECT_EQ(v.verdict, w.t.size() <= 12 ? Verdict::Pass : Verdict::PassUnverifiedCount)
                << op.name << " k=" << k;
        }
    }
}

TEST(FindWitnessTest, MaxTwoFactors) {
    const auto op = ops::shortlex_max();
    const auto w = find_witness(op, 2);
    expect_sound(op, w, 2);
    // t = "1" with left factors ε and "0" is one valid answer; ours must at least verify.
    const auto census = image_census(op, w.t, rank_for_length(w.t.size()));
    EXPECT_GE(census.count(), 2U);
}

TEST(FindWitnessTest, RefusesNonAssociative) {
    EXPECT_THROW(find_witness(left_zero_xor(), 3), RefusalError);
    BinaryOperation undeclared = ops::concatenation();
    undeclared.associative = false;
    EXPECT_THROW(find_witness(undeclared, 2), std::invalid_argument);
}

TEST(FindShortWitnessTest, BaseCase) {
    const auto w = find_short_witness(ops::concatenation(), 1);
    EXPECT_EQ(w.chain, (std::vector<BitString>{bs("@e"), bs("00")}));
    EXPECT_EQ(w.t, bs("00"));
    EXPECT_EQ(w.max_chain_length(), 2U);
    EXPECT_EQ(short_factor_ceiling(1), 2U);
}

TEST(FindShortWitnessTest, TrivialForZero) {
    const auto w = find_short_witness(ops::shortlex_max(), 0);
    EXPECT_TRUE(w.factors.empty());
    EXPECT_EQ(w.chain.size(), 1U);
    EXPECT_EQ(verify_witness(ops::shortlex_max(), w, 14).verdict, Verdict::Pass);
}

TEST(FindShortWitnessTest, LengthWindowHolds) {
    EXPECT_EQ(short_factor_ceiling(3), 4U);
    EXPECT_EQ(short_factor_ceiling(20), 9U);
    for (const auto& op : {ops::concatenation(), ops::shortlex_max()}) {
        for (std::size_t k = 1; k <= 12; ++k) {
            const auto w = find_short_witness(op, k);
            expect_sound(op, w, k);
            EXPECT_GE(w.max_chain_length(), 2U);
            EXPECT_LE(w.max_chain_length(), short_factor_ceiling(k)) << op.name << " k=" << k;
        }
    }
}

TEST(VerifyWitnessTest, CensusCountForConcatenation) {
    const auto op = ops::concatenation();
    const auto w = find_short_witness(op, 3);
    const auto v = verify_witness(op, w, rank_for_length(w.t.size()));
    EXPECT_EQ(v.verdict, Verdict::Pass);
    EXPECT_TRUE(v.census_complete);
    EXPECT_EQ(v.census_count, w.t.size() + 1);
}

TEST(VerifyWitnessTest, TamperedPartnerFails) {
    const auto op = ops::concatenation();
    auto w = find_short_witness(op, 3);
    w.partners[1] = w.partners[1] + bs("1");
    const auto v = verify_witness(op, w, rank_for_length(w.t.size()));
    EXPECT_EQ(v.verdict, Verdict::Fail);
    ASSERT_FALSE(v.failures.empty());
    EXPECT_NE(v.failures.front().find(w.partners[1].literal()), std::string::npos);
}

TEST(VerifyWitnessTest, SmallCensusIsUnverified) {
    const auto op = ops::concatenation();
    const auto w = find_short_witness(op, 3);
    EXPECT_EQ(verify_witness(op, w, 2).verdict, Verdict::PassUnverifiedCount);
}

TEST(WitnessRecordTest, RoundTrip) {
    const auto w = find_short_witness(ops::shortlex_max(), 4);
    const std::string rec = witness_record(w);
    EXPECT_EQ(rec.find('\n'), std::string::npos);
    EXPECT_EQ(rec.rfind("{\"t\":", 0), 0U);
    const auto back = parse_witness_record(rec);
    EXPECT_EQ(back.t, w.t);
    EXPECT_EQ(back.side, w.side);
    EXPECT_EQ(back.factors, w.factors);
    EXPECT_EQ(back.partners, w.partners);
    EXPECT_EQ(back.chain, w.chain);
}

TEST(OutputBoundTest, DerivedExponent) {
    EXPECT_EQ(derive_j(ops::concatenation(), {1, 2}), 3U);
    EXPECT_EQ(derive_j(ops::shortlex_max(), {1, 2}), 3U);
    EXPECT_EQ(derive_j(ops::concatenation(), {3, 1}), 4U);  // max length 6
}

TEST(OutputBoundTest, ConcatenationRespectsBound) {
    const auto r = measure_output_bound(ops::concatenation(), {1, 2}, 16, 2000, 5);
    EXPECT_EQ(r.j, 3U);
    EXPECT_EQ(r.samples, 2000U);
    EXPECT_TRUE(r.violations.empty());
}

TEST(OutputBoundTest, DetectsViolation) {
    BinaryOperation blowup = ops::concatenation();
    blowup.name = "square";
    blowup.apply = [](const BitString& a, const BitString& b) {
        const std::size_t n = std::max(a.size(), b.size());
        return BitString{std::string(n <= 1 ? 2 : n * n * n * n, '0')};
    };
    const auto r = measure_output_bound(blowup, {1, 2}, 2, 50, 1, 3);
    EXPECT_FALSE(r.violations.empty());
}

TEST(OutputBoundTest, RejectsUnboundedOps) {
    BinaryOperation op = ops::concatenation();
    op.polynomial_output = false;
    EXPECT_THROW(measure_output_bound(op, {1, 2}, 4, 10, 0), std::invalid_argument);
}

TEST(LowerBoundTest, InverseOfF) {
    EXPECT_TRUE(std::isinf(log2_f(1, 9)));
    EXPECT_DOUBLE_EQ(log2_f(2, 9), 9.0);
    EXPECT_EQ(g_inverse(11, 9), 1U);
    EXPECT_EQ(g_inverse(512, 9), 2U);
    EXPECT_EQ(g_inverse(511, 9), 1U);
}

TEST(LowerBoundTest, ConcatenationDemo) {
    const auto d = lower_bound_demo(ops::concatenation(), {1, 2}, 2);
    EXPECT_EQ(d.census_max, 3U);
    EXPECT_EQ(d.n, 11U);
    EXPECT_EQ(d.l, 9U);
    EXPECT_GE(d.witness.factors.size(), 10U);
    EXPECT_TRUE(d.count_complete);
    EXPECT_GE(d.verified_count, 10U);
    EXPECT_EQ(d.m, d.witness.t.size());

    const auto d0 = lower_bound_demo(ops::concatenation(), {1, 2}, 0);
    EXPECT_EQ(d0.n, 9U);
}

TEST(LowerBoundTest, RequiresPreimageBound) {
    EXPECT_THROW(lower_bound_demo(ops::left_projection(), {1, 2}, 1), BudgetError);
}
