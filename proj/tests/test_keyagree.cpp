#include <gtest/gtest.h>

#include "assoc/catalog.hpp"
#include "assoc/keyagree.hpp"

using namespace assoc;

namespace {

BitString bs(const char* s) { return BitString::parse_literal(s); }

}  // namespace

TEST(KeyAgreeTest, ConcatenationExample) {
    const auto r = run_session(ops::concatenation(), bs("1"), bs("0"), bs("1"));
    EXPECT_EQ(r.alice_key, bs("101"));
    EXPECT_EQ(r.bob_key, bs("101"));
    EXPECT_EQ(r.transcript.y, bs("0"));
    EXPECT_EQ(r.transcript.xy, bs("10"));
    EXPECT_EQ(r.transcript.yz, bs("01"));
}

TEST(KeyAgreeTest, SigmaSessionsAgree) {
    const auto h = make_operation("aowf:parity-up");
    std::mt19937_64 rng(42);
    for (int i = 0; i < 200; ++i) EXPECT_TRUE(random_session(h.op, rng, 10).agreed());
}

TEST(KeyAgreeTest, GConstructSessionsAgree) {
    const auto h = make_operation("gfun:linear");
    std::mt19937_64 rng(42);
    for (int i = 0; i < 100; ++i) EXPECT_TRUE(random_session(h.op, rng, 2).agreed());
}

TEST(KeyAgreeTest, RejectsUndeclaredOps) {
    BinaryOperation op = ops::concatenation();
    op.associative = false;
    EXPECT_THROW(run_session(op, bs("0"), bs("0"), bs("0")), std::invalid_argument);
}

TEST(CatalogTest, Selectors) {
    for (const auto& sel : builtin_selectors()) {
        const auto h = make_operation(sel);
        EXPECT_EQ(h.op.name, sel);
        EXPECT_EQ(h.machine != nullptr, sel.starts_with("gfun:"));
        EXPECT_EQ(h.aowf.has_value(), sel.starts_with("aowf:"));
    }
    EXPECT_THROW(make_operation("gfun:cubic"), std::invalid_argument);
    EXPECT_THROW(make_operation("aowf:sat"), std::invalid_argument);
    EXPECT_THROW(make_operation("min"), std::invalid_argument);
}
