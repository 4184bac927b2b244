// Constructive search for high-ambiguity images of an associative
// operation, plus the output-length bound and the lower-bound demonstration
// built on it.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "assoc/ambiguity.hpp"
#include "assoc/errors.hpp"
#include "assoc/strings.hpp"

namespace assoc {

/// Left: op(factor, partner) = t. Right: op(partner, factor) = t.
enum class Side { Left, Right };

std::string_view to_string(Side side);

struct AmbiguityWitness {
    BitString t;
    Side side = Side::Left;
    std::vector<BitString> factors;   // distinct, each != t
    std::vector<BitString> partners;  // parallel to factors
    std::vector<BitString> chain;     // op-product equals t

    std::size_t max_chain_length() const;
};

/// One-line JSON object with fields t, side, factors, partners, chain.
std::string witness_record(const AmbiguityWitness& w);
AmbiguityWitness parse_witness_record(std::string_view text);

/// Thrown when the search runs out of budget; carries the largest witness
/// reached so far.
class PartialWitnessError : public BudgetError {
public:
    PartialWitnessError(const std::string& what, AmbiguityWitness best)
        : BudgetError(what), best_(std::move(best)) {}
    const AmbiguityWitness& best() const noexcept { return best_; }

private:
    AmbiguityWitness best_;
};

struct ProberOptions {
    std::uint64_t seed = 0;
    std::size_t spot_checks = 32;       // random associativity triples
    std::size_t spot_check_length = 3;  // their maximum component length
    std::size_t max_steps = 4096;       // induction steps before BudgetError
};

/// Grows a witness from op("0", "1") until it has at least k factors.
/// Throws RefusalError when the op is caught being non-associative.
AmbiguityWitness find_witness(const BinaryOperation& op, std::size_t k,
                              const ProberOptions& options = {});

/// As find_witness, from op(ε, "00"), drawing the shortest fresh strings at
/// every step so that chain lengths stay within [2, ceil(2 log(k+1))].
AmbiguityWitness find_short_witness(const BinaryOperation& op, std::size_t k,
                                    const ProberOptions& options = {});

/// ceil(2 log2(k + 1)).
std::size_t short_factor_ceiling(std::size_t k);

enum class Verdict { Pass, Fail, PassUnverifiedCount };

std::string_view to_string(Verdict v);

struct WitnessVerdict {
    Verdict verdict = Verdict::Pass;
    std::vector<std::string> failures;
    std::size_t census_count = 0;
    bool census_complete = false;
};

/// Re-applies the chain and every (factor, partner) pair, then compares the
/// factor count against an image census of t at `max_rank`.
WitnessVerdict verify_witness(const BinaryOperation& op, const AmbiguityWitness& w,
                              std::uint64_t max_rank,
                              std::uint64_t budget = kDefaultCensusBudget);

/// |op(x, y)| < max(|x|, |y|)^i once max(|x|, |y|) exceeds m.
struct LengthBoundParams {
    std::size_t m = 1;
    unsigned i = 2;
};

/// max(i + 1, 1 + ceil(log2 max{|op(x, y)| : |x|, |y| <= m})).
unsigned derive_j(const BinaryOperation& op, const LengthBoundParams& params);

struct BoundViolation {
    std::vector<BitString> factors;
    std::string parenthesization;
    std::size_t length = 0;
};

struct BoundReport {
    unsigned j = 0;
    std::size_t samples = 0;
    std::vector<BoundViolation> violations;
};

/// Samples k-fold products (k = 2..k_max, round-robin) under random
/// parenthesizations and checks
/// |s1 op ... op sk| < max(2, |s1|, ..., |sk|)^(j^ceil(log2 k)).
/// Rejects operations not declared to have polynomially bounded output.
BoundReport measure_output_bound(const BinaryOperation& op, const LengthBoundParams& params,
                                 std::size_t k_max, std::size_t samples, std::uint64_t seed,
                                 std::size_t max_factor_length = 8);

struct LowerBoundDemo {
    std::size_t N = 0;
    std::size_t census_max = 0;  // max preimage count over images of length <= N
    std::size_t n = 0;           // 8 + census_max
    unsigned j = 0;
    std::uint64_t l = 0;         // j^2
    AmbiguityWitness witness;    // for k = n - 1
    std::size_t m = 0;           // |t|
    std::size_t verified_count = 0;
    bool count_complete = false;
    std::uint64_t g_of_m = 0;    // max{n : f(n) <= m}
    double ratio = 0;            // verified_count / g_of_m
};

/// log2 of ceil(2 log2 n)^(l^ceil(log2 n)); -inf for n = 1.
double log2_f(std::uint64_t n, std::uint64_t l);

/// Largest n >= 1 with f(n) <= m.
std::uint64_t g_inverse(std::size_t m, std::uint64_t l);

LowerBoundDemo lower_bound_demo(const BinaryOperation& op, const LengthBoundParams& params,
                                std::size_t N, std::uint64_t budget = kDefaultCensusBudget,
                                const ProberOptions& options = {});

} // namespace assoc
