// Two-party key agreement whose correctness rests on associativity alone.

#pragma once

#include <cstdint>
#include <random>

#include "assoc/ambiguity.hpp"
#include "assoc/strings.hpp"

namespace assoc {

/// Public messages: the shared y and each party's one-sided product.
struct Transcript {
    BitString y;
    BitString xy;  // op(x, y), sent by Alice
    BitString yz;  // op(y, z), sent by Bob
};

struct SessionResult {
    BitString alice_key;  // op(x, op(y, z))
    BitString bob_key;    // op(op(x, y), z)
    Transcript transcript;

    bool agreed() const { return alice_key == bob_key; }
};

/// Alice holds x, Bob holds z, y is public. Throws std::invalid_argument if
/// the operation is not declared associative.
SessionResult run_session(const BinaryOperation& op, const BitString& x, const BitString& y,
                          const BitString& z);

/// Draws x, y, z with uniform length in [0, max_length] and uniform bits.
SessionResult random_session(const BinaryOperation& op, std::mt19937_64& rng,
                             std::size_t max_length);

} // namespace assoc
