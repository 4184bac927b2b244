#include "assoc/keyagree.hpp"

#include <stdexcept>

namespace assoc {

SessionResult run_session(const BinaryOperation& op, const BitString& x, const BitString& y,
                          const BitString& z) {
    if (!op.associative) throw std::invalid_argument(op.name + " is not declared associative");
    SessionResult r;
    r.transcript.y = y;
    r.transcript.xy = op(x, y);
    r.transcript.yz = op(y, z);
    r.alice_key = op(x, r.transcript.yz);
    r.bob_key = op(r.transcript.xy, z);
    return r;
}

SessionResult random_session(const BinaryOperation& op, std::mt19937_64& rng,
                             std::size_t max_length) {
    auto draw = [&] {
        const std::size_t len = static_cast<std::size_t>(rng() % (max_length + 1));
        std::string bits(len, '0');
        for (char& c : bits) c = (rng() & 1U) ? '1' : '0';
        return BitString{bits};
    };
    const BitString x = draw();
    const BitString y = draw();
    const BitString z = draw();
    return run_session(op, x, y, z);
}

} // namespace assoc
