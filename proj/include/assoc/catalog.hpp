// Named operations: concat | max | proj | gfun:<g> | aowf:<relation>.

#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "assoc/ambiguity.hpp"
#include "assoc/aowf.hpp"
#include "assoc/gconstruct.hpp"

namespace assoc {

struct OperationHandle {
    BinaryOperation op;
    std::shared_ptr<GMachine> machine;  // set for gfun:*
    std::optional<SigmaAowf> aowf;      // set for aowf:*
};

/// Throws std::invalid_argument for an unknown selector.
OperationHandle make_operation(std::string_view selector, const GMachineOptions& options = {});

/// Every selector make_operation accepts.
std::vector<std::string> builtin_selectors();

} // namespace assoc
