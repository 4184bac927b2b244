#include "assoc/catalog.hpp"

#include <stdexcept>

namespace assoc {

OperationHandle make_operation(std::string_view selector, const GMachineOptions& options) {
    OperationHandle h;
    if (selector == "concat") {
        h.op = ops::concatenation();
    } else if (selector == "max") {
        h.op = ops::shortlex_max();
    } else if (selector == "proj") {
        h.op = ops::left_projection();
    } else if (selector.starts_with("gfun:")) {
        h.machine = std::make_shared<GMachine>(bounds::by_name(selector.substr(5)), options);
        h.op = as_operation(h.machine);
    } else if (selector.starts_with("aowf:")) {
        h.aowf.emplace(relations::by_name(selector.substr(5)));
        h.op = h.aowf->as_operation();
    } else {
        throw std::invalid_argument("unknown operation '" + std::string(selector) +
                                    "' (expected concat, max, proj, gfun:<g>, aowf:<relation>)");
    }
    return h;
}

std::vector<std::string> builtin_selectors() {
    return {"concat",      "max",      "proj",           "gfun:linear",
            "gfun:log",    "gfun:sqrt", "aowf:parity-up", "aowf:mod3-few"};
}

} // namespace assoc
