#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ccl/report.hpp"

namespace ccl {

// args excludes the program name. Exit 0 on success, 1 on usage or contract errors,
// 2 on numerical failures.
int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// One correlate experiment. Keys outside the kind's schema raise ContractError; the
// returned report echoes every key, defaults and derived values included.
Report run_correlate(const std::string& kind, const Json& config);

}  // namespace ccl
