#pragma once

#include <ostream>

namespace beliefbound {

inline constexpr const char* kToolVersion = "0.1.0";

// Exit codes: 0 ok, 2 bad input or undefined quantity, 3 no verdict when one
// was required, 4 oracle disagreement above tolerance, 5 atom limit.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace beliefbound
