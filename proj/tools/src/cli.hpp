#pragma once

#include <ostream>

namespace frameforge::cli {

// Exit codes: 0 pass, 2 invalid input or usage, 3 degenerate geometry, 4 a gated check failed.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace frameforge::cli
