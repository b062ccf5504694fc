#pragma once

#include <iosfwd>

namespace recnet::cli {

// Exit codes: 0 success, 1 validation failure (bad arguments or input data),
// 2 runtime error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace recnet::cli
