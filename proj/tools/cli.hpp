#pragma once

#include <iosfwd>

namespace wdro::cli {

// Parses argv and runs one subcommand. Returns 0 on success, 1 on bad input
// or usage errors and 2 when a solver fails.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wdro::cli
