#pragma once

#include <iosfwd>

namespace boole {

/// Runs the command line tool. Exit codes: 0 success (violated verdicts
/// included), 1 data error, 2 usage error.
int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace boole
