#pragma once

// Command-line front end.  Exit codes: 0 success, 1 domain error (or a
// negative isomorphism answer), 2 usage error.

#include <iosfwd>

namespace fcw {

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace fcw
