#pragma once

#include <iosfwd>

namespace bargain {

// Entry point of the `bargain` executable. Exit status 0 on success, 2 on
// invalid input (reported as "error: <Name>: ..." lines on `err`), 1 when the
// verify battery flags a discrepancy.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bargain
