#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lcmod {

// Dispatches the subcommands. Exit codes: 0 YES / success with output,
// 1 NO, 2 usage or parse error, 3 internal assertion failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace lcmod
