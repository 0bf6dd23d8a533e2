#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace rsskl {

// Dispatches a command line (program name excluded). Returns 0 on success,
// 1 on usage/validation errors, 2 on degenerate-data errors.
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace rsskl
