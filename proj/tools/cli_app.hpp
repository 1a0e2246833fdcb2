#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace npairs {

// Exit codes: 0 success/positive verdict, 1 negative verdict (not
// dominated, infeasible, construction failure), 2 usage or parse errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace npairs
