#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wqcm::cli {

// Exit codes: 0 all asserted checks pass, 1 at least one failure, 2 input or usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wqcm::cli
