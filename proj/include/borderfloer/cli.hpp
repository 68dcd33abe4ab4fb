#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace borderfloer {

// Exit status: 0 success, 1 computation disagreement, 2 input error.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace borderfloer
