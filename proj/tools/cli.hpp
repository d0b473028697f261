#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace hhbv::cli {

// Exit status: 0 all requested checks pass, 1 a check failed, 2 bad request or unmet hypothesis.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hhbv::cli
