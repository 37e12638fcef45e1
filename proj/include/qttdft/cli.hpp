#pragma once

#include <string>
#include <vector>

namespace qttdft::cli {

/// Exit codes: 0 pass, 1 verification fail, 2 usage error.
int run(const std::vector<std::string>& args);
int run(int argc, char** argv);

} // namespace qttdft::cli
