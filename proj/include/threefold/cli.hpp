#pragma once

#include <string>
#include <vector>

namespace threefold::cli {

// Exit codes: 0 success, 1 verification failure, 2 usage/parse error,
// 3 internal error.
int run(int argc, char** argv);

// Same entry point on an argv vector (tests); argv[0] is the program name.
int run(const std::vector<std::string>& args);

}  // namespace threefold::cli
