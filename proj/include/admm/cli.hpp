#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace admm {

/// Exit codes: 0 success, 1 usage or parameter error, 2 runtime or numerical error.
int cli_main(int argc, char** argv);
/// Same with explicit streams; `args` excludes the program name.
int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace admm
