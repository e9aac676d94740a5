#ifndef GLA_TOOLS_CLI_HPP_
#define GLA_TOOLS_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace gla::cli {

enum ExitStatus : int { kOk = 0, kNegative = 1, kUsage = 2 };

/// Runs one command; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gla::cli

#endif  // GLA_TOOLS_CLI_HPP_
