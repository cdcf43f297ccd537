#ifndef WSCAN_CLI_HPP
#define WSCAN_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace wscan {

// Exit codes: 0 success/verified, 1 counterexample, 2 limit reached,
// 3 input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace wscan

#endif
