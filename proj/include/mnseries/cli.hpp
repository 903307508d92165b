#ifndef MNSERIES_CLI_HPP
#define MNSERIES_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace mns
{

// Runs one command (args exclude the program name). Returns the exit code:
// 0 success, 1 mathematical failure, 2 usage or parse error.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace mns

#endif
