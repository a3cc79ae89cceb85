// Subcommand entry points shared by the binary and the integration tests.
// Exit codes: 0 success, 2 config error, 3 flow failure event, 4 verification
// failure.
#ifndef SDFLOW_CLI_HPP
#define SDFLOW_CLI_HPP

#include <string>
#include <vector>

namespace sdflow::cli {

int cmd_run(const std::vector<std::string>& args);
int cmd_spectrum(const std::vector<std::string>& args);
int cmd_verify(const std::vector<std::string>& args);
int dispatch(int argc, char** argv);

}  // namespace sdflow::cli

#endif
