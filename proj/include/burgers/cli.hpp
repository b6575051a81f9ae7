#pragma once

#include <string>
#include <vector>

namespace burgers {

/// CLI entry point; returns the process exit status (0 ok, 2 config error,
/// 3 numerical failure).  Errors are reported as one JSON object on stderr.
int run_cli(const std::vector<std::string>& args);

}  // namespace burgers
