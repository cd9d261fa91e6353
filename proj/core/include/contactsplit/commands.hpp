#pragma once

#include <string>
#include <vector>

namespace contactsplit {

/// Exit codes shared by the CLI subcommands:
///   0 converged / success, 1 validation threshold violated, 2 diverged,
///   3 iteration limit, 4 config or input error, 5 linear solve failure.
int cmd_solve(const std::string& config_path);
int cmd_sweep(const std::string& config_path);
int cmd_validate(const std::string& config_path);
int cmd_gen(const std::string& config_path);
int cmd_report(const std::vector<std::string>& trace_paths, const std::string& out_dir);

} // namespace contactsplit
