#pragma once

#include <string>

namespace fjsig::commands {

/// Exit codes shared by all commands: 0 success, 1 I/O or parse error,
/// 2 validation failure, 3 method precondition failure.
struct Options {
  double tol = 1e-6;
  unsigned seed = 1;
  bool quiet = false;
};

int cmd_solve(const std::string& instance_path, const std::string& method,
              const std::string& out_path, const Options& opts);
int cmd_eval(const std::string& instance_path, const std::string& scheme_path,
             const Options& opts);
int cmd_oracle(const std::string& instance_path, int resolution, const Options& opts);
int cmd_report(const std::string& instance_path, const std::string& out_csv, const Options& opts);
int cmd_gen_hardness(const std::string& graph_path, const std::string& out_instance_path,
                     const Options& opts);

}  // namespace fjsig::commands
