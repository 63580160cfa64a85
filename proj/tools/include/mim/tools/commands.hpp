// Copyright 2026 The MIM Planner Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     https://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Subcommands of the `mim` executable. Each returns the process exit code:
// 0 success, 1 infeasible input, 2 planner failure or enumeration cap,
// 3 I/O or parse error. Diagnostics go to `err`.

#ifndef MIM_TOOLS_COMMANDS_HPP_
#define MIM_TOOLS_COMMANDS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace mim::tools {

enum ExitCode : int {
  kOk = 0,
  kInfeasible = 1,
  kPlannerFailure = 2,
  kIoError = 3,
};

struct PlanArgs {
  std::string input;
  std::optional<std::string> output;  // stdout when absent
  std::optional<std::string> csv;
  double sample_dt = 1e-3;
  bool cross_check = false;
  double eps = 1e-9;
};

struct EnumerateArgs {
  int order = 1;
  std::size_t cap = 1'000'000;
};

struct BatchArgs {
  int order = 3;
  int count = 100;
  std::uint64_t seed = 0;
  std::string bounds;                 // JSON array [M0, .., Mn]
  std::optional<std::string> output;  // stdout when absent
  bool timing = true;
  double sample_dt = 1e-3;
};

struct MetricsArgs {
  std::string trajectory;
  std::string problem;
  std::optional<std::string> output;
  double sample_dt = 1e-3;
  double eps = 1e-9;
};

int cmd_plan(const PlanArgs& args, std::ostream& out, std::ostream& err);
int cmd_enumerate(const EnumerateArgs& args, std::ostream& out,
                  std::ostream& err);
int cmd_batch(const BatchArgs& args, std::ostream& out, std::ostream& err);
int cmd_metrics(const MetricsArgs& args, std::ostream& out, std::ostream& err);

}  // namespace mim::tools

#endif  // MIM_TOOLS_COMMANDS_HPP_
