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


#include <iostream>

#include <CLI11.hpp>

#include "mim/tools/commands.hpp"

int main(int argc, char** argv) {
  using namespace mim::tools;
  CLI::App app{"Time-optimal trajectories for chain-of-integrators systems"};
  app.require_subcommand(1);

  PlanArgs plan;
  auto* p = app.add_subcommand("plan", "Plan one problem from a JSON file");
  p->add_option("--input", plan.input, "Problem JSON")->required();
  p->add_option("--output", plan.output, "Trajectory JSON (default: stdout)");
  p->add_option("--csv", plan.csv, "Sampled states as CSV");
  p->add_option("--sample-dt", plan.sample_dt, "CSV sample period in seconds")
      ->check(CLI::PositiveNumber);
  p->add_flag("--cross-check", plan.cross_check,
              "Compare with exhaustive search (order <= 3)");
  p->add_option("--eps", plan.eps, "Bound tolerance");

  EnumerateArgs enumerate;
  auto* e = app.add_subcommand("enumerate", "List the switching laws AF_n");
  e->add_option("--order", enumerate.order, "Order n")->required();
  e->add_option("--cap", enumerate.cap, "Candidate cap");

  BatchArgs batch;
  bool no_timing = false;
  auto* b = app.add_subcommand("batch", "Plan random feasible problems");
  b->add_option("--order", batch.order, "Order n")->required();
  b->add_option("--count", batch.count, "Number of problems");
  b->add_option("--seed", batch.seed, "Random seed");
  b->add_option("--bounds", batch.bounds, "JSON array [M0, .., Mn]")->required();
  b->add_option("--output", batch.output, "Report JSON (default: stdout)");
  b->add_flag("--no-timing", no_timing, "Omit wall times for reproducible output");

  MetricsArgs metrics;
  auto* m = app.add_subcommand("metrics", "Evaluate a trajectory");
  m->add_option("--trajectory", metrics.trajectory, "Trajectory JSON")->required();
  m->add_option("--problem", metrics.problem, "Problem JSON")->required();
  m->add_option("--output", metrics.output, "Metrics JSON (default: stdout)");
  m->add_option("--sample-dt", metrics.sample_dt, "Control sample period")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? 0 : kIoError;
  }

  if (*p) return cmd_plan(plan, std::cout, std::cerr);
  if (*e) return cmd_enumerate(enumerate, std::cout, std::cerr);
  if (*b) {
    batch.timing = !no_timing;
    return cmd_batch(batch, std::cout, std::cerr);
  }
  return cmd_metrics(metrics, std::cout, std::cerr);
}
