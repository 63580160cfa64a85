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


#include "mim/tools/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "mim/laws.hpp"
#include "mim/metrics.hpp"
#include "mim/oracle.hpp"
#include "mim/planner.hpp"
#include "mim/tools/io.hpp"
#include "mim/tools/sampling.hpp"

namespace mim::tools {

namespace {

using nlohmann::json;

// Maps library exceptions to exit codes.
template <typename F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const InfeasibleProblem& e) {
    err << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const Error& e) {
    err << "planner failure: " << e.what() << '\n';
    return kPlannerFailure;
  }
}

void emit(const std::optional<std::string>& path, const std::string& text,
          std::ostream& out) {
  if (path) {
    write_text_file(*path, text);
  } else {
    out << text;
  }
}

int intervals_for(double t_f, double dt) {
  return std::max(1, static_cast<int>(std::ceil(t_f / dt - 1e-9)));
}

json metrics_json(const Trajectory& t, const Problem& p, double dt,
                  double eps) {
  const SampledControl u = sample_control(t, intervals_for(t.t_f, dt));
  return {{"E_s", terminal_error(t.end_state(), p.xf, p.M)},
          {"E_m", em_mse(t)},
          {"T_v", tv_total_variation(u)},
          {"success", is_success(t, p, eps)},
          {"t_f", t.t_f}};
}

json median_or_null(std::vector<double> v) {
  if (v.empty()) return nullptr;
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

}  // namespace

int cmd_plan(const PlanArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Problem problem = problem_from_json(read_json_file(args.input));
    PlannerOptions options;
    options.feasibility_eps = args.eps;
    const Trajectory t = plan(problem, options);
    emit(args.output, trajectory_to_json(t).dump(2) + "\n", out);
    if (args.csv) {
      std::ostringstream csv;
      write_csv(csv, t, args.sample_dt);
      write_text_file(*args.csv, csv.str());
    }
    if (args.cross_check) {
      if (problem.order > 3) {
        err << "cross-check skipped: order " << problem.order << " > 3\n";
        return static_cast<int>(kOk);
      }
      const oracle::ExhaustiveResult r = oracle::exhaustive_tf(problem);
      err << "cross-check: planner t_f " << t.t_f << ", exhaustive t_f "
          << r.upper << " (" << asl_to_string(r.law) << ")\n";
      if (t.t_f > r.upper + 1e-6) return static_cast<int>(kPlannerFailure);
    }
    return static_cast<int>(kOk);
  });
}

int cmd_enumerate(const EnumerateArgs& args, std::ostream& out,
                  std::ostream& err) {
  return guarded(err, [&] {
    if (args.order < 1) throw IoError("--order must be at least 1");
    EnumerationOptions options;
    options.cap = args.cap;
    std::vector<std::string> lines;
    for (const Asl& law : enumerate_af(args.order, options)) {
      lines.push_back(canonical(law));
    }
    std::sort(lines.begin(), lines.end());
    for (const std::string& s : lines) out << s << '\n';
    return static_cast<int>(kOk);
  });
}

int cmd_batch(const BatchArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.count < 0) throw IoError("--count must be nonnegative");
    json bounds_doc;
    try {
      bounds_doc = json::parse(args.bounds);
    } catch (const json::exception& e) {
      throw IoError(std::string("--bounds: ") + e.what());
    }
    const BoundVector M = bounds_from_json(bounds_doc);
    if (M.order() != args.order) {
      throw IoError("--bounds must list M0..M" + std::to_string(args.order));
    }

    std::mt19937_64 rng(args.seed);
    std::vector<Problem> problems;
    for (int i = 0; i < args.count; ++i) {
      problems.push_back(random_feasible_problem(args.order, M, rng));
    }

    int code = kOk;
    json rows = json::array();
    std::vector<double> t_fs, errors, walls;
    int successes = 0;
    for (std::size_t i = 0; i < problems.size(); ++i) {
      const Problem& p = problems[i];
      json row = {{"index", i},
                  {"x0", problem_to_json(p)["x0"]},
                  {"xf", problem_to_json(p)["xf"]}};
      const auto start = std::chrono::steady_clock::now();
      try {
        const Trajectory t = plan(p);
        const double wall = std::chrono::duration<double>(
                                std::chrono::steady_clock::now() - start)
                                .count();
        json m = metrics_json(t, p, args.sample_dt, 1e-9);
        row["asl"] = asl_to_string(t.asl);
        row.update(m);
        if (args.timing) {
          row["wall_time"] = wall;
          walls.push_back(wall);
        }
        t_fs.push_back(t.t_f);
        errors.push_back(m["E_s"].get<double>());
        successes += m["success"].get<bool>();
      } catch (const Error& e) {
        row["success"] = false;
        row["error"] = e.what();
        code = kPlannerFailure;
      }
      rows.push_back(std::move(row));
    }

    json aggregate = {
        {"R_s", problems.empty()
                    ? json(nullptr)
                    : json(static_cast<double>(successes) / problems.size())},
        {"median_t_f", median_or_null(t_fs)},
        {"median_E_s", median_or_null(errors)}};
    if (args.timing) aggregate["median_wall_time"] = median_or_null(walls);
    const json report = {{"order", args.order},
                         {"count", args.count},
                         {"seed", args.seed},
                         {"M", bounds_to_json(M)},
                         {"problems", std::move(rows)},
                         {"aggregate", std::move(aggregate)}};
    emit(args.output, report.dump(2) + "\n", out);
    return code;
  });
}

int cmd_metrics(const MetricsArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Problem problem = problem_from_json(read_json_file(args.problem));
    const Trajectory t =
        trajectory_from_json(read_json_file(args.trajectory), problem);
    emit(args.output,
         metrics_json(t, problem, args.sample_dt, args.eps).dump(2) + "\n", out);
    return static_cast<int>(kOk);
  });
}

}  // namespace mim::tools
