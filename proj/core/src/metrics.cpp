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

#include "mim/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "mim/solver.hpp"

namespace mim {

namespace {

double bsb_gap(double u, double M0) {
  return std::min(u * u, (std::abs(u) - M0) * (std::abs(u) - M0));
}

}  // namespace

SampledControl sample_control(const Trajectory& trajectory, int intervals) {
  if (intervals < 1) throw Error("sampling needs at least one interval");
  SampledControl s;
  s.t_f = trajectory.t_f;
  s.M0 = trajectory.problem.M.input();
  for (int k = 0; k <= intervals; ++k) {
    s.u.push_back(trajectory.control_at(trajectory.t_f * k / intervals));
  }
  return s;
}

double terminal_error(const StateVector& reached, const StateVector& xf,
                      const BoundVector& M) {
  double sum = 0.0;
  for (int k = 1; k <= xf.order(); ++k) {
    const double scale =
        M.bounded(k) ? M[k].value() : std::max(1.0, std::abs(xf.x(k)));
    const double e = (xf.x(k) - reached.x(k)) / scale;
    sum += e * e;
  }
  return std::sqrt(sum);
}

double em_mse(const Trajectory& trajectory) {
  if (trajectory.t_f <= 0.0) return 0.0;
  const double M0 = trajectory.problem.M.input();
  double integral = 0.0;
  for (const Segment& s : trajectory.segments) {
    integral += std::max(0.0, s.duration) * bsb_gap(s.u, M0);
  }
  return std::sqrt(4.0 / (M0 * M0 * trajectory.t_f) * integral);
}

double em_mse(const SampledControl& control) {
  const int n = control.intervals();
  if (control.t_f <= 0.0 || n < 1) return 0.0;
  double integral = 0.0;
  for (int k = 0; k < n; ++k) integral += bsb_gap(control.u[k], control.M0);
  integral *= control.t_f / n;
  return std::sqrt(4.0 / (control.M0 * control.M0 * control.t_f) * integral);
}

double tv_total_variation(const SampledControl& control) {
  const int n = control.intervals();
  if (n < 1) return 0.0;
  double sum = 0.0;
  for (int k = 1; k <= n; ++k) sum += std::abs(control.u[k] - control.u[k - 1]);
  return sum / (2.0 * n * control.M0);
}

bool is_success(const Trajectory& trajectory, const Problem& problem,
                double eps_feas) {
  Trajectory t = trajectory;
  t.problem = problem;
  const auto v = verify(t, eps_feas);
  if (v && v->kind != Infeasibility::Kind::kTerminal) return false;
  return terminal_error(t.end_state(), problem.xf, problem.M) <= 0.1;
}

}  // namespace mim
