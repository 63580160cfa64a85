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

// Trajectory quality metrics.

#ifndef MIM_METRICS_HPP_
#define MIM_METRICS_HPP_

#include <vector>

#include "mim/model.hpp"

namespace mim {

// Control samples on the uniform grid t_k = (k/n) t_f, k = 0..n.
struct SampledControl {
  std::vector<double> u;
  double t_f = 0.0;
  double M0 = 1.0;

  int intervals() const { return static_cast<int>(u.size()) - 1; }
};

SampledControl sample_control(const Trajectory& trajectory, int intervals);

// Normalized root-sum-square terminal error. Component k is divided by M_k,
// or by max(1, |xf_k|) when unbounded.
double terminal_error(const StateVector& reached, const StateVector& xf,
                      const BoundVector& M);

// Deviation from Bang-Singular-Bang:
//   sqrt(4 / (M0^2 t_f) * integral of min(u^2, (|u| - M0)^2) dt),
// 0 when t_f = 0. Exact on segments; rectangle rule on samples.
double em_mse(const Trajectory& trajectory);
double em_mse(const SampledControl& control);

// sum |u_k - u_{k-1}| / (2 n M0).
double tv_total_variation(const SampledControl& control);

// Within bounds (eps_feas) with E_s <= 0.1.
bool is_success(const Trajectory& trajectory, const Problem& problem,
                double eps_feas = 1e-9);

}  // namespace mim

#endif  // MIM_METRICS_HPP_
