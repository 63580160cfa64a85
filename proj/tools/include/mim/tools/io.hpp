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


// JSON and CSV formats of problems and trajectories.
//
// Problem:    {"order": n, "x0": [..], "xf": [..], "M": [M0, .., Mn]}, with
//             null marking an unbounded M_k.
// Trajectory: {"t_f": t, "asl": "...", "segments": [{"u", "duration",
//             "start"}]}.

#ifndef MIM_TOOLS_IO_HPP_
#define MIM_TOOLS_IO_HPP_

#include <iosfwd>
#include <string>

#include <nlohmann/json.hpp>

#include "mim/model.hpp"

namespace mim::tools {

// Unreadable file or malformed document.
class IoError : public Error {
 public:
  using Error::Error;
};

nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

BoundVector bounds_from_json(const nlohmann::json& j);
nlohmann::json bounds_to_json(const BoundVector& M);

Problem problem_from_json(const nlohmann::json& j);
nlohmann::json problem_to_json(const Problem& problem);

nlohmann::json trajectory_to_json(const Trajectory& trajectory);
// Rebuilds the trajectory of `problem` from its JSON document.
Trajectory trajectory_from_json(const nlohmann::json& j, const Problem& problem);

// Rows t,u,x1..xn on the grid k*dt merged with every switching instant;
// the first row is x0 at t = 0 and the last is the end state at t_f.
void write_csv(std::ostream& out, const Trajectory& trajectory, double dt);

}  // namespace mim::tools

#endif  // MIM_TOOLS_IO_HPP_
