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


#include "mim/tools/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "mim/kinematics.hpp"

namespace mim::tools {

namespace {

using nlohmann::json;

StateVector state_from_json(const json& j, const char* name) {
  if (!j.is_array()) throw IoError(std::string("\"") + name + "\" must be an array");
  std::vector<double> v;
  for (const json& e : j) {
    if (!e.is_number()) {
      throw IoError(std::string("\"") + name + "\" holds a non-number");
    }
    v.push_back(e.get<double>());
  }
  return StateVector(v);
}

json state_to_json(const StateVector& x) {
  json j = json::array();
  for (double v : x.values()) j.push_back(v);
  return j;
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw IoError(std::string("missing field \"") + name + "\"");
  }
  return j.at(name);
}

void write_row(std::ostream& out, double t, double u, const StateVector& x) {
  out << t << ',' << u;
  for (double v : x.values()) out << ',' << v;
  out << '\n';
}

}  // namespace

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("failed writing " + path);
}

BoundVector bounds_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw IoError("\"M\" must be a non-empty array");
  std::vector<Bound> bounds;
  for (const json& e : j) {
    if (e.is_null()) {
      bounds.push_back(Bound::unbounded());
    } else if (e.is_number()) {
      const double v = e.get<double>();
      if (!(v > 0.0) || !std::isfinite(v)) {
        throw IoError("bounds must be positive and finite, or null");
      }
      bounds.emplace_back(v);
    } else {
      throw IoError("\"M\" holds a non-number");
    }
  }
  if (!bounds.front().bounded()) throw IoError("M0 must be finite");
  return BoundVector(std::move(bounds));
}

json bounds_to_json(const BoundVector& M) {
  json j = json::array();
  for (int k = 0; k <= M.order(); ++k) {
    if (M.bounded(k)) {
      j.push_back(M[k].value());
    } else {
      j.push_back(nullptr);
    }
  }
  return j;
}

Problem problem_from_json(const json& j) {
  Problem p;
  const json& order = field(j, "order");
  if (!order.is_number_integer() || order.get<int>() < 1) {
    throw IoError("\"order\" must be a positive integer");
  }
  p.order = order.get<int>();
  p.x0 = state_from_json(field(j, "x0"), "x0");
  p.xf = state_from_json(field(j, "xf"), "xf");
  p.M = bounds_from_json(field(j, "M"));
  if (p.x0.order() != p.order || p.xf.order() != p.order ||
      p.M.order() != p.order) {
    throw IoError("\"x0\", \"xf\" and \"M\" must match \"order\"");
  }
  return p;
}

json problem_to_json(const Problem& problem) {
  return {{"order", problem.order},
          {"x0", state_to_json(problem.x0)},
          {"xf", state_to_json(problem.xf)},
          {"M", bounds_to_json(problem.M)}};
}

json trajectory_to_json(const Trajectory& trajectory) {
  json segments = json::array();
  for (const Segment& s : trajectory.segments) {
    segments.push_back({{"u", s.u},
                        {"duration", s.duration},
                        {"start", state_to_json(s.start)}});
  }
  return {{"t_f", trajectory.t_f},
          {"asl", asl_to_string(trajectory.asl)},
          {"segments", std::move(segments)}};
}

Trajectory trajectory_from_json(const json& j, const Problem& problem) {
  Trajectory t;
  t.problem = problem;
  try {
    t.asl = asl_parse_unchecked(field(j, "asl").get<std::string>());
    for (const json& s : field(j, "segments")) {
      Segment seg;
      seg.u = field(s, "u").get<double>();
      seg.duration = field(s, "duration").get<double>();
      seg.start = state_from_json(field(s, "start"), "start");
      if (seg.start.order() != problem.order) {
        throw IoError("segment state does not match the problem order");
      }
      t.segments.push_back(std::move(seg));
    }
    t.t_f = field(j, "t_f").get<double>();
  } catch (const json::exception& e) {
    throw IoError(std::string("trajectory: ") + e.what());
  } catch (const ParseError& e) {
    throw IoError(std::string("trajectory: ") + e.what());
  }
  return t;
}

void write_csv(std::ostream& out, const Trajectory& trajectory, double dt) {
  if (!(dt > 0.0)) throw Error("sample period must be positive");
  const int n = trajectory.problem.order;
  const auto precision = out.precision(17);
  out << "t,u";
  for (int k = 1; k <= n; ++k) out << ",x" << k;
  out << '\n';

  double start = 0.0;
  long long next = 1;
  StateVector x = trajectory.problem.x0;
  bool first = true;
  for (const Segment& s : trajectory.segments) {
    if (s.duration <= 0.0) continue;
    x = s.start;
    write_row(out, start, s.u, x);
    first = false;
    const double end = start + s.duration;
    while (next * dt <= start) ++next;
    for (; next * dt < end; ++next) {
      const double t = next * dt;
      write_row(out, t, s.u, propagate(x, s.u, t - start));
    }
    start = end;
  }
  const double u_end =
      trajectory.segments.empty() ? 0.0 : trajectory.segments.back().u;
  if (first) {
    write_row(out, 0.0, u_end, trajectory.problem.x0);
  } else {
    write_row(out, trajectory.t_f, u_end, trajectory.end_state());
  }
  out.precision(precision);
}

}  // namespace mim::tools
