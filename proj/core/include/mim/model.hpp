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

// Core value types for time-optimal control of chain-of-integrators systems.
//
// States use the input-nearest-first convention: x_1 is driven directly by
// the control u, x_k drives x_{k+1}, and x_n is the position. All accessors
// are 1-based to keep indices aligned with that convention.

#ifndef MIM_MODEL_HPP_
#define MIM_MODEL_HPP_

#include <array>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mim {

// ---------------------------------------------------------------------------
// Errors.

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed switching-law text; `position` is the byte offset of the fault.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// A switching law violates one of the structural rules (adjacency, signs,
// marker flanking, virtual-group shape).
class InvariantError : public Error {
 public:
  using Error::Error;
};

// The problem data itself is infeasible (e.g. a boundary state outside the
// box constraints).
class InfeasibleProblem : public Error {
 public:
  using Error::Error;
};

// The planner could not produce a feasible trajectory.
class PlannerFailure : public Error {
 public:
  using Error::Error;
};

// An enumeration exceeded its configured candidate cap.
class ResourceCapExceeded : public Error {
 public:
  ResourceCapExceeded(const std::string& what, std::size_t cap)
      : Error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}
  std::size_t cap() const { return cap_; }

 private:
  std::size_t cap_;
};

// ---------------------------------------------------------------------------
// States and bounds.

class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(int order);
  StateVector(std::initializer_list<double> values);
  explicit StateVector(const std::vector<double>& values);

  int order() const { return size_; }

  // 1-based component access: x(1) is the input-nearest state.
  double x(int k) const { return data()[k - 1]; }
  double& x(int k) { return data()[k - 1]; }

  std::span<const double> values() const {
    return {data(), static_cast<std::size_t>(size_)};
  }
  std::span<double> values() { return {data(), static_cast<std::size_t>(size_)}; }

  // Components 1..k as a state of order k.
  StateVector head(int k) const;
  // Copy extended (zero-filled) or truncated to the given order.
  StateVector resized(int order) const;

  StateVector operator-() const;
  bool operator==(const StateVector& other) const;

 private:
  // Low orders live inline; planning copies states constantly.
  static constexpr int kInline = 8;

  const double* data() const {
    return size_ <= kInline ? inline_.data() : heap_.data();
  }
  double* data() { return size_ <= kInline ? inline_.data() : heap_.data(); }

  int size_ = 0;
  std::array<double, kInline> inline_{};
  std::vector<double> heap_;
};

// Extended positive real: a finite positive value or unbounded.
class Bound {
 public:
  constexpr Bound() = default;
  constexpr explicit Bound(double value) : value_(value), bounded_(true) {}
  static constexpr Bound unbounded() { return Bound(); }

  constexpr bool bounded() const { return bounded_; }
  // Requires bounded().
  double value() const;
  // |v| <= bound + eps; always true when unbounded.
  bool admits(double v, double eps = 0.0) const;

  bool operator==(const Bound& other) const = default;

 private:
  double value_ = 0.0;
  bool bounded_ = false;
};

// M_0..M_n. M_0 (the input bound) is always finite.
class BoundVector {
 public:
  BoundVector() = default;
  explicit BoundVector(std::vector<Bound> bounds);
  // Convenience: finite values, with std::nullopt marking unbounded.
  BoundVector(std::initializer_list<std::optional<double>> bounds);

  int order() const { return static_cast<int>(bounds_.size()) - 1; }
  const Bound& operator[](int k) const {
    return bounds_[static_cast<std::size_t>(k)];
  }
  double input() const { return bounds_[0].value(); }
  bool bounded(int k) const { return (*this)[k].bounded(); }

  // M_0..M_k.
  BoundVector head(int k) const;
  // Copy with M_k replaced by `b`.
  BoundVector with(int k, Bound b) const;
  // Copy with every state bound removed (M_0 kept).
  BoundVector input_only() const;

  bool operator==(const BoundVector& other) const = default;

 private:
  std::vector<Bound> bounds_;
};

// ---------------------------------------------------------------------------
// Switching-law vocabulary.

// Sign of a behavior; kUnassigned appears only in unsigned (canonical) laws.
enum class Sign : int { kNegative = -1, kUnassigned = 0, kPositive = 1 };

inline int to_int(Sign s) { return static_cast<int>(s); }
inline Sign flip(Sign s) { return static_cast<Sign>(-static_cast<int>(s)); }
inline Sign sign_of(double v) {
  return v < 0.0 ? Sign::kNegative : Sign::kPositive;
}

// value 0: input saturated at sign*M_0. value k > 0: x_k rides sign*M_k with
// all lower states and the input at zero.
struct Behavior {
  int value = 0;
  Sign sign = Sign::kUnassigned;
  bool operator==(const Behavior&) const = default;
};

// x_{|s|} touches its bound at an instant with `degree`-1 vanishing lower
// states. Carries no motion time of its own.
struct TangentMarker {
  Behavior behavior;
  int degree = 2;
  bool operator==(const TangentMarker&) const = default;
};

using GroupMember = std::variant<Behavior, TangentMarker>;

// Feasible-but-untraversed continuation attached after a behavior.
struct VirtualGroup {
  std::vector<GroupMember> members;
  bool operator==(const VirtualGroup&) const = default;
};

using AslElement = std::variant<Behavior, VirtualGroup, TangentMarker>;

// Augmented switching law.
struct Asl {
  std::vector<AslElement> elements;

  bool empty() const { return elements.empty(); }
  std::size_t size() const { return elements.size(); }
  bool operator==(const Asl&) const = default;
};

// Signed text form: "+k"/"-k", groups "( e1 e2 )", markers "(+k,2l)".
// Unassigned signs print as bare digits.
std::string asl_to_string(const Asl& asl);
// Unsigned compact form used for set membership: "010(3,2)0102010(3)0".
std::string canonical(const Asl& asl);

// Parses the signed spaced grammar and validates the result.
Asl asl_parse(const std::string& text);
// Parses the grammar without running structural validation.
Asl asl_parse_unchecked(const std::string& text);
// Parses the compact unsigned form produced by canonical().
Asl parse_canonical(const std::string& text);

Asl negated(const Asl& asl);
Asl unsigned_copy(const Asl& asl);

// ---------------------------------------------------------------------------
// Problems and trajectories.

struct Problem {
  int order = 0;
  StateVector x0;
  StateVector xf;
  BoundVector M;

  // Throws InfeasibleProblem when sizes mismatch or a boundary state
  // violates a finite bound.
  void check(double eps = 1e-9) const;
  Problem mirrored() const;
};

struct Segment {
  double u = 0.0;
  double duration = 0.0;
  StateVector start;
};

struct Trajectory {
  Problem problem;
  std::vector<Segment> segments;
  Asl asl;
  double t_f = 0.0;

  StateVector end_state() const;
  // State at time t in [0, t_f] (clamped).
  StateVector state_at(double t) const;
  // Control at time t; right-continuous, with the last segment's control at
  // t_f.
  double control_at(double t) const;
};

}  // namespace mim

#endif  // MIM_MODEL_HPP_
