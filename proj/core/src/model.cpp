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

#include "mim/model.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "mim/kinematics.hpp"
#include "mim/laws.hpp"

namespace mim {

StateVector::StateVector(int order) : size_(std::max(order, 0)) {
  if (size_ > kInline) heap_.assign(static_cast<std::size_t>(size_), 0.0);
}

StateVector::StateVector(std::initializer_list<double> values)
    : StateVector(static_cast<int>(values.size())) {
  std::copy(values.begin(), values.end(), data());
}

StateVector::StateVector(const std::vector<double>& values)
    : StateVector(static_cast<int>(values.size())) {
  std::copy(values.begin(), values.end(), data());
}

StateVector StateVector::head(int k) const { return resized(std::min(k, order())); }

StateVector StateVector::resized(int order) const {
  StateVector out(order);
  const int common = std::min(order, size_);
  std::copy(data(), data() + common, out.data());
  return out;
}

StateVector StateVector::operator-() const {
  StateVector out(size_);
  for (int i = 0; i < size_; ++i) out.data()[i] = -data()[i];
  return out;
}

bool StateVector::operator==(const StateVector& other) const {
  return size_ == other.size_ &&
         std::equal(data(), data() + size_, other.data());
}

double Bound::value() const {
  if (!bounded_) throw Error("value() of an unbounded bound");
  return value_;
}

bool Bound::admits(double v, double eps) const {
  return !bounded_ || std::abs(v) <= value_ + eps;
}

BoundVector::BoundVector(std::vector<Bound> bounds)
    : bounds_(std::move(bounds)) {
  if (bounds_.empty() || !bounds_[0].bounded()) {
    throw Error("M_0 must be finite");
  }
  for (const Bound& b : bounds_) {
    if (b.bounded() && !(b.value() > 0.0 && std::isfinite(b.value()))) {
      throw Error("bounds must be strictly positive and finite when bounded");
    }
  }
}

BoundVector::BoundVector(std::initializer_list<std::optional<double>> bounds) {
  std::vector<Bound> b;
  for (const auto& v : bounds) b.push_back(v ? Bound(*v) : Bound::unbounded());
  *this = BoundVector(std::move(b));
}

BoundVector BoundVector::head(int k) const {
  return BoundVector(std::vector<Bound>(bounds_.begin(),
                                        bounds_.begin() + k + 1));
}

BoundVector BoundVector::with(int k, Bound b) const {
  BoundVector copy = *this;
  copy.bounds_[static_cast<std::size_t>(k)] = b;
  return copy;
}

BoundVector BoundVector::input_only() const {
  BoundVector copy = *this;
  for (std::size_t k = 1; k < copy.bounds_.size(); ++k) {
    copy.bounds_[k] = Bound::unbounded();
  }
  return copy;
}

// ---------------------------------------------------------------------------
// Text forms.

namespace {

std::string behavior_token(const Behavior& b) {
  std::string s;
  if (b.sign == Sign::kPositive) s += '+';
  if (b.sign == Sign::kNegative) s += '-';
  return s + std::to_string(b.value);
}

std::string marker_token(const TangentMarker& m) {
  return "(" + behavior_token(m.behavior) + "," + std::to_string(m.degree) +
         ")";
}

std::string digit(int value) {
  if (value < 0 || value > 9) {
    throw Error("compact form supports behavior values 0..9 only");
  }
  return std::to_string(value);
}

std::string compact_marker(const TangentMarker& m) {
  return "(" + std::to_string(m.behavior.value) + "," +
         std::to_string(m.degree) + ")";
}

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  Asl parse() {
    Asl asl;
    skip_ws();
    while (pos_ < text_.size()) {
      asl.elements.push_back(element());
      skip_ws();
    }
    return asl;
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, pos_);
  }

  int integer() {
    const std::size_t begin = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (begin == pos_) fail("expected a digit");
    return std::stoi(text_.substr(begin, pos_ - begin));
  }

  Behavior behavior() {
    Behavior b;
    if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
      b.sign = text_[pos_] == '+' ? Sign::kPositive : Sign::kNegative;
      ++pos_;
    }
    b.value = integer();
    return b;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  // Called just after '(' when the content is known to be a marker whose
  // behavior was already read.
  TangentMarker marker_tail(const Behavior& b) {
    expect(',');
    skip_ws();
    TangentMarker m{b, integer()};
    expect(')');
    return m;
  }

  GroupMember member() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      skip_ws();
      const Behavior b = behavior();
      return marker_tail(b);
    }
    return behavior();
  }

  AslElement element() {
    if (text_[pos_] != '(') return behavior();
    ++pos_;
    skip_ws();
    if (pos_ >= text_.size()) fail("unterminated parenthesis");
    VirtualGroup group;
    if (text_[pos_] == '(') {
      group.members.push_back(member());
    } else {
      const Behavior first = behavior();
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == ',') return marker_tail(first);
      group.members.push_back(first);
    }
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size()) fail("unterminated virtual group");
      if (text_[pos_] == ')') {
        ++pos_;
        return group;
      }
      group.members.push_back(member());
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string asl_to_string(const Asl& asl) {
  std::ostringstream out;
  bool first = true;
  for (const AslElement& e : asl.elements) {
    if (!first) out << ' ';
    first = false;
    if (const auto* b = std::get_if<Behavior>(&e)) {
      out << behavior_token(*b);
    } else if (const auto* m = std::get_if<TangentMarker>(&e)) {
      out << marker_token(*m);
    } else {
      out << '(';
      for (const GroupMember& g : std::get<VirtualGroup>(e).members) {
        out << ' ';
        if (const auto* gb = std::get_if<Behavior>(&g)) {
          out << behavior_token(*gb);
        } else {
          out << marker_token(std::get<TangentMarker>(g));
        }
      }
      out << " )";
    }
  }
  return out.str();
}

std::string canonical(const Asl& asl) {
  std::string out;
  for (const AslElement& e : asl.elements) {
    if (const auto* b = std::get_if<Behavior>(&e)) {
      out += digit(b->value);
    } else if (const auto* m = std::get_if<TangentMarker>(&e)) {
      out += compact_marker(*m);
    } else {
      out += '(';
      for (const GroupMember& g : std::get<VirtualGroup>(e).members) {
        if (const auto* gb = std::get_if<Behavior>(&g)) {
          out += digit(gb->value);
        } else {
          out += compact_marker(std::get<TangentMarker>(g));
        }
      }
      out += ')';
    }
  }
  return out;
}

Asl asl_parse_unchecked(const std::string& text) {
  return Parser(text).parse();
}

Asl asl_parse(const std::string& text) {
  Asl asl = asl_parse_unchecked(text);
  const std::vector<Violation> violations = validate(asl);
  if (!violations.empty()) {
    throw InvariantError("invalid switching law \"" + text +
                         "\": " + describe(violations.front()));
  }
  return asl;
}

Asl parse_canonical(const std::string& text) {
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) -> void {
    throw ParseError(what, pos);
  };
  auto read_int = [&]() {
    const std::size_t begin = pos;
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos]))) {
      ++pos;
    }
    if (begin == pos) fail("expected a digit");
    return std::stoi(text.substr(begin, pos - begin));
  };
  // Reads "(k,d)" with pos on the opening parenthesis.
  auto read_marker = [&]() {
    ++pos;
    TangentMarker m;
    m.behavior.value = read_int();
    if (pos >= text.size() || text[pos] != ',') fail("expected ','");
    ++pos;
    m.degree = read_int();
    if (pos >= text.size() || text[pos] != ')') fail("expected ')'");
    ++pos;
    return m;
  };
  auto is_marker_at = [&](std::size_t p) {
    const std::size_t close = text.find(')', p);
    const std::size_t comma = text.find(',', p);
    const std::size_t open = text.find('(', p + 1);
    return comma != std::string::npos && comma < close &&
           (open == std::string::npos || comma < open);
  };

  Asl asl;
  while (pos < text.size()) {
    const char c = text[pos];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++pos;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      asl.elements.push_back(Behavior{c - '0', Sign::kUnassigned});
      ++pos;
    } else if (c == '(') {
      if (is_marker_at(pos)) {
        asl.elements.push_back(read_marker());
        continue;
      }
      ++pos;
      VirtualGroup group;
      while (pos < text.size() && text[pos] != ')') {
        if (text[pos] == '(') {
          group.members.push_back(read_marker());
        } else if (std::isdigit(static_cast<unsigned char>(text[pos]))) {
          group.members.push_back(Behavior{text[pos] - '0', Sign::kUnassigned});
          ++pos;
        } else {
          fail("unexpected character in virtual group");
        }
      }
      if (pos >= text.size()) fail("unterminated virtual group");
      ++pos;
      if (group.members.empty()) fail("empty virtual group");
      asl.elements.push_back(std::move(group));
    } else {
      fail("unexpected character");
    }
  }
  return asl;
}

namespace {

Behavior map_sign(Behavior b, bool negate, bool clear) {
  if (clear) b.sign = Sign::kUnassigned;
  if (negate) b.sign = flip(b.sign);
  return b;
}

Asl transform(const Asl& asl, bool negate, bool clear) {
  Asl out;
  for (const AslElement& e : asl.elements) {
    if (const auto* b = std::get_if<Behavior>(&e)) {
      out.elements.push_back(map_sign(*b, negate, clear));
    } else if (const auto* m = std::get_if<TangentMarker>(&e)) {
      out.elements.push_back(
          TangentMarker{map_sign(m->behavior, negate, clear), m->degree});
    } else {
      VirtualGroup g;
      for (const GroupMember& member : std::get<VirtualGroup>(e).members) {
        if (const auto* gb = std::get_if<Behavior>(&member)) {
          g.members.push_back(map_sign(*gb, negate, clear));
        } else {
          const auto& gm = std::get<TangentMarker>(member);
          g.members.push_back(
              TangentMarker{map_sign(gm.behavior, negate, clear), gm.degree});
        }
      }
      out.elements.push_back(std::move(g));
    }
  }
  return out;
}

}  // namespace

Asl negated(const Asl& asl) { return transform(asl, true, false); }
Asl unsigned_copy(const Asl& asl) { return transform(asl, false, true); }

// ---------------------------------------------------------------------------
// Problems and trajectories.

void Problem::check(double eps) const {
  if (order < 1) throw InfeasibleProblem("order must be at least 1");
  if (x0.order() != order || xf.order() != order) {
    throw InfeasibleProblem("x0 and xf must have " + std::to_string(order) +
                            " components");
  }
  if (M.order() != order) {
    throw InfeasibleProblem("M must have " + std::to_string(order + 1) +
                            " entries");
  }
  for (int k = 1; k <= order; ++k) {
    if (!std::isfinite(x0.x(k)) || !std::isfinite(xf.x(k))) {
      throw InfeasibleProblem("non-finite boundary state x_" +
                              std::to_string(k));
    }
    if (!M[k].admits(x0.x(k), eps)) {
      throw InfeasibleProblem("|x0_" + std::to_string(k) + "| exceeds M_" +
                              std::to_string(k));
    }
    if (!M[k].admits(xf.x(k), eps)) {
      throw InfeasibleProblem("|xf_" + std::to_string(k) + "| exceeds M_" +
                              std::to_string(k));
    }
  }
}

Problem Problem::mirrored() const { return Problem{order, -x0, -xf, M}; }

StateVector Trajectory::end_state() const {
  if (segments.empty()) return problem.x0;
  const Segment& last = segments.back();
  return propagate(last.start, last.u, last.duration);
}

StateVector Trajectory::state_at(double t) const {
  if (segments.empty()) return problem.x0;
  double elapsed = 0.0;
  for (const Segment& s : segments) {
    if (t <= elapsed + s.duration) {
      return propagate(s.start, s.u, std::max(0.0, t - elapsed));
    }
    elapsed += s.duration;
  }
  return end_state();
}

double Trajectory::control_at(double t) const {
  if (segments.empty()) return 0.0;
  double elapsed = 0.0;
  for (const Segment& s : segments) {
    if (t < elapsed + s.duration) return s.u;
    elapsed += s.duration;
  }
  // t_f belongs to the last segment with nonzero duration.
  for (auto it = segments.rbegin(); it != segments.rend(); ++it) {
    if (it->duration > 0.0) return it->u;
  }
  return segments.back().u;
}

}  // namespace mim
