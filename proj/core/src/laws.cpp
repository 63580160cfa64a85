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

#include "mim/laws.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace mim {

std::string rule_name(Rule rule) {
  switch (rule) {
    case Rule::kBehaviorValue:
      return "behavior-value";
    case Rule::kAdjacentRides:
      return "adjacent-rides";
    case Rule::kSignPropagation:
      return "sign-propagation";
    case Rule::kMarkerShape:
      return "marker-shape";
    case Rule::kMarkerFlanking:
      return "marker-flanking";
    case Rule::kGroupPlacement:
      return "group-placement";
    case Rule::kGroupTail:
      return "group-tail";
    case Rule::kGroupParity:
      return "group-parity";
    case Rule::kGroupSigns:
      return "group-signs";
  }
  return "unknown";
}

std::string describe(const Violation& v) {
  return rule_name(v.rule) + " at element " + std::to_string(v.index) + ": " +
         v.detail;
}

namespace {

int contribution(const GroupMember& m) {
  if (const auto* b = std::get_if<Behavior>(&m)) return 1 - b->value;
  return -std::get<TangentMarker>(m).degree;
}

int group_dimension(const VirtualGroup& g) {
  int d = 0;
  for (const GroupMember& m : g.members) d += contribution(m);
  return d;
}

// One entry of the chain along which signs propagate: top-level behaviors
// and markers with group members spliced in place.
struct ChainItem {
  std::size_t element;             // top-level index
  std::ptrdiff_t member = -1;      // index inside a group, or -1
  bool marker = false;
};

std::vector<ChainItem> sign_chain(const Asl& asl) {
  std::vector<ChainItem> chain;
  for (std::size_t i = 0; i < asl.elements.size(); ++i) {
    const AslElement& e = asl.elements[i];
    if (const auto* g = std::get_if<VirtualGroup>(&e)) {
      for (std::size_t j = 0; j < g->members.size(); ++j) {
        chain.push_back({i, static_cast<std::ptrdiff_t>(j),
                         std::holds_alternative<TangentMarker>(g->members[j])});
      }
    } else {
      chain.push_back({i, -1, std::holds_alternative<TangentMarker>(e)});
    }
  }
  return chain;
}

Behavior& behavior_at(Asl& asl, const ChainItem& item) {
  AslElement& e = asl.elements[item.element];
  if (item.member < 0) {
    if (auto* b = std::get_if<Behavior>(&e)) return *b;
    return std::get<TangentMarker>(e).behavior;
  }
  GroupMember& m =
      std::get<VirtualGroup>(e).members[static_cast<std::size_t>(item.member)];
  if (auto* b = std::get_if<Behavior>(&m)) return *b;
  return std::get<TangentMarker>(m).behavior;
}

const Behavior& behavior_at(const Asl& asl, const ChainItem& item) {
  return behavior_at(const_cast<Asl&>(asl), item);
}

}  // namespace

int dimension(const Asl& asl) {
  int d = 0;
  for (const AslElement& e : asl.elements) {
    if (const auto* b = std::get_if<Behavior>(&e)) {
      d += 1 - b->value;
    } else if (const auto* m = std::get_if<TangentMarker>(&e)) {
      d -= m->degree;
    } else {
      d += group_dimension(std::get<VirtualGroup>(e));
    }
  }
  return d;
}

Asl assign_signs(const Asl& asl, Sign last_sign) {
  Asl out = asl;
  const std::vector<ChainItem> chain = sign_chain(out);
  bool have_successor = false;
  bool after_marker = false;
  Behavior successor;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    Behavior& b = behavior_at(out, *it);
    if (it->marker) {
      // A marker shares the sign of both flanking saturated stages.
      b.sign = have_successor ? successor.sign : last_sign;
      after_marker = true;
      continue;
    }
    if (!have_successor) {
      b.sign = last_sign;
    } else if (after_marker) {
      b.sign = successor.sign;
    } else {
      b.sign = successor.value % 2 == 1 ? successor.sign : flip(successor.sign);
    }
    successor = b;
    have_successor = true;
    after_marker = false;
  }
  return out;
}

std::vector<Violation> validate(const Asl& asl, int order) {
  std::vector<Violation> out;
  const auto& els = asl.elements;
  auto add = [&](Rule r, std::size_t i, std::string d) {
    out.push_back({r, i, std::move(d)});
  };
  auto check_behavior = [&](const Behavior& b, std::size_t i) {
    if (b.value < 0 || (order > 0 && b.value > order)) {
      add(Rule::kBehaviorValue, i,
          "behavior value " + std::to_string(b.value) + " out of range");
    }
  };
  auto check_marker = [&](const TangentMarker& m, std::size_t i) {
    if (m.behavior.value < 3 || (order > 0 && m.behavior.value > order)) {
      add(Rule::kMarkerShape, i, "marker value must be at least 3");
    }
    if (m.degree < 2 || m.degree % 2 != 0) {
      add(Rule::kMarkerShape, i, "marker degree must be positive and even");
    } else if (m.degree >= m.behavior.value) {
      add(Rule::kMarkerShape, i, "marker degree must be below its value");
    }
  };
  auto is_saturated = [](const GroupMember* m) {
    if (m == nullptr) return false;
    const auto* b = std::get_if<Behavior>(m);
    return b != nullptr && b->value == 0;
  };

  // Real chain: top-level behaviors, markers transparent, groups skipped.
  const Behavior* prev = nullptr;
  for (std::size_t i = 0; i < els.size(); ++i) {
    if (const auto* b = std::get_if<Behavior>(&els[i])) {
      check_behavior(*b, i);
      if (prev != nullptr && prev->value != 0 && b->value != 0) {
        add(Rule::kAdjacentRides, i, "two riding behaviors are adjacent");
      }
      prev = b;
    } else if (const auto* m = std::get_if<TangentMarker>(&els[i])) {
      check_marker(*m, i);
      const bool left = i > 0 && std::holds_alternative<Behavior>(els[i - 1]) &&
                        std::get<Behavior>(els[i - 1]).value == 0;
      const bool right = i + 1 < els.size() &&
                         std::holds_alternative<Behavior>(els[i + 1]) &&
                         std::get<Behavior>(els[i + 1]).value == 0;
      if (!left || !right) {
        add(Rule::kMarkerFlanking, i,
            "a tangent marker must sit between two saturated stages");
      }
    } else {
      const auto& g = std::get<VirtualGroup>(els[i]);
      if (g.members.empty()) {
        add(Rule::kGroupPlacement, i, "empty virtual group");
        continue;
      }
      const bool after_behavior =
          i > 0 && std::holds_alternative<Behavior>(els[i - 1]);
      const bool before_saturated =
          i + 1 < els.size() && std::holds_alternative<Behavior>(els[i + 1]) &&
          std::get<Behavior>(els[i + 1]).value == 0;
      if (!after_behavior || !before_saturated) {
        add(Rule::kGroupPlacement, i,
            "a virtual group must follow a behavior and precede a saturated "
            "stage");
      }
      // Virtual chain: the preceding behavior, then the members.
      const Behavior* vprev =
          after_behavior ? &std::get<Behavior>(els[i - 1]) : nullptr;
      int evens = 0;
      int tail_max = -1;
      for (std::size_t j = 0; j < g.members.size(); ++j) {
        const GroupMember& member = g.members[j];
        if (const auto* mb = std::get_if<Behavior>(&member)) {
          check_behavior(*mb, i);
          if (vprev != nullptr && vprev->value != 0 && mb->value != 0) {
            add(Rule::kAdjacentRides, i,
                "two riding behaviors are adjacent inside a virtual group");
          }
          vprev = mb;
          if (mb->value % 2 == 0) ++evens;
          if (j + 1 < g.members.size()) tail_max = std::max(tail_max, mb->value);
        } else {
          const auto& mm = std::get<TangentMarker>(member);
          check_marker(mm, i);
          const GroupMember* left_m =
              j > 0 ? &g.members[j - 1] : nullptr;
          const bool left = j > 0 ? is_saturated(left_m)
                                  : (vprev != nullptr && vprev->value == 0);
          const bool right =
              j + 1 < g.members.size() && is_saturated(&g.members[j + 1]);
          if (!left || !right) {
            add(Rule::kMarkerFlanking, i,
                "a tangent marker must sit between two saturated stages");
          }
        }
      }
      const auto* tail = std::get_if<Behavior>(&g.members.back());
      if (tail == nullptr || tail->value == 0 || tail->value <= tail_max) {
        add(Rule::kGroupTail, i,
            "a virtual group must end with its unique largest ride");
      }
      if (evens % 2 != 0) {
        add(Rule::kGroupParity, i,
            "a virtual group needs an even number of even-valued behaviors");
      }
      if (i + 1 < els.size() && std::holds_alternative<Behavior>(els[i + 1]) &&
          prev != nullptr && tail != nullptr) {
        const Sign next = std::get<Behavior>(els[i + 1]).sign;
        if (next != Sign::kUnassigned && prev->sign != Sign::kUnassigned &&
            tail->sign != Sign::kUnassigned &&
            (prev->sign != flip(next) || tail->sign != flip(next))) {
          add(Rule::kGroupSigns, i,
              "the intercepted stage and the group tail must both oppose the "
              "following stage");
        }
      }
    }
  }

  // Signs.
  const std::vector<ChainItem> chain = sign_chain(asl);
  std::size_t assigned = 0;
  for (const ChainItem& c : chain) {
    if (behavior_at(asl, c).sign != Sign::kUnassigned) ++assigned;
  }
  if (assigned != 0 && assigned != chain.size()) {
    add(Rule::kSignPropagation, 0, "signs are only partially assigned");
  } else if (assigned != 0 && !chain.empty() && !chain.back().marker) {
    const Asl expected =
        assign_signs(asl, behavior_at(asl, chain.back()).sign);
    for (const ChainItem& c : chain) {
      if (behavior_at(asl, c).sign != behavior_at(expected, c).sign) {
        add(Rule::kSignPropagation, c.element,
            "sign does not follow from its successor");
        break;
      }
    }
  }
  return out;
}

Asl simplify(const Asl& asl) {
  Asl out;
  for (const AslElement& e : asl.elements) {
    const auto* g = std::get_if<VirtualGroup>(&e);
    if (g == nullptr) {
      out.elements.push_back(e);
      continue;
    }
    // Smallest start index of a zero-dimension suffix.
    std::size_t cut = g->members.size();
    int acc = 0;
    for (std::size_t j = g->members.size(); j-- > 0;) {
      acc += contribution(g->members[j]);
      if (acc == 0) cut = j;
    }
    if (cut == 0) continue;
    VirtualGroup kept;
    kept.members.assign(g->members.begin(),
                        g->members.begin() + static_cast<std::ptrdiff_t>(cut));
    out.elements.push_back(std::move(kept));
  }
  return out;
}

std::vector<Behavior> real_behaviors(const Asl& asl) {
  std::vector<Behavior> out;
  for (const AslElement& e : asl.elements) {
    if (const auto* b = std::get_if<Behavior>(&e)) out.push_back(*b);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration.

namespace {

class LawSetBuilder {
 public:
  LawSetBuilder(std::size_t cap) : cap_(cap) {}

  void add(Asl law) {
    if (++constructed_ > cap_) {
      throw ResourceCapExceeded("switching-law enumeration too large", cap_);
    }
    std::string key = canonical(law);
    if (seen_.insert(key).second) laws_.push_back(std::move(law));
  }

  std::vector<Asl> take() { return std::move(laws_); }
  std::size_t constructed() const { return constructed_; }

 private:
  std::size_t cap_;
  std::size_t constructed_ = 0;
  std::set<std::string> seen_;
  std::vector<Asl> laws_;
};

Asl concat(std::initializer_list<const Asl*> parts) {
  Asl out;
  for (const Asl* p : parts) {
    out.elements.insert(out.elements.end(), p->elements.begin(),
                        p->elements.end());
  }
  return out;
}

// Plain ride insertion and virtual-group interception, orders n -> n+1.
std::vector<Asl> marker_free_successors(const std::vector<Asl>& af_n, int n,
                                        std::size_t cap,
                                        std::size_t& constructed) {
  LawSetBuilder builder(cap);
  const Asl ride{{Behavior{n, Sign::kUnassigned}}};
  for (const Asl& s1 : af_n) {
    for (const Asl& s2 : af_n) builder.add(concat({&s1, &ride, &s2}));
  }
  for (const Asl& law : af_n) {
    for (std::size_t split = 1; split <= law.size(); ++split) {
      if (!std::holds_alternative<Behavior>(law.elements[split - 1])) continue;
      Asl head;
      head.elements.assign(law.elements.begin(),
                           law.elements.begin() +
                               static_cast<std::ptrdiff_t>(split));
      VirtualGroup group;
      int evens = 0;
      for (std::size_t i = split; i < law.size(); ++i) {
        const AslElement& e = law.elements[i];
        if (const auto* b = std::get_if<Behavior>(&e)) {
          group.members.push_back(*b);
          if (b->value % 2 == 0) ++evens;
        } else if (const auto* m = std::get_if<TangentMarker>(&e)) {
          group.members.push_back(*m);
        }
        // Nested groups are untraversed even along the virtual path.
      }
      group.members.push_back(Behavior{n, Sign::kUnassigned});
      if (n % 2 == 0) ++evens;
      if (evens % 2 != 0) continue;
      Asl with_group = head;
      with_group.elements.push_back(group);
      for (const Asl& s3 : af_n) {
        builder.add(simplify(concat({&with_group, &s3})));
      }
    }
  }
  constructed = builder.constructed();
  std::vector<Asl> out = builder.take();
  std::erase_if(out, [n](const Asl& a) { return dimension(a) != n + 1; });
  return out;
}

struct LawSet {
  std::vector<Asl> laws;
  std::size_t peak = 0;  // most candidates one builder constructed
};

LawSet build(int n, const EnumerationOptions& options);

std::mutex& memo_mutex() {
  static std::mutex m;
  return m;
}

std::map<int, LawSet>& memo() {
  static std::map<int, LawSet> m;
  return m;
}

const std::vector<Asl>& lookup(int n, const EnumerationOptions& options) {
  {
    std::lock_guard<std::mutex> lock(memo_mutex());
    auto it = memo().find(n);
    if (it != memo().end()) {
      if (it->second.peak > options.cap) {
        throw ResourceCapExceeded("switching-law enumeration too large",
                                  options.cap);
      }
      return it->second.laws;
    }
  }
  LawSet set = build(n, options);
  std::lock_guard<std::mutex> lock(memo_mutex());
  return memo().emplace(n, std::move(set)).first->second.laws;
}

LawSet build(int n, const EnumerationOptions& options) {
  if (n == 1) return {{Asl{{Behavior{0, Sign::kUnassigned}}}}, 1};
  const int prev = n - 1;
  const std::vector<Asl>& af_prev = lookup(prev, options);
  std::size_t peak = 0;
  std::vector<Asl> free =
      marker_free_successors(af_prev, prev, options.cap, peak);
  LawSetBuilder builder(options.cap);
  for (const Asl& law : free) builder.add(law);
  for (int d = 2; d < n; d += 2) {
    const Asl marker{{TangentMarker{Behavior{n, Sign::kUnassigned}, d}}};
    for (const Asl& s1 : lookup(d, options)) {
      for (const Asl& s2 : free) builder.add(concat({&s1, &marker, &s2}));
    }
  }
  peak = std::max(peak, builder.constructed());
  std::vector<Asl> out = builder.take();
  std::erase_if(out, [n](const Asl& a) { return dimension(a) != n; });
  std::sort(out.begin(), out.end(), [](const Asl& a, const Asl& b) {
    return canonical(a) < canonical(b);
  });
  return {std::move(out), peak};
}

}  // namespace

const std::vector<Asl>& enumerate_af(int n, const EnumerationOptions& options) {
  if (n < 1) throw Error("enumerate_af requires n >= 1");
  return lookup(n, options);
}

}  // namespace mim
