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

// Algebra of augmented switching laws: dimension counting, sign
// propagation, structural validation, virtual-group simplification, and the
// recursive construction of the n-th order law set AF_n.

#ifndef MIM_LAWS_HPP_
#define MIM_LAWS_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "mim/model.hpp"

namespace mim {

// Structural rules a law must obey.
enum class Rule {
  kBehaviorValue,    // values are nonnegative (and at most the order, if known)
  kAdjacentRides,    // two neighbouring behaviors cannot both ride a bound
  kSignPropagation,  // signs follow from the last element
  kMarkerShape,      // |s| >= 3, even degree with 2l < |s|
  kMarkerFlanking,   // markers sit between two input-saturated behaviors
  kGroupPlacement,   // groups follow a behavior and precede a saturated one
  kGroupTail,        // a group ends with its unique largest ride
  kGroupParity,      // a group holds an even number of even-valued behaviors
  kGroupSigns,       // group tail and head agree, opposite to the successor
};

struct Violation {
  Rule rule;
  std::size_t index;  // top-level element index
  std::string detail;
};

std::string rule_name(Rule rule);
std::string describe(const Violation& v);

// Degrees of freedom carried by a law: 1 - |s| per behavior (inside groups
// too) and -2l per tangent marker (s, 2l).
int dimension(const Asl& asl);

// Assigns the unique sign pattern ending in `last_sign`, ignoring any signs
// already present.
Asl assign_signs(const Asl& asl, Sign last_sign);

// Every rule violation. Sign rules are checked only when all signs are
// assigned; `order` > 0 additionally bounds behavior values.
std::vector<Violation> validate(const Asl& asl, int order = 0);

// Drops every zero-dimension suffix of each virtual group (and the group
// itself when nothing remains). Idempotent.
Asl simplify(const Asl& asl);

struct EnumerationOptions {
  std::size_t cap = 1'000'000;  // maximum constructed candidates per order
};

// AF_n built by the three recursive constructors (plain insertion of a
// ride, virtual-group interception, tangent-marker prefix), simplified,
// deduplicated by canonical form, and restricted to dimension n. Unsigned.
// Sorted by canonical string. Memoized per order and thread-safe.
const std::vector<Asl>& enumerate_af(int n, const EnumerationOptions& = {});

// Behaviors along the traversed chain: top-level behaviors, with virtual
// groups skipped.
std::vector<Behavior> real_behaviors(const Asl& asl);

}  // namespace mim

#endif  // MIM_LAWS_HPP_
