// Copyright 2026 The bhplan Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BHPLAN_MODEL_HPP_
#define BHPLAN_MODEL_HPP_

#include <optional>
#include <string>
#include <vector>

#include "bhplan/common.hpp"
#include "bhplan/scenario.hpp"

namespace bhplan {

struct Deployment {
  std::vector<bool> bans;  // z
  std::vector<bool> sbss;  // y
  std::vector<bool> mas;   // w

  static Deployment Empty(const Scenario& scenario);
  static Deployment Full(const Scenario& scenario);
  bool matches(const Scenario& scenario) const;
  int count() const;
  friend bool operator==(const Deployment&, const Deployment&) = default;
};

struct DeploymentHash {
  std::size_t operator()(const Deployment& d) const;
};

// Backhaul is a forest rooted at BANs: every attached SBS has exactly one
// parent, so the per-subarea routing variables are derived, not stored.
struct ConnectionPlan {
  std::vector<int> ban_cover;            // subarea -> BAN, -1 if none
  std::vector<int> sbs_cover;            // subarea -> SBS, -1 if none
  std::vector<NodeRef> sbs_parent;       // SBS -> BAN/SBS, kind kNone if none
  std::vector<int> ma_parent;            // MA -> BAN, -1 if none
  std::vector<int> machine_cover;        // machine -> MA, -1 if none

  static ConnectionPlan Empty(const Scenario& scenario);
  bool matches(const Scenario& scenario) const;
};

struct Solution {
  Deployment deployment;
  ConnectionPlan plan;

  static Solution Empty(const Scenario& scenario);
};

struct ObjectiveVector {
  double f1 = 0.0;
  int f2 = 0;
  int f3 = 0;
  double fc = 0.0;
};

double cost(const Deployment& deployment, const Scenario& scenario);
ObjectiveVector objectives(const Solution& solution, const Scenario& scenario,
                           double theta);

// Strict Pareto dominance on the (f1, f_c) pair.
bool dominates(double a_f1, double a_fc, double b_f1, double b_fc);
inline bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  return dominates(a.f1, a.fc, b.f1, b.fc);
}

// One directed backhaul hop carrying a subarea's downlink data.
struct FlowHop {
  NodeRef from;
  int to_sbs = -1;
  friend bool operator==(const FlowHop&, const FlowHop&) = default;
};

// For each subarea covered by an SBS, the BAN -> ... -> coverer hop list
// (x_ki^s, x_pi^s). Subareas covered by a BAN or uncovered get an empty list.
// Throws IntegrityError when the coverer's ancestry cycles or ends without
// reaching a BAN.
std::vector<std::vector<FlowHop>> routing_flows(const Solution& solution);

// Root path of an SBS (BAN first, SBS itself last); nullopt when the parent
// chain does not end at a BAN. Throws IntegrityError on a cycle.
std::optional<std::vector<NodeRef>> path_to_root(const ConnectionPlan& plan,
                                                 int sbs);

// Number of subareas carried by the backhaul link into SBS i: its own
// coverage plus everything routed through it. Requires an acyclic forest.
std::vector<int> sbs_loads(const ConnectionPlan& plan, int num_sbss);

struct Violation {
  std::string id;      // constraint identifier, e.g. "hop-limit"
  std::string detail;  // offending indices
  friend bool operator==(const Violation&, const Violation&) = default;
};

// Every violated constraint of the (transformed) problem, in a fixed order.
// `budget`, when set, adds the deployment-cost cap.
std::vector<Violation> check_feasibility(const Solution& solution,
                                         const Scenario& scenario,
                                         const DerivedTables& tables,
                                         std::optional<double> budget = {});

}  // namespace bhplan

#endif  // BHPLAN_MODEL_HPP_
