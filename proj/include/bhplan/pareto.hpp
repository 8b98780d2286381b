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

// Epsilon-constraint driver: for a decreasing sequence of cost budgets it
// runs multiplier rounds of the relaxed tabu search, records the bound, and
// then walks the budget window [eps - d_eps, eps] collecting feasible
// nondominated deployments into a global front.

#ifndef BHPLAN_PARETO_HPP_
#define BHPLAN_PARETO_HPP_

#include <optional>
#include <string>
#include <vector>

#include "bhplan/lagrangian.hpp"
#include "bhplan/model.hpp"
#include "bhplan/tabu.hpp"

namespace bhplan {

enum class BoundSelect { kMax, kMin };

struct ParetoParams {
  double theta = 0.5;
  int lagrangian_rounds = 10;  // N_max,L
  double delta_cost = 1.0;     // d_c
  double delta_eps = 0.0;      // d_eps; <= 0 selects the max single-site cost
  int front_outer_iterations = 10;  // N_t1,max
  int front_inner_iterations = 20;  // N_t2,max
  double step_scale = 1.0;
  int step_patience = 5;  // halve the step after this many flat rounds
  BoundSelect bound_select = BoundSelect::kMax;
  SearchParams search;

  void validate() const;
};

struct FrontEntry {
  Solution solution;
  ObjectiveVector objectives;
  double epsilon = 0.0;  // budget at discovery
};

struct BoundEntry {
  double epsilon = 0.0;
  double bound = 0.0;      // min(raw, best feasible f_c within budget)
  double raw_bound = 0.0;  // max (or min) V_B over the multiplier rounds
  bool heuristic = true;
};

// Nondominated archive on (f1, f_c). Entries with identical objective pairs
// are kept once (first wins).
class ParetoFront {
 public:
  // True when the candidate was inserted; dominated entries are removed.
  bool merge(FrontEntry entry);
  const std::vector<FrontEntry>& entries() const { return entries_; }
  // Entries sorted by f1 ascending.
  std::vector<FrontEntry> sorted() const;
  // Lowest f_c among entries with f1 <= budget.
  std::optional<double> best_fc_within(double budget) const;
  bool mutually_nondominated() const;

 private:
  std::vector<FrontEntry> entries_;
};

// Next budget: min(min f1 over the iteration's optimal set, eps) - d_c, or
// eps - d_c when the iteration found nothing.
double update_epsilon(const std::vector<double>& optimal_costs, double eps,
                      double delta_cost);

// Turns a relaxed plan into a feasible one: clears any connection the
// checker would reject and closes stations without backhaul, then
// reassigns coverage for the surviving forest by max-flow, so over-capacity
// links shed subareas while spare capacity elsewhere picks them up. A
// single-parent-change local search follows, and stations that serve
// nothing are closed.
Solution repair(const Solution& relaxed, const Scenario& scenario,
                const DerivedTables& tables);

struct ParetoResult {
  ParetoFront front;
  std::vector<BoundEntry> bounds;
  std::vector<double> epsilons;  // budget of every outer iteration
  double epsilon0 = 0.0;
  int iterations = 0;
};

ParetoResult solve_pareto(const Scenario& scenario, const DerivedTables& tables,
                          const ParetoParams& params);

struct GapRow {
  double epsilon = 0.0;
  double best_fc = 0.0;
  double bound = 0.0;
  double ratio = 0.0;
  bool heuristic = true;
};

struct GapReport {
  std::vector<GapRow> rows;
  std::vector<double> skipped_epsilons;  // bound <= 0 or no feasible entry
  double max_ratio = 0.0;
  bool any_heuristic = false;
};

GapReport gap_report(const ParetoFront& front,
                     const std::vector<BoundEntry>& bounds);

enum class Restriction { kNone, kFiberOnly, kSingleHop };

Restriction parse_restriction(const std::string& text);
std::string to_string(Restriction r);
// fiber-only removes every SBS site; single-hop forces N = 0.
Scenario restrict_scenario(const Scenario& scenario, Restriction r);

}  // namespace bhplan

#endif  // BHPLAN_PARETO_HPP_
