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

// Exhaustive ground truth for tiny instances. Shares no search code with the
// heuristics: every deployment, every backhaul forest and every MA link
// assignment is enumerated, and coverage for a fixed structure is solved
// exactly with max-flow.

#ifndef BHPLAN_ORACLE_HPP_
#define BHPLAN_ORACLE_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "bhplan/scenario.hpp"

namespace bhplan {

struct OracleLimits {
  int max_bans = 3;
  int max_sbss = 5;
  int max_mas = 3;
  int max_subareas = 25;
  int max_machines = 30;
  std::int64_t max_states = 100'000'000;
};

// Throws LimitError when the scenario exceeds the limits.
void check_oracle_limits(const Scenario& scenario, const OracleLimits& limits);

struct OraclePoint {
  double f1 = 0.0;
  double fc = 0.0;
  friend bool operator==(const OraclePoint&, const OraclePoint&) = default;
};

// Exact nondominated (f1, f_c) set, sorted by f1.
std::vector<OraclePoint> exact_front(const Scenario& scenario,
                                     const DerivedTables& tables, double theta,
                                     const OracleLimits& limits = {});

// Exact optimum of the constrained problem at budget eps (+inf if nothing
// is feasible, which never happens since the empty deployment is).
double exact_constrained_optimum(const Scenario& scenario,
                                 const DerivedTables& tables, double budget,
                                 double theta, const OracleLimits& limits = {});

// Exact optimum of the capacity-relaxed problem at budget eps.
double exact_relaxed_optimum(const Scenario& scenario,
                             const DerivedTables& tables,
                             std::span<const double> lambda, double budget,
                             double theta, const OracleLimits& limits = {});

}  // namespace bhplan

#endif  // BHPLAN_ORACLE_HPP_
