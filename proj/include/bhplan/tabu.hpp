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

// Two-level tabu search over deployment bits for the relaxed subproblem.
// The outer level moves BANs with SBS/MA sites fixed, the inner level moves
// SBS/MA sites with BANs fixed; every candidate deployment is scored by
// assign_connections().

#ifndef BHPLAN_TABU_HPP_
#define BHPLAN_TABU_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bhplan/lagrangian.hpp"
#include "bhplan/model.hpp"

namespace bhplan {

struct SearchParams {
  int outer_iterations = 10;  // N_t1
  int inner_iterations = 20;  // N_t2
  int diversification = 2;    // N_div
  int swap_cap = 0;           // N_swap, 0 = unlimited
  int tenure_outer = 7;
  int tenure_inner = 10;
  std::uint64_t seed = 1;

  void validate() const;
};

enum class SearchLevel { kBan, kSbsMa };

struct SiteRef {
  StationRole role = StationRole::kBan;
  int index = -1;
  friend bool operator==(const SiteRef&, const SiteRef&) = default;
};

enum class DeployMoveKind { kOpen, kClose, kSwap };

struct DeployMove {
  DeployMoveKind kind = DeployMoveKind::kOpen;
  SiteRef close;  // kClose, kSwap
  SiteRef open;   // kOpen, kSwap
};

std::string to_string(const DeployMove& move);
bool is_deployed(const Deployment& d, SiteRef site);
void set_deployed(Deployment& d, SiteRef site, bool on);
double site_cost(const Scenario& scenario, SiteRef site);
Deployment apply_move(const Deployment& d, const DeployMove& move);

// Greedy cheapest-first fill under the budget: BANs while affordable, then
// SBS/MA sites. Empty when not even one BAN fits.
Deployment initial_deployment(const Scenario& scenario, double budget);

// All open/close/swap moves at `level` whose result costs at most `budget`,
// ordered opens, closes, swaps (each by site ordinal). When swap_cap > 0 and
// more swaps exist, a uniform sample of swap_cap of them is kept using `rng`.
std::vector<DeployMove> neighborhood(const Deployment& d, SearchLevel level,
                                     double budget, const Scenario& scenario,
                                     int swap_cap = 0, Rng* rng = nullptr);

// Attribute-based tabu memory: a site is tabu until its expiry iteration.
class TabuState {
 public:
  TabuState(const Scenario& scenario);

  bool is_tabu(SearchLevel level, const DeployMove& move, int now) const;
  void make_tabu(SearchLevel level, const DeployMove& move, int now,
                 int tenure);
  void clear(SearchLevel level);
  void record_deployment(const Deployment& d);
  std::int64_t frequency(SiteRef site) const;

 private:
  int& expiry(SiteRef site);
  int expiry(SiteRef site) const;

  std::vector<int> ban_expiry_;
  std::vector<int> sbs_expiry_;
  std::vector<int> ma_expiry_;
  std::vector<std::int64_t> sbs_freq_;
  std::vector<std::int64_t> ma_freq_;
  std::vector<std::int64_t> ban_freq_;
};

struct TraceRow {
  int outer_iter = 0;
  int inner_iter = -1;  // -1 on outer-level rows
  double best_candidate = 0.0;
  double incumbent = 0.0;
  std::string move;
  int tabu_hits = 0;
  bool diversified = false;
};

struct RelaxedSolveResult {
  Solution solution;
  double value = 0.0;  // V_B
  std::vector<double> incumbent_trace;  // V_B after every evaluation step
  std::vector<TraceRow> trace;
  std::int64_t evaluations = 0;
};

RelaxedSolveResult solve_relaxed(const Scenario& scenario,
                                 const DerivedTables& tables, double budget,
                                 std::span<const double> lambda, double theta,
                                 const SearchParams& params);

}  // namespace bhplan

#endif  // BHPLAN_TABU_HPP_
