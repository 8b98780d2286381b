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

// The capacity-relaxed subproblem: with the per-SBS backhaul-load constraint
// moved into the objective under multipliers lambda_i >= 0, the value of a
// solution is
//
//   V = S + theta*M - sum_k m_k + sum_i n'_i - theta * (covered machines)
//   m_k  = (subareas BAN k covers) + sum_{i child of k} lambda_i N_ki
//   n'_i = (sum of lambda over SBS ancestors + lambda_i - 1) r_i
//          - lambda_i N_{p,i}      (only when the parent p is an SBS)
//
// assign_connections() is the fixed-deployment greedy that builds the
// connection plan move by move, using exact incremental deltas.

#ifndef BHPLAN_LAGRANGIAN_HPP_
#define BHPLAN_LAGRANGIAN_HPP_

#include <optional>
#include <span>
#include <vector>

#include "bhplan/model.hpp"
#include "bhplan/scenario.hpp"

namespace bhplan {

// lambda_i per SBS site; all entries finite and >= 0.
using Multipliers = std::vector<double>;

void validate_multipliers(std::span<const double> lambda, int num_sbss);

struct RelaxedValue {
  double value = 0.0;
  std::vector<double> ban_terms;  // m_k
  std::vector<double> sbs_terms;  // n'_i
};

// Throws IntegrityError on a cyclic parent structure.
RelaxedValue relaxed_objective(const Solution& solution,
                               std::span<const double> lambda, double theta,
                               const Scenario& scenario,
                               const DerivedTables& tables);

enum class MoveKind { kAttachBan, kInsertBefore, kInsertAfter };

// Attach unattached SBS `sbs` either directly under BAN `target`
// (kAttachBan), between SBS `target` and its parent (kInsertBefore), or
// between SBS `target` and its children (kInsertAfter).
struct AttachMove {
  MoveKind kind = MoveKind::kAttachBan;
  int sbs = -1;
  int target = -1;
};

// Exact consequences of a move, computed without mutating the state.
struct MoveEffect {
  double delta = 0.0;
  std::vector<int> released;   // SBSs whose coverage is dropped
  std::vector<int> new_cover;  // subareas the inserted SBS takes
};

// Incremental bookkeeping for one fixed deployment: the backhaul forest,
// hop numbers, ancestor multiplier sums, per-SBS coverage and BAN slots.
class PathState {
 public:
  PathState(const Scenario& scenario, const DerivedTables& tables,
            const Deployment& deployment, std::span<const double> lambda,
            double theta);

  // Rebuilds the bookkeeping for an existing structurally valid solution.
  static PathState FromSolution(const Scenario& scenario,
                                const DerivedTables& tables,
                                const Solution& solution,
                                std::span<const double> lambda, double theta);

  const Scenario& scenario() const { return *scenario_; }
  const DerivedTables& tables() const { return *tables_; }
  const Deployment& deployment() const { return deployment_; }
  const ConnectionPlan& plan() const { return plan_; }
  std::span<const double> lambda() const { return lambda_; }
  double theta() const { return theta_; }
  double value() const { return value_; }

  bool attached(int i) const { return hop_[i] > 0; }
  int hop(int i) const { return hop_[i]; }
  NodeRef parent(int i) const { return plan_.sbs_parent[i]; }
  const std::vector<int>& children(int i) const { return children_[i]; }
  int coverage(int i) const { return static_cast<int>(cover_of_[i].size()); }
  const std::vector<int>& covered_by(int i) const { return cover_of_[i]; }
  int ban_slots_used(int k) const { return ban_slots_[k]; }
  // Sum of lambda over the SBS ancestors of i.
  double ancestor_lambda(int i) const { return ancestor_lambda_[i]; }
  // SBS ancestors (hop < hop(i) on the same path), nearest the BAN first.
  std::vector<int> predecessors(int i) const;
  // SBS descendants (hop > hop(i) below i).
  std::vector<int> successors(int i) const;
  // Deepest hop on the path through i (max hop under i's hop-1 ancestor).
  int path_depth(int i) const;
  // Deepest hop in the subtree rooted at i (including i).
  int subtree_depth(int i) const;
  bool subarea_free(int s) const;

  // First greedy steps: BANs take the subareas they reach, then MAs link
  // to BANs and take machines.
  void cover_by_bans();
  void attach_mas();

  std::optional<MoveEffect> evaluate(const AttachMove& move) const;
  void apply(const AttachMove& move, const MoveEffect& effect);

 private:
  void refresh_subtree(int root_sbs);
  std::vector<int> choose_cover(int sbs, int limit,
                                std::span<const int> released) const;
  bool slot_free(int k) const;

  const Scenario* scenario_;
  const DerivedTables* tables_;
  Deployment deployment_;
  std::vector<double> lambda_;
  double theta_;
  ConnectionPlan plan_;
  std::vector<int> hop_;
  std::vector<double> ancestor_lambda_;
  std::vector<std::vector<int>> children_;
  std::vector<std::vector<int>> cover_of_;
  std::vector<int> ban_slots_;
  double value_ = 0.0;
};

std::optional<double> delta_attach_ban(const PathState& state, int sbs,
                                       int ban);
std::optional<double> delta_insert_before(const PathState& state, int sbs,
                                          int target);
std::optional<double> delta_insert_after(const PathState& state, int sbs,
                                         int target);

struct AssignResult {
  ConnectionPlan plan;
  double value = 0.0;
  // Deployed stations the greedy could not attach (no slot, link or hop).
  std::vector<int> unattached_sbs;
  std::vector<int> unattached_ma;
};

AssignResult assign_connections(const Deployment& deployment,
                                std::span<const double> lambda,
                                const Scenario& scenario,
                                const DerivedTables& tables, double theta);

// g_i = load_i - N_i(x); lambda_i <- max(0, lambda_i + t g_i) with
// t = step_scale * (best_upper - best_lower) / |g|^2.
Multipliers subgradient_update(std::span<const double> lambda,
                               const Solution& solution,
                               const DerivedTables& tables, double best_upper,
                               double best_lower, double step_scale);

// Per-SBS violation of the backhaul-load constraint (load - limit).
std::vector<double> capacity_subgradient(const Solution& solution,
                                         const DerivedTables& tables);

}  // namespace bhplan

#endif  // BHPLAN_LAGRANGIAN_HPP_
