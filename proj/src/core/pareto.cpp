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

#include "bhplan/pareto.hpp"

#include "bhplan/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

namespace bhplan {

void ParetoParams::validate() const {
  if (!std::isfinite(theta) || theta < 0.0) {
    throw InputError("theta must be finite and >= 0");
  }
  if (lagrangian_rounds <= 0) throw InputError("lagrangian rounds must be > 0");
  if (!std::isfinite(delta_cost) || delta_cost <= 0.0) {
    throw InputError("delta_c must be > 0");
  }
  if (!std::isfinite(delta_eps)) throw InputError("delta_eps must be finite");
  if (front_outer_iterations <= 0 || front_inner_iterations <= 0) {
    throw InputError("front search iterations must be > 0");
  }
  if (!std::isfinite(step_scale) || step_scale <= 0.0) {
    throw InputError("step scale must be > 0");
  }
  if (step_patience <= 0) throw InputError("step patience must be > 0");
  search.validate();
}

// ---------------------------------------------------------------------------

bool ParetoFront::merge(FrontEntry entry) {
  const auto& o = entry.objectives;
  for (const auto& e : entries_) {
    const auto& p = e.objectives;
    if (dominates(p, o) || (p.f1 == o.f1 && p.fc == o.fc)) return false;
  }
  std::erase_if(entries_,
                [&](const FrontEntry& e) { return dominates(o, e.objectives); });
  entries_.push_back(std::move(entry));
  return true;
}

std::vector<FrontEntry> ParetoFront::sorted() const {
  auto out = entries_;
  std::stable_sort(out.begin(), out.end(),
                   [](const FrontEntry& a, const FrontEntry& b) {
                     return a.objectives.f1 < b.objectives.f1;
                   });
  return out;
}

std::optional<double> ParetoFront::best_fc_within(double budget) const {
  std::optional<double> best;
  for (const auto& e : entries_) {
    if (e.objectives.f1 > budget + 1e-9) continue;
    if (!best || e.objectives.fc < *best) best = e.objectives.fc;
  }
  return best;
}

bool ParetoFront::mutually_nondominated() const {
  for (const auto& a : entries_) {
    for (const auto& b : entries_) {
      if (dominates(a.objectives, b.objectives)) return false;
    }
  }
  return true;
}

double update_epsilon(const std::vector<double>& optimal_costs, double eps,
                      double delta_cost) {
  if (!(delta_cost > 0.0)) throw InputError("delta_c must be > 0");
  if (optimal_costs.empty()) return eps - delta_cost;
  const double lo = *std::min_element(optimal_costs.begin(),
                                      optimal_costs.end());
  if (lo > eps + 1e-9) {
    throw IntegrityError("optimal entry exceeds the budget it was found under");
  }
  return std::min(lo, eps) - delta_cost;
}

// ---------------------------------------------------------------------------
// Repair

namespace {

class Repairer {
 public:
  Repairer(Solution sol, const Scenario& sc, const DerivedTables& t)
      : sol_(std::move(sol)), sc_(sc), t_(t) {}

  Solution run() {
    clear_dead_links();
    enforce_slots();
    settle_forest();
    clear_bad_coverage();
    trim_machines();
    fill_machines();
    cover_by_flow();
    improve_forest();
    improve_ma_links();
    prune_idle();
    return std::move(sol_);
  }

 private:
  Deployment& d() { return sol_.deployment; }
  ConnectionPlan& p() { return sol_.plan; }

  bool deployed(NodeRef n) {
    return n.is_ban() ? d().bans[n.index] : d().sbss[n.index];
  }

  void close_sbs(int i) {
    d().sbss[i] = false;
    p().sbs_parent[i] = {};
  }

  void clear_dead_links() {
    for (int i = 0; i < sc_.num_sbss(); ++i) {
      const NodeRef q = p().sbs_parent[i];
      if (!d().sbss[i] ||
          (q.valid() && (!deployed(q) || !t_.link_usable(q, i)))) {
        p().sbs_parent[i] = {};
      }
    }
    for (int j = 0; j < sc_.num_mas(); ++j) {
      const int k = p().ma_parent[j];
      if (!d().mas[j] || (k >= 0 && (!d().bans[k] || !t_.ma_link_usable(k, j)))) {
        p().ma_parent[j] = -1;
      }
    }
  }

  // Detach surplus children of an overloaded BAN, MAs first, highest index
  // first.
  void enforce_slots() {
    for (int k = 0; k < sc_.num_bans(); ++k) {
      int used = 0;
      for (int i = 0; i < sc_.num_sbss(); ++i) {
        used += p().sbs_parent[i] == NodeRef::Ban(k);
      }
      for (int j = 0; j < sc_.num_mas(); ++j) used += p().ma_parent[j] == k;
      for (int j = sc_.num_mas() - 1; j >= 0 && used > sc_.ban_slot_limit;
           --j) {
        if (p().ma_parent[j] == k) {
          p().ma_parent[j] = -1;
          --used;
        }
      }
      for (int i = sc_.num_sbss() - 1; i >= 0 && used > sc_.ban_slot_limit;
           --i) {
        if (p().sbs_parent[i] == NodeRef::Ban(k)) {
          p().sbs_parent[i] = {};
          --used;
        }
      }
    }
  }

  // Close every deployed SBS without a valid path of at most N+1 hops, and
  // every MA without a BAN.
  void settle_forest() {
    const int F2 = sc_.num_sbss();
    bool changed = true;
    while (changed) {
      changed = false;
      for (int i = 0; i < F2; ++i) {
        if (!d().sbss[i]) continue;
        int cur = i;
        int hops = 0;
        bool ok = false;
        while (hops <= F2) {
          const NodeRef q = p().sbs_parent[cur];
          ++hops;
          if (!q.valid() || !deployed(q)) break;
          if (q.is_ban()) {
            ok = true;
            break;
          }
          cur = q.index;
        }
        if (!ok || hops > sc_.max_hops()) {
          close_sbs(i);
          changed = true;
        }
      }
    }
    for (int j = 0; j < sc_.num_mas(); ++j) {
      if (d().mas[j] && p().ma_parent[j] < 0) d().mas[j] = false;
    }
  }

  void clear_bad_coverage() {
    for (int m = 0; m < sc_.num_machines(); ++m) {
      int& j = p().machine_cover[m];
      if (j >= 0 && (!d().mas[j] || t_.ma_machine_dist[j][m] > t_.ma_range)) {
        j = -1;
      }
    }
  }

  double machine_load(int m) const {
    return sc_.machines[m].rate_bps * sc_.radio.compression_ratio;
  }

  // Keep the nearest machines of each MA within its count and rate limits.
  void trim_machines() {
    for (int j = 0; j < sc_.num_mas(); ++j) {
      std::vector<int> ms;
      for (int m = 0; m < sc_.num_machines(); ++m) {
        if (p().machine_cover[m] == j) ms.push_back(m);
      }
      std::stable_sort(ms.begin(), ms.end(), [&](int a, int b) {
        return t_.ma_machine_dist[j][a] < t_.ma_machine_dist[j][b];
      });
      const int k = p().ma_parent[j];
      const double cap = k >= 0 ? t_.cap_ban_ma[k][j] : 0.0;
      int count = 0;
      double rate = 0.0;
      for (int m : ms) {
        if (count + 1 <= t_.machine_limit && rate + machine_load(m) <= cap + 1e-9) {
          ++count;
          rate += machine_load(m);
        } else {
          p().machine_cover[m] = -1;
        }
      }
    }
  }

  bool in_subtree(int node, int root) const {
    int cur = node;
    for (int steps = 0; steps <= sc_.num_sbss(); ++steps) {
      if (cur == root) return true;
      const NodeRef q = sol_.plan.sbs_parent[cur];
      if (!q.is_sbs()) return false;
      cur = q.index;
    }
    return false;
  }

  int limit(int i) const {
    const NodeRef q = sol_.plan.sbs_parent[i];
    return q.valid() ? t_.link_limit(q, i) : 0;
  }

  void fill_machines() {
    const int F3 = sc_.num_mas();
    std::vector<int> count(F3, 0);
    std::vector<double> rate(F3, 0.0);
    for (int m = 0; m < sc_.num_machines(); ++m) {
      const int j = p().machine_cover[m];
      if (j < 0) continue;
      ++count[j];
      rate[j] += machine_load(m);
    }
    for (int m = 0; m < sc_.num_machines(); ++m) {
      if (p().machine_cover[m] >= 0) continue;
      int best = -1;
      for (int j = 0; j < F3; ++j) {
        if (!d().mas[j] || t_.ma_machine_dist[j][m] > t_.ma_range) continue;
        const double cap = t_.cap_ban_ma[p().ma_parent[j]][j];
        if (count[j] + 1 > t_.machine_limit ||
            rate[j] + machine_load(m) > cap + 1e-9) {
          continue;
        }
        if (best < 0 || t_.ma_machine_dist[j][m] < t_.ma_machine_dist[best][m]) {
          best = j;
        }
      }
      if (best >= 0) {
        p().machine_cover[m] = best;
        ++count[best];
        rate[best] += machine_load(m);
      }
    }
  }

  // Stations that neither cover nor relay anything only add cost.
  void prune_idle() {
    const int F1 = sc_.num_bans();
    const int F2 = sc_.num_sbss();
    const int F3 = sc_.num_mas();
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<int> sbs_use(F2, 0), ban_use(F1, 0), ma_use(F3, 0);
      for (int s = 0; s < sc_.num_subareas(); ++s) {
        if (p().sbs_cover[s] >= 0) ++sbs_use[p().sbs_cover[s]];
        if (p().ban_cover[s] >= 0) ++ban_use[p().ban_cover[s]];
      }
      for (int i = 0; i < F2; ++i) {
        const NodeRef q = p().sbs_parent[i];
        if (q.is_sbs()) ++sbs_use[q.index];
        if (q.is_ban()) ++ban_use[q.index];
      }
      for (int m = 0; m < sc_.num_machines(); ++m) {
        if (p().machine_cover[m] >= 0) ++ma_use[p().machine_cover[m]];
      }
      for (int j = 0; j < F3; ++j) {
        if (d().mas[j] && ma_use[j] == 0) {
          d().mas[j] = false;
          p().ma_parent[j] = -1;
          changed = true;
        } else if (d().mas[j]) {
          ++ban_use[p().ma_parent[j]];
        }
      }
      for (int i = 0; i < F2; ++i) {
        if (d().sbss[i] && sbs_use[i] == 0) {
          close_sbs(i);
          changed = true;
        }
      }
      for (int k = 0; k < F1; ++k) {
        if (d().bans[k] && ban_use[k] == 0) {
          d().bans[k] = false;
          changed = true;
        }
      }
    }
  }

  // Optimal HTC coverage for the current forest: subareas a deployed BAN
  // reaches go to the nearest such BAN, the rest are routed by max-flow
  // through the SBS link limits. Returns the covered count; the plan is only
  // rewritten when `write` is set.
  int cover_by_flow(bool write = true) {
    const int S = sc_.num_subareas();
    const int F2 = sc_.num_sbss();
    std::vector<int> ban_of(S, -1);
    int direct = 0;
    for (int k = 0; k < sc_.num_bans(); ++k) {
      if (!d().bans[k]) continue;
      for (int s : t_.ban_reach[k]) {
        const int cur = ban_of[s];
        if (cur < 0) ++direct;
        if (cur < 0 || t_.ban_subarea_dist[k][s] < t_.ban_subarea_dist[cur][s]) {
          ban_of[s] = k;
        }
      }
    }
    const int src = S + F2;
    const int sink = src + 1;
    MaxFlow g(S + F2 + 2);
    std::vector<std::vector<std::pair<int, int>>> arcs(S);  // (sbs, edge)
    for (int i = 0; i < F2; ++i) {
      if (!d().sbss[i]) continue;
      for (int s : t_.sbs_reach[i]) {
        if (ban_of[s] >= 0) continue;
        if (arcs[s].empty()) g.add_edge(src, s, 1);
        arcs[s].emplace_back(i, g.add_edge(s, S + i, 1));
      }
      const NodeRef q = p().sbs_parent[i];
      g.add_edge(S + i, q.is_ban() ? sink : S + q.index, limit(i));
    }
    const int routed = g.run(src, sink);
    if (write) {
      for (int s = 0; s < S; ++s) {
        p().ban_cover[s] = ban_of[s];
        p().sbs_cover[s] = -1;
        for (auto [i, e] : arcs[s]) {
          if (g.flow_on(e) > 0) p().sbs_cover[s] = i;
        }
      }
    }
    return direct + routed;
  }

  int subtree_height(int i, const std::vector<std::vector<int>>& kids) const {
    int h = 0;
    for (int c : kids[i]) h = std::max(h, 1 + subtree_height(c, kids));
    return h;
  }

  // First-improvement search over single parent changes, scored by the
  // flow coverage.
  void improve_forest() {
    const int F1 = sc_.num_bans();
    const int F2 = sc_.num_sbss();
    int best = cover_by_flow(false);
    for (int pass = 0; pass < 4; ++pass) {
      bool improved = false;
      for (int i = 0; i < F2; ++i) {
        if (!d().sbss[i]) continue;
        std::vector<NodeRef> options;
        for (int k = 0; k < F1; ++k) {
          if (d().bans[k]) options.push_back(NodeRef::Ban(k));
        }
        for (int q = 0; q < F2; ++q) {
          if (q != i && d().sbss[q]) options.push_back(NodeRef::Sbs(q));
        }
        for (NodeRef q : options) {
          const NodeRef old = p().sbs_parent[i];
          if (q == old || !t_.link_usable(q, i)) continue;
          if (q.is_sbs() && in_subtree(q.index, i)) continue;
          if (q.is_ban() && ban_slots(q.index) + 1 > sc_.ban_slot_limit) continue;
          std::vector<std::vector<int>> kids(F2);
          for (int c = 0; c < F2; ++c) {
            const NodeRef pc = p().sbs_parent[c];
            if (d().sbss[c] && pc.is_sbs()) kids[pc.index].push_back(c);
          }
          const int depth_q = q.is_ban() ? 0 : depth(q.index);
          if (depth_q + 1 + subtree_height(i, kids) > sc_.max_hops()) continue;
          p().sbs_parent[i] = q;
          const int got = cover_by_flow(false);
          if (got > best) {
            best = got;
            improved = true;
          } else {
            p().sbs_parent[i] = old;
          }
        }
      }
      if (!improved) break;
    }
    cover_by_flow();
  }

  int depth(int i) const {
    int h = 1;
    for (NodeRef q = sol_.plan.sbs_parent[i]; q.is_sbs();
         q = sol_.plan.sbs_parent[q.index]) {
      ++h;
    }
    return h;
  }

  int ban_slots(int k) const {
    int used = 0;
    for (const NodeRef& q : sol_.plan.sbs_parent) used += q == NodeRef::Ban(k);
    for (int j : sol_.plan.ma_parent) used += j == k;
    return used;
  }

  bool uniform_rates() const {
    for (const auto& m : sc_.machines) {
      if (m.rate_bps != sc_.machines.front().rate_bps) return false;
    }
    return true;
  }

  // Max-flow machine assignment for the current MA links (uniform rates
  // only; mixed rates keep the greedy assignment).
  int machines_by_flow(bool write) {
    const int M = sc_.num_machines();
    const int F3 = sc_.num_mas();
    if (M == 0 || !uniform_rates()) {
      int n = 0;
      for (int j : p().machine_cover) n += j >= 0;
      return n;
    }
    const double load = machine_load(0);
    const int src = M + F3;
    const int sink = src + 1;
    MaxFlow g(M + F3 + 2);
    std::vector<std::vector<std::pair<int, int>>> arcs(M);
    for (int j = 0; j < F3; ++j) {
      if (!d().mas[j]) continue;
      for (int m : t_.ma_reach[j]) {
        if (arcs[m].empty()) g.add_edge(src, m, 1);
        arcs[m].emplace_back(j, g.add_edge(m, M + j, 1));
      }
      const double cap = t_.cap_ban_ma[p().ma_parent[j]][j];
      int n = t_.machine_limit;
      if (load > 0.0) {
        n = static_cast<int>(std::min<double>(n, std::floor(cap / load + 1e-9)));
      }
      g.add_edge(M + j, sink, n);
    }
    const int got = g.run(src, sink);
    if (write) {
      for (int m = 0; m < M; ++m) {
        p().machine_cover[m] = -1;
        for (auto [j, e] : arcs[m]) {
          if (g.flow_on(e) > 0) p().machine_cover[m] = j;
        }
      }
    }
    return got;
  }

  void improve_ma_links() {
    int best = machines_by_flow(false);
    for (int j = 0; j < sc_.num_mas(); ++j) {
      if (!d().mas[j]) continue;
      for (int k = 0; k < sc_.num_bans(); ++k) {
        const int old = p().ma_parent[j];
        if (k == old || !d().bans[k] || !t_.ma_link_usable(k, j)) continue;
        if (ban_slots(k) + 1 > sc_.ban_slot_limit) continue;
        p().ma_parent[j] = k;
        const int got = machines_by_flow(false);
        if (got > best) {
          best = got;
        } else {
          p().ma_parent[j] = old;
        }
      }
    }
    machines_by_flow(true);
  }

  Solution sol_;
  const Scenario& sc_;
  const DerivedTables& t_;
};

}  // namespace

Solution repair(const Solution& relaxed, const Scenario& sc,
                const DerivedTables& t) {
  return Repairer(relaxed, sc, t).run();
}

// ---------------------------------------------------------------------------
// Epsilon-constraint driver

namespace {

bool lex_better(const ObjectiveVector& a, const ObjectiveVector& b) {
  return a.fc < b.fc || (a.fc == b.fc && a.f1 < b.f1);
}

class FrontSolver {
 public:
  FrontSolver(const Scenario& sc, const DerivedTables& t,
              const ParetoParams& params)
      : sc_(sc), t_(t), params_(params), zero_(sc.num_sbss(), 0.0) {}

  ParetoResult run() {
    ParetoResult res;
    const double eps0 = sc_.total_cost();
    const double cmin = sc_.min_ban_cost();
    res.epsilon0 = eps0;
    delta_eps_ = params_.delta_eps > 0.0 ? params_.delta_eps : max_site_cost();

    Solution empty = Solution::Empty(sc_);
    const auto empty_obj = objectives(empty, sc_, params_.theta);
    front_.merge({std::move(empty), empty_obj, eps0});

    double eps = eps0;
    int iter = 0;
    while (eps >= cmin - 1e-9) {
      res.epsilons.push_back(eps);
      eps_ = eps;
      iter_best_.reset();
      cache_.clear();
      res.bounds.push_back(lagrangian_rounds(iter));
      window_search(iter);
      std::vector<double> optimal;
      if (iter_best_) optimal.push_back(iter_best_->f1);
      eps = update_epsilon(optimal, eps, params_.delta_cost);
      ++iter;
    }
    res.iterations = iter;
    res.front = std::move(front_);
    return res;
  }

 private:
  double max_site_cost() const {
    double m = 0.0;
    for (const auto* sites : {&sc_.ban_sites, &sc_.sbs_sites, &sc_.ma_sites}) {
      for (const auto& s : *sites) m = std::max(m, s.cost);
    }
    return m;
  }

  std::uint64_t seed_for(int iter, int stage) const {
    return params_.search.seed + 1000003ULL * static_cast<std::uint64_t>(iter) +
           static_cast<std::uint64_t>(stage);
  }

  // Best feasible completion of deployment d, tried with lambda = 0 and with
  // the round's multipliers. Every feasible result is offered to the front.
  ObjectiveVector evaluate(const Deployment& d, std::span<const double> lambda) {
    auto it = cache_.find(d);
    if (it != cache_.end()) return it->second;
    std::optional<ObjectiveVector> best;
    const bool nonzero =
        std::any_of(lambda.begin(), lambda.end(), [](double l) { return l > 0; });
    for (int pass = 0; pass < (nonzero ? 2 : 1); ++pass) {
      std::span<const double> lam = pass == 0 ? std::span<const double>(zero_)
                                              : lambda;
      AssignResult ar = assign_connections(d, lam, sc_, t_, params_.theta);
      Solution sol = repair({d, std::move(ar.plan)}, sc_, t_);
      if (!check_feasibility(sol, sc_, t_, eps_).empty()) {
        throw IntegrityError("repair produced an infeasible solution");
      }
      const auto obj = objectives(sol, sc_, params_.theta);
      if (!best || lex_better(obj, *best)) best = obj;
      if (!iter_best_ || lex_better(obj, *iter_best_)) iter_best_ = obj;
      front_.merge({std::move(sol), obj, eps_});
    }
    cache_.emplace(d, *best);
    return *best;
  }

  BoundEntry lagrangian_rounds(int iter) {
    Multipliers lambda = zero_;
    double upper = std::numeric_limits<double>::infinity();
    double lower = -std::numeric_limits<double>::infinity();
    const bool use_max = params_.bound_select == BoundSelect::kMax;
    double raw = use_max ? -std::numeric_limits<double>::infinity()
                         : std::numeric_limits<double>::infinity();
    double scale = params_.step_scale;
    int flat = 0;
    for (int r = 0; r < params_.lagrangian_rounds; ++r) {
      SearchParams sp = params_.search;
      sp.seed = seed_for(iter, r);
      const auto rel = solve_relaxed(sc_, t_, eps_, lambda, params_.theta, sp);
      const auto obj = evaluate(rel.solution.deployment, lambda);
      upper = std::min(upper, obj.fc);
      if (rel.value > lower + 1e-12) {
        lower = rel.value;
        flat = 0;
      } else if (++flat >= params_.step_patience) {
        scale *= 0.5;
        flat = 0;
      }
      if (use_max ? rel.value > raw : rel.value < raw) {
        raw = rel.value;
        start_ = rel.solution.deployment;
        start_lambda_ = lambda;
      }
      lambda = subgradient_update(lambda, rel.solution, t_, upper, lower, scale);
    }
    BoundEntry b;
    b.epsilon = eps_;
    b.raw_bound = raw;
    const auto best = front_.best_fc_within(eps_);
    b.bound = best ? std::min(raw, *best) : raw;
    b.heuristic = true;
    return b;
  }

  // Two-level walk restricted to the window [eps - d_eps, eps].
  void window_search(int iter) {
    Rng rng(seed_for(iter, params_.lagrangian_rounds));
    TabuState tabu(sc_);
    Deployment d = start_;
    evaluate(d, start_lambda_);
    const int ten1 = std::min(params_.search.tenure_outer,
                              params_.front_outer_iterations - 1);
    const int ten2 = std::min(params_.search.tenure_inner,
                              params_.front_inner_iterations - 1);
    int clock = 0;
    for (int t1 = 0; t1 < params_.front_outer_iterations; ++t1) {
      walk(d, SearchLevel::kBan, t1, ten1, tabu, rng);
      for (int t2 = 0; t2 < params_.front_inner_iterations; ++t2) {
        walk(d, SearchLevel::kSbsMa, clock++, ten2, tabu, rng);
      }
    }
  }

  void walk(Deployment& d, SearchLevel level, int now, int tenure,
            TabuState& tabu, Rng& rng) {
    auto moves = neighborhood(d, level, eps_, sc_, params_.search.swap_cap, &rng);
    std::vector<DeployMove> window;
    for (const auto& m : moves) {
      if (cost(apply_move(d, m), sc_) >= eps_ - delta_eps_ - 1e-9) {
        window.push_back(m);
      }
    }
    if (!window.empty()) moves = std::move(window);
    if (moves.empty()) return;
    const double before = iter_best_ ? iter_best_->fc
                                     : std::numeric_limits<double>::infinity();
    std::optional<std::size_t> chosen, aspirant;
    std::optional<ObjectiveVector> chosen_obj, aspirant_obj;
    for (std::size_t m = 0; m < moves.size(); ++m) {
      const auto obj = evaluate(apply_move(d, moves[m]), start_lambda_);
      if (obj.fc < before && (!aspirant_obj || lex_better(obj, *aspirant_obj))) {
        aspirant = m;
        aspirant_obj = obj;
      }
      if (tabu.is_tabu(level, moves[m], now)) continue;
      if (!chosen_obj || lex_better(obj, *chosen_obj)) {
        chosen = m;
        chosen_obj = obj;
      }
    }
    if (aspirant) chosen = aspirant;
    if (!chosen) {
      tabu.clear(level);
      return;
    }
    d = apply_move(d, moves[*chosen]);
    tabu.make_tabu(level, moves[*chosen], now, tenure);
  }

  const Scenario& sc_;
  const DerivedTables& t_;
  const ParetoParams& params_;
  const Multipliers zero_;
  ParetoFront front_;
  double eps_ = 0.0;
  double delta_eps_ = 0.0;
  Deployment start_;
  Multipliers start_lambda_;
  std::optional<ObjectiveVector> iter_best_;
  std::unordered_map<Deployment, ObjectiveVector, DeploymentHash> cache_;
};

}  // namespace

ParetoResult solve_pareto(const Scenario& sc, const DerivedTables& t,
                          const ParetoParams& params) {
  params.validate();
  return FrontSolver(sc, t, params).run();
}

// ---------------------------------------------------------------------------

GapReport gap_report(const ParetoFront& front,
                     const std::vector<BoundEntry>& bounds) {
  GapReport r;
  for (const auto& b : bounds) {
    const auto best = front.best_fc_within(b.epsilon);
    if (!(b.bound > 0.0) || !best) {
      r.skipped_epsilons.push_back(b.epsilon);
      continue;
    }
    GapRow row{b.epsilon, *best, b.bound, *best / b.bound, b.heuristic};
    r.max_ratio = std::max(r.max_ratio, row.ratio);
    r.any_heuristic = r.any_heuristic || row.heuristic;
    r.rows.push_back(row);
  }
  return r;
}

Restriction parse_restriction(const std::string& text) {
  if (text == "none") return Restriction::kNone;
  if (text == "fiber-only") return Restriction::kFiberOnly;
  if (text == "single-hop") return Restriction::kSingleHop;
  throw InputError("unknown restriction '" + text +
                   "' (expected none, fiber-only or single-hop)");
}

std::string to_string(Restriction r) {
  switch (r) {
    case Restriction::kNone:
      return "none";
    case Restriction::kFiberOnly:
      return "fiber-only";
    case Restriction::kSingleHop:
      return "single-hop";
  }
  return "none";
}

Scenario restrict_scenario(const Scenario& sc, Restriction r) {
  Scenario out = sc;
  if (r == Restriction::kFiberOnly) out.sbs_sites.clear();
  if (r == Restriction::kSingleHop) out.max_relays = 0;
  return out;
}

}  // namespace bhplan
