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

#include "bhplan/lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bhplan {
namespace {

bool contains(std::span<const int> v, int x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

}  // namespace

void validate_multipliers(std::span<const double> lambda, int num_sbss) {
  if (static_cast<int>(lambda.size()) != num_sbss) {
    throw InputError("multiplier vector has " + std::to_string(lambda.size()) +
                     " entries, expected " + std::to_string(num_sbss));
  }
  for (double l : lambda) {
    if (!std::isfinite(l) || l < 0) {
      throw InputError("multipliers must be finite and >= 0");
    }
  }
}

RelaxedValue relaxed_objective(const Solution& sol,
                               std::span<const double> lambda, double theta,
                               const Scenario& sc, const DerivedTables& t) {
  const auto& plan = sol.plan;
  const int S = sc.num_subareas();
  const int F1 = sc.num_bans();
  const int F2 = sc.num_sbss();
  validate_multipliers(lambda, F2);

  RelaxedValue out;
  out.ban_terms.assign(F1, 0.0);
  out.sbs_terms.assign(F2, 0.0);
  std::vector<int> r(F2, 0);
  for (int s = 0; s < S; ++s) {
    if (plan.ban_cover[s] >= 0) out.ban_terms[plan.ban_cover[s]] += 1.0;
    if (plan.sbs_cover[s] >= 0) ++r[plan.sbs_cover[s]];
  }
  for (int i = 0; i < F2; ++i) {
    const NodeRef p = plan.sbs_parent[i];
    if (p.is_ban()) out.ban_terms[p.index] += lambda[i] * t.n_ban_sbs[p.index][i];
  }
  for (int i = 0; i < F2; ++i) {
    double ancestors = 0.0;
    NodeRef p = plan.sbs_parent[i];
    for (int steps = 0; p.is_sbs(); ++steps) {
      if (steps > F2) {
        throw IntegrityError("cyclic backhaul parent chain at sbs " +
                             std::to_string(i));
      }
      ancestors += lambda[p.index];
      p = plan.sbs_parent[p.index];
    }
    double term = (ancestors + lambda[i] - 1.0) * r[i];
    const NodeRef parent = plan.sbs_parent[i];
    if (parent.is_sbs()) {
      term -= lambda[i] * t.n_sbs_sbs[parent.index][i];
    }
    out.sbs_terms[i] = term;
  }
  int machines = 0;
  for (int j : plan.machine_cover) {
    if (j >= 0) ++machines;
  }
  double v = S + theta * sc.num_machines();
  for (double m : out.ban_terms) v -= m;
  for (double n : out.sbs_terms) v += n;
  v -= theta * machines;
  out.value = v;
  return out;
}

// ---------------------------------------------------------------------------

PathState::PathState(const Scenario& sc, const DerivedTables& t,
                     const Deployment& d, std::span<const double> lambda,
                     double theta)
    : scenario_(&sc),
      tables_(&t),
      deployment_(d),
      lambda_(lambda.begin(), lambda.end()),
      theta_(theta),
      plan_(ConnectionPlan::Empty(sc)) {
  validate_multipliers(lambda, sc.num_sbss());
  if (!d.matches(sc)) throw InputError("deployment does not match scenario");
  const int F2 = sc.num_sbss();
  hop_.assign(F2, 0);
  ancestor_lambda_.assign(F2, 0.0);
  children_.assign(F2, {});
  cover_of_.assign(F2, {});
  ban_slots_.assign(sc.num_bans(), 0);
  value_ = sc.num_subareas() + theta * sc.num_machines();
}

PathState PathState::FromSolution(const Scenario& sc, const DerivedTables& t,
                                  const Solution& sol,
                                  std::span<const double> lambda,
                                  double theta) {
  PathState st(sc, t, sol.deployment, lambda, theta);
  st.plan_ = sol.plan;
  const int F2 = sc.num_sbss();
  for (int i = 0; i < F2; ++i) {
    const NodeRef p = st.plan_.sbs_parent[i];
    if (p.is_sbs()) st.children_[p.index].push_back(i);
    if (p.is_ban()) ++st.ban_slots_[p.index];
  }
  for (int j = 0; j < sc.num_mas(); ++j) {
    if (st.plan_.ma_parent[j] >= 0) ++st.ban_slots_[st.plan_.ma_parent[j]];
  }
  for (int s = 0; s < sc.num_subareas(); ++s) {
    const int i = st.plan_.sbs_cover[s];
    if (i >= 0) st.cover_of_[i].push_back(s);
  }
  // Keep cover lists in the nearest-first order the greedy would use.
  for (int i = 0; i < F2; ++i) {
    auto& list = st.cover_of_[i];
    const auto& dist = t.sbs_subarea_dist[i];
    std::stable_sort(list.begin(), list.end(),
                     [&](int a, int b) { return dist[a] < dist[b]; });
  }
  for (int i = 0; i < F2; ++i) {
    if (st.plan_.sbs_parent[i].is_ban()) st.refresh_subtree(i);
  }
  st.value_ = relaxed_objective(sol, lambda, theta, sc, t).value;
  return st;
}

std::vector<int> PathState::predecessors(int i) const {
  std::vector<int> out;
  NodeRef p = plan_.sbs_parent[i];
  while (p.is_sbs()) {
    out.push_back(p.index);
    p = plan_.sbs_parent[p.index];
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<int> PathState::successors(int i) const {
  std::vector<int> out;
  std::vector<int> stack(children_[i].rbegin(), children_[i].rend());
  while (!stack.empty()) {
    const int c = stack.back();
    stack.pop_back();
    out.push_back(c);
    for (auto it = children_[c].rbegin(); it != children_[c].rend(); ++it) {
      stack.push_back(*it);
    }
  }
  return out;
}

int PathState::subtree_depth(int i) const {
  int depth = hop_[i];
  for (int c : successors(i)) depth = std::max(depth, hop_[c]);
  return depth;
}

int PathState::path_depth(int i) const {
  if (!attached(i)) return 0;
  int top = i;
  while (plan_.sbs_parent[top].is_sbs()) top = plan_.sbs_parent[top].index;
  return subtree_depth(top);
}

bool PathState::subarea_free(int s) const {
  return plan_.ban_cover[s] < 0 && plan_.sbs_cover[s] < 0;
}

bool PathState::slot_free(int k) const {
  return deployment_.bans[k] && ban_slots_[k] < scenario_->ban_slot_limit;
}

void PathState::cover_by_bans() {
  const auto& t = *tables_;
  // Nearest deployed BAN per subarea; ties keep the lower index.
  for (int k = 0; k < scenario_->num_bans(); ++k) {
    if (!deployment_.bans[k]) continue;
    for (int s : t.ban_reach[k]) {
      const int cur = plan_.ban_cover[s];
      if (cur < 0) {
        plan_.ban_cover[s] = k;
        value_ -= 1.0;
      } else if (t.ban_subarea_dist[k][s] < t.ban_subarea_dist[cur][s]) {
        plan_.ban_cover[s] = k;
      }
    }
  }
}

void PathState::attach_mas() {
  const auto& sc = *scenario_;
  const auto& t = *tables_;
  const double delta = sc.radio.compression_ratio;
  std::vector<int> waiting;
  for (int j = 0; j < sc.num_mas(); ++j) {
    if (deployment_.mas[j] && plan_.ma_parent[j] < 0) waiting.push_back(j);
  }
  auto coverage = [&](int j, int k) {
    std::vector<int> taken;
    double load = 0.0;
    const double cap = t.cap_ban_ma[k][j];
    for (int m : t.ma_reach[j]) {
      if (static_cast<int>(taken.size()) >= t.machine_limit) break;
      if (plan_.machine_cover[m] >= 0) continue;
      const double need = sc.machines[m].rate_bps * delta;
      if (load + need > cap) continue;
      load += need;
      taken.push_back(m);
    }
    return taken;
  };
  while (!waiting.empty()) {
    int best_j = -1;
    int best_k = -1;
    std::vector<int> best_cover;
    for (int j : waiting) {
      for (int k = 0; k < sc.num_bans(); ++k) {
        if (!slot_free(k) || !t.ma_link_usable(k, j)) continue;
        auto cover = coverage(j, k);
        if (best_j < 0 || cover.size() > best_cover.size()) {
          best_j = j;
          best_k = k;
          best_cover = std::move(cover);
        }
      }
    }
    if (best_j < 0) break;
    plan_.ma_parent[best_j] = best_k;
    ++ban_slots_[best_k];
    for (int m : best_cover) plan_.machine_cover[m] = best_j;
    value_ -= theta_ * static_cast<double>(best_cover.size());
    waiting.erase(std::find(waiting.begin(), waiting.end(), best_j));
  }
}

std::vector<int> PathState::choose_cover(int sbs, int limit,
                                         std::span<const int> released) const {
  std::vector<int> out;
  if (limit <= 0) return out;
  for (int s : tables_->sbs_reach[sbs]) {
    if (plan_.ban_cover[s] >= 0) continue;
    const int owner = plan_.sbs_cover[s];
    if (owner >= 0 && !contains(released, owner)) continue;
    out.push_back(s);
    if (static_cast<int>(out.size()) >= limit) break;
  }
  return out;
}

std::optional<MoveEffect> PathState::evaluate(const AttachMove& mv) const {
  const auto& t = *tables_;
  const int i = mv.sbs;
  const int F2 = scenario_->num_sbss();
  if (i < 0 || i >= F2 || !deployment_.sbss[i] || attached(i)) {
    return std::nullopt;
  }
  const double li = lambda_[i];
  MoveEffect fx;

  if (mv.kind == MoveKind::kAttachBan) {
    const int k = mv.target;
    if (k < 0 || k >= scenario_->num_bans() || !slot_free(k) ||
        !t.link_usable(NodeRef::Ban(k), i)) {
      return std::nullopt;
    }
    const int limit = t.n_ban_sbs[k][i];
    const double coef = li - 1.0;
    if (coef <= 0.0) fx.new_cover = choose_cover(i, limit, {});
    fx.delta = coef * static_cast<double>(fx.new_cover.size()) - li * limit;
    return fx;
  }

  const int p = mv.target;
  if (p < 0 || p >= F2 || p == i || !attached(p)) return std::nullopt;
  if (subtree_depth(p) >= scenario_->max_hops()) return std::nullopt;

  // Nodes that gain i as an ancestor.
  std::vector<int> affected;
  NodeRef new_parent;
  double coef_i = 0.0;
  double capacity = 0.0;
  if (mv.kind == MoveKind::kInsertBefore) {
    const NodeRef q = plan_.sbs_parent[p];
    if (!t.link_usable(q, i) || !t.link_usable(NodeRef::Sbs(i), p)) {
      return std::nullopt;
    }
    new_parent = q;
    affected.push_back(p);
    for (int c : successors(p)) affected.push_back(c);
    coef_i = ancestor_lambda_[p] + li - 1.0;
    capacity = lambda_[p] * (t.link_limit(q, p) - t.n_sbs_sbs[i][p]);
  } else {
    if (!t.link_usable(NodeRef::Sbs(p), i)) return std::nullopt;
    for (int c : children_[p]) {
      if (!t.link_usable(NodeRef::Sbs(i), c)) return std::nullopt;
    }
    new_parent = NodeRef::Sbs(p);
    affected = successors(p);
    coef_i = ancestor_lambda_[p] + lambda_[p] + li - 1.0;
    for (int c : children_[p]) {
      capacity += lambda_[c] * (t.n_sbs_sbs[p][c] - t.n_sbs_sbs[i][c]);
    }
  }

  double delta = 0.0;
  for (int a : affected) {
    const int r = coverage(a);
    if (r == 0) continue;
    const double coef_old = ancestor_lambda_[a] + lambda_[a] - 1.0;
    if (coef_old + li > 0.0) {
      delta -= coef_old * r;
      fx.released.push_back(a);
    } else {
      delta += li * r;
    }
  }
  const int limit = t.link_limit(new_parent, i);
  if (coef_i <= 0.0) fx.new_cover = choose_cover(i, limit, fx.released);
  delta += coef_i * static_cast<double>(fx.new_cover.size());
  delta += -li * limit + capacity;
  fx.delta = delta;
  return fx;
}

void PathState::refresh_subtree(int root) {
  std::vector<int> stack{root};
  while (!stack.empty()) {
    const int a = stack.back();
    stack.pop_back();
    const NodeRef p = plan_.sbs_parent[a];
    if (p.is_ban()) {
      hop_[a] = 1;
      ancestor_lambda_[a] = 0.0;
    } else {
      hop_[a] = hop_[p.index] + 1;
      ancestor_lambda_[a] = ancestor_lambda_[p.index] + lambda_[p.index];
    }
    for (int c : children_[a]) stack.push_back(c);
  }
}

void PathState::apply(const AttachMove& mv, const MoveEffect& fx) {
  for (int a : fx.released) {
    for (int s : cover_of_[a]) plan_.sbs_cover[s] = -1;
    cover_of_[a].clear();
  }
  const int i = mv.sbs;
  switch (mv.kind) {
    case MoveKind::kAttachBan:
      plan_.sbs_parent[i] = NodeRef::Ban(mv.target);
      ++ban_slots_[mv.target];
      break;
    case MoveKind::kInsertBefore: {
      const int p = mv.target;
      const NodeRef q = plan_.sbs_parent[p];
      plan_.sbs_parent[i] = q;
      plan_.sbs_parent[p] = NodeRef::Sbs(i);
      if (q.is_sbs()) {
        std::replace(children_[q.index].begin(), children_[q.index].end(), p,
                     i);
      }
      children_[i] = {p};
      break;
    }
    case MoveKind::kInsertAfter: {
      const int p = mv.target;
      children_[i] = std::move(children_[p]);
      for (int c : children_[i]) plan_.sbs_parent[c] = NodeRef::Sbs(i);
      children_[p] = {i};
      plan_.sbs_parent[i] = NodeRef::Sbs(p);
      break;
    }
  }
  refresh_subtree(i);
  for (int s : fx.new_cover) plan_.sbs_cover[s] = i;
  cover_of_[i] = fx.new_cover;
  value_ += fx.delta;
}

std::optional<double> delta_attach_ban(const PathState& st, int sbs, int ban) {
  auto fx = st.evaluate({MoveKind::kAttachBan, sbs, ban});
  if (!fx) return std::nullopt;
  return fx->delta;
}

std::optional<double> delta_insert_before(const PathState& st, int sbs,
                                          int target) {
  auto fx = st.evaluate({MoveKind::kInsertBefore, sbs, target});
  if (!fx) return std::nullopt;
  return fx->delta;
}

std::optional<double> delta_insert_after(const PathState& st, int sbs,
                                         int target) {
  auto fx = st.evaluate({MoveKind::kInsertAfter, sbs, target});
  if (!fx) return std::nullopt;
  return fx->delta;
}

AssignResult assign_connections(const Deployment& d,
                                std::span<const double> lambda,
                                const Scenario& sc, const DerivedTables& t,
                                double theta) {
  PathState st(sc, t, d, lambda, theta);
  st.cover_by_bans();
  st.attach_mas();

  const int F1 = sc.num_bans();
  const int F2 = sc.num_sbss();
  std::vector<int> pending;
  for (int i = 0; i < F2; ++i) {
    if (d.sbss[i]) pending.push_back(i);
  }
  std::vector<int> placed;
  while (!pending.empty()) {
    std::optional<AttachMove> best_move;
    MoveEffect best_fx;
    auto consider = [&](const AttachMove& mv) {
      auto fx = st.evaluate(mv);
      if (!fx) return;
      if (!best_move || fx->delta < best_fx.delta) {
        best_move = mv;
        best_fx = std::move(*fx);
      }
    };
    for (int i : pending) {
      for (int k = 0; k < F1; ++k) {
        if (!d.bans[k] || !t.link_usable(NodeRef::Ban(k), i)) continue;
        consider({MoveKind::kAttachBan, i, k});
      }
      for (int p : placed) {
        consider({MoveKind::kInsertBefore, i, p});
        consider({MoveKind::kInsertAfter, i, p});
      }
    }
    if (!best_move) break;
    st.apply(*best_move, best_fx);
    const int i = best_move->sbs;
    pending.erase(std::find(pending.begin(), pending.end(), i));
    placed.insert(std::upper_bound(placed.begin(), placed.end(), i), i);
  }

  AssignResult out;
  out.plan = st.plan();
  out.value = st.value();
  out.unattached_sbs = pending;
  for (int j = 0; j < sc.num_mas(); ++j) {
    if (d.mas[j] && out.plan.ma_parent[j] < 0) out.unattached_ma.push_back(j);
  }
  return out;
}

std::vector<double> capacity_subgradient(const Solution& sol,
                                         const DerivedTables& t) {
  const int F2 = static_cast<int>(sol.plan.sbs_parent.size());
  const auto load = sbs_loads(sol.plan, F2);
  std::vector<double> g(F2, 0.0);
  for (int i = 0; i < F2; ++i) {
    const NodeRef p = sol.plan.sbs_parent[i];
    const int limit = p.valid() ? t.link_limit(p, i) : 0;
    g[i] = static_cast<double>(load[i] - limit);
  }
  return g;
}

Multipliers subgradient_update(std::span<const double> lambda,
                               const Solution& sol, const DerivedTables& t,
                               double best_upper, double best_lower,
                               double step_scale) {
  validate_multipliers(lambda, static_cast<int>(sol.plan.sbs_parent.size()));
  const auto g = capacity_subgradient(sol, t);
  double norm2 = 0.0;
  for (double v : g) norm2 += v * v;
  Multipliers out(lambda.begin(), lambda.end());
  if (norm2 == 0.0) return out;
  const double step =
      step_scale * std::max(0.0, best_upper - best_lower) / norm2;
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = std::max(0.0, out[i] + step * g[i]);
  }
  return out;
}

}  // namespace bhplan
