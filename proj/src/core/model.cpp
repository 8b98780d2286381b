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

#include "bhplan/model.hpp"

#include <algorithm>
#include <string>

namespace bhplan {
namespace {

std::string node_name(NodeRef n) {
  if (n.is_ban()) return "ban " + std::to_string(n.index);
  if (n.is_sbs()) return "sbs " + std::to_string(n.index);
  return "none";
}

bool in_range(int v, std::size_t n) {
  return v >= 0 && static_cast<std::size_t>(v) < n;
}

}  // namespace

Deployment Deployment::Empty(const Scenario& sc) {
  return {std::vector<bool>(sc.num_bans(), false),
          std::vector<bool>(sc.num_sbss(), false),
          std::vector<bool>(sc.num_mas(), false)};
}

Deployment Deployment::Full(const Scenario& sc) {
  return {std::vector<bool>(sc.num_bans(), true),
          std::vector<bool>(sc.num_sbss(), true),
          std::vector<bool>(sc.num_mas(), true)};
}

bool Deployment::matches(const Scenario& sc) const {
  return static_cast<int>(bans.size()) == sc.num_bans() &&
         static_cast<int>(sbss.size()) == sc.num_sbss() &&
         static_cast<int>(mas.size()) == sc.num_mas();
}

int Deployment::count() const {
  return static_cast<int>(std::count(bans.begin(), bans.end(), true) +
                          std::count(sbss.begin(), sbss.end(), true) +
                          std::count(mas.begin(), mas.end(), true));
}

std::size_t DeploymentHash::operator()(const Deployment& d) const {
  std::size_t h = 1469598103934665603ULL;
  auto mix = [&](const std::vector<bool>& bits) {
    for (bool b : bits) h = (h ^ (b ? 0x9e : 0x37)) * 1099511628211ULL;
    h = (h ^ 0xff) * 1099511628211ULL;
  };
  mix(d.bans);
  mix(d.sbss);
  mix(d.mas);
  return h;
}

ConnectionPlan ConnectionPlan::Empty(const Scenario& sc) {
  ConnectionPlan p;
  p.ban_cover.assign(sc.num_subareas(), -1);
  p.sbs_cover.assign(sc.num_subareas(), -1);
  p.sbs_parent.assign(sc.num_sbss(), NodeRef{});
  p.ma_parent.assign(sc.num_mas(), -1);
  p.machine_cover.assign(sc.num_machines(), -1);
  return p;
}

bool ConnectionPlan::matches(const Scenario& sc) const {
  return static_cast<int>(ban_cover.size()) == sc.num_subareas() &&
         static_cast<int>(sbs_cover.size()) == sc.num_subareas() &&
         static_cast<int>(sbs_parent.size()) == sc.num_sbss() &&
         static_cast<int>(ma_parent.size()) == sc.num_mas() &&
         static_cast<int>(machine_cover.size()) == sc.num_machines();
}

Solution Solution::Empty(const Scenario& sc) {
  return {Deployment::Empty(sc), ConnectionPlan::Empty(sc)};
}

double cost(const Deployment& d, const Scenario& sc) {
  double total = 0.0;
  for (int k = 0; k < sc.num_bans(); ++k) {
    if (d.bans[k]) total += sc.ban_sites[k].cost;
  }
  for (int i = 0; i < sc.num_sbss(); ++i) {
    if (d.sbss[i]) total += sc.sbs_sites[i].cost;
  }
  for (int j = 0; j < sc.num_mas(); ++j) {
    if (d.mas[j]) total += sc.ma_sites[j].cost;
  }
  return total;
}

ObjectiveVector objectives(const Solution& sol, const Scenario& sc,
                           double theta) {
  ObjectiveVector o;
  o.f1 = cost(sol.deployment, sc);
  int covered = 0;
  for (int s = 0; s < sc.num_subareas(); ++s) {
    if (sol.plan.ban_cover[s] >= 0 || sol.plan.sbs_cover[s] >= 0) ++covered;
  }
  int machines = 0;
  for (int m : sol.plan.machine_cover) {
    if (m >= 0) ++machines;
  }
  o.f2 = sc.num_subareas() - covered;
  o.f3 = sc.num_machines() - machines;
  o.fc = o.f2 + theta * o.f3;
  return o;
}

bool dominates(double a_f1, double a_fc, double b_f1, double b_fc) {
  return a_f1 <= b_f1 && a_fc <= b_fc && (a_f1 < b_f1 || a_fc < b_fc);
}

std::optional<std::vector<NodeRef>> path_to_root(const ConnectionPlan& plan,
                                                 int sbs) {
  const int n = static_cast<int>(plan.sbs_parent.size());
  std::vector<NodeRef> path{NodeRef::Sbs(sbs)};
  int cur = sbs;
  for (int steps = 0; steps <= n; ++steps) {
    const NodeRef parent = plan.sbs_parent[cur];
    if (parent.is_ban()) {
      path.push_back(parent);
      std::reverse(path.begin(), path.end());
      return path;
    }
    if (!parent.is_sbs()) return std::nullopt;
    if (!in_range(parent.index, plan.sbs_parent.size())) return std::nullopt;
    cur = parent.index;
    path.push_back(parent);
  }
  throw IntegrityError("cyclic backhaul parent chain at sbs " +
                       std::to_string(sbs));
}

std::vector<std::vector<FlowHop>> routing_flows(const Solution& sol) {
  const auto& plan = sol.plan;
  std::vector<std::vector<FlowHop>> flows(plan.sbs_cover.size());
  for (std::size_t s = 0; s < plan.sbs_cover.size(); ++s) {
    const int i = plan.sbs_cover[s];
    if (i < 0) continue;
    const auto path = path_to_root(plan, i);
    if (!path) {
      throw IntegrityError("subarea " + std::to_string(s) + " covered by sbs " +
                           std::to_string(i) + " has no root BAN");
    }
    for (std::size_t h = 0; h + 1 < path->size(); ++h) {
      flows[s].push_back({(*path)[h], (*path)[h + 1].index});
    }
  }
  return flows;
}

std::vector<int> sbs_loads(const ConnectionPlan& plan, int num_sbss) {
  std::vector<int> load(num_sbss, 0);
  for (int i : plan.sbs_cover) {
    if (i < 0) continue;
    int cur = i;
    for (int steps = 0;; ++steps) {
      if (steps > num_sbss) {
        throw IntegrityError("cyclic backhaul parent chain at sbs " +
                             std::to_string(i));
      }
      ++load[cur];
      const NodeRef p = plan.sbs_parent[cur];
      if (!p.is_sbs() || !in_range(p.index, load.size())) break;
      cur = p.index;
    }
  }
  return load;
}

std::vector<Violation> check_feasibility(const Solution& sol,
                                         const Scenario& sc,
                                         const DerivedTables& t,
                                         std::optional<double> budget) {
  std::vector<Violation> out;
  const auto& d = sol.deployment;
  const auto& plan = sol.plan;
  if (!d.matches(sc) || !plan.matches(sc)) {
    out.push_back({"shape", "solution dimensions do not match the scenario"});
    return out;
  }
  auto add = [&](const char* id, std::string detail) {
    out.push_back({id, std::move(detail)});
  };
  const int S = sc.num_subareas();
  const int F1 = sc.num_bans();
  const int F2 = sc.num_sbss();
  const int F3 = sc.num_mas();
  const int M = sc.num_machines();

  // Index sanity first: everything below assumes in-range references.
  bool bad_index = false;
  for (int s = 0; s < S; ++s) {
    if (plan.ban_cover[s] >= F1 || plan.sbs_cover[s] >= F2) {
      add("shape", "subarea " + std::to_string(s) + " references a bad site");
      bad_index = true;
    }
  }
  for (int i = 0; i < F2; ++i) {
    const NodeRef p = plan.sbs_parent[i];
    if ((p.is_ban() && !in_range(p.index, F1)) ||
        (p.is_sbs() && !in_range(p.index, F2))) {
      add("shape", "sbs " + std::to_string(i) + " parent out of range");
      bad_index = true;
    }
  }
  for (int j = 0; j < F3; ++j) {
    if (plan.ma_parent[j] >= F1) {
      add("shape", "ma " + std::to_string(j) + " parent out of range");
      bad_index = true;
    }
  }
  for (int m = 0; m < M; ++m) {
    if (plan.machine_cover[m] >= F3) {
      add("shape", "machine " + std::to_string(m) + " references a bad MA");
      bad_index = true;
    }
  }
  if (bad_index) return out;

  // Access: deployed-only, unique, in range.
  for (int s = 0; s < S; ++s) {
    const int k = plan.ban_cover[s];
    const int i = plan.sbs_cover[s];
    if (k >= 0 && !d.bans[k]) {
      add("access-deployed", "subarea " + std::to_string(s) + " ban " +
                                 std::to_string(k));
    }
    if (i >= 0 && !d.sbss[i]) {
      add("access-deployed", "subarea " + std::to_string(s) + " sbs " +
                                 std::to_string(i));
    }
    if (k >= 0 && i >= 0) {
      add("unique-coverage", "subarea " + std::to_string(s) + " ban " +
                                 std::to_string(k) + " sbs " +
                                 std::to_string(i));
    }
    if (k >= 0 && !t.ban_reaches(k, s)) {
      add("access-distance", "subarea " + std::to_string(s) + " ban " +
                                 std::to_string(k));
    }
    if (i >= 0 && !t.sbs_reaches(i, s)) {
      add("access-distance", "subarea " + std::to_string(s) + " sbs " +
                                 std::to_string(i));
    }
  }

  // Backhaul edges.
  std::vector<int> ban_children(F1, 0);
  for (int i = 0; i < F2; ++i) {
    const NodeRef p = plan.sbs_parent[i];
    if (!p.valid()) continue;
    const bool parent_deployed = p.is_ban() ? d.bans[p.index] : d.sbss[p.index];
    if (!d.sbss[i] || !parent_deployed) {
      add("backhaul-deployed",
          "sbs " + std::to_string(i) + " parent " + node_name(p));
    }
    if (!t.link_usable(p, i)) {
      add("backhaul-link", "sbs " + std::to_string(i) + " parent " +
                               node_name(p));
    }
    if (p.is_ban()) ++ban_children[p.index];
  }
  for (int j = 0; j < F3; ++j) {
    const int k = plan.ma_parent[j];
    if (k < 0) continue;
    if (!d.mas[j] || !d.bans[k]) {
      add("ma-deployed",
          "ma " + std::to_string(j) + " parent ban " + std::to_string(k));
    }
    if (!t.ma_link_usable(k, j)) {
      add("backhaul-link",
          "ma " + std::to_string(j) + " parent ban " + std::to_string(k));
    }
    ++ban_children[k];
  }
  for (int k = 0; k < F1; ++k) {
    if (ban_children[k] > sc.ban_slot_limit) {
      add("ban-slots", "ban " + std::to_string(k) + " serves " +
                           std::to_string(ban_children[k]));
    }
  }
  for (int i = 0; i < F2; ++i) {
    if (d.sbss[i] && !plan.sbs_parent[i].valid()) {
      add("sbs-backhaul", "sbs " + std::to_string(i));
    }
  }

  // Routing and hop count via root paths.
  bool cyclic = false;
  std::vector<int> hops(F2, -1);
  for (int i = 0; i < F2; ++i) {
    if (!plan.sbs_parent[i].valid()) continue;
    try {
      const auto path = path_to_root(plan, i);
      if (path) hops[i] = static_cast<int>(path->size()) - 1;
    } catch (const IntegrityError&) {
      cyclic = true;
      add("routing", "sbs " + std::to_string(i) + " lies on a parent cycle");
    }
  }
  for (int s = 0; s < S && !cyclic; ++s) {
    const int i = plan.sbs_cover[s];
    if (i >= 0 && hops[i] < 0) {
      add("routing", "subarea " + std::to_string(s) + " sbs " +
                         std::to_string(i) + " has no path to a BAN");
    }
  }
  for (int i = 0; i < F2; ++i) {
    if (hops[i] > sc.max_hops()) {
      add("hop-limit", "sbs " + std::to_string(i) + " at hop " +
                           std::to_string(hops[i]));
    }
  }
  if (!cyclic) {
    const auto load = sbs_loads(plan, F2);
    for (int i = 0; i < F2; ++i) {
      const NodeRef p = plan.sbs_parent[i];
      const int limit = p.valid() ? t.link_limit(p, i) : 0;
      if (load[i] > limit) {
        add("sbs-capacity", "sbs " + std::to_string(i) + " carries " +
                                std::to_string(load[i]) + " > " +
                                std::to_string(limit));
      }
    }
  }

  // Machines.
  std::vector<int> ma_count(F3, 0);
  std::vector<double> ma_rate(F3, 0.0);
  for (int m = 0; m < M; ++m) {
    const int j = plan.machine_cover[m];
    if (j < 0) continue;
    if (!d.mas[j]) {
      add("machine-deployed",
          "machine " + std::to_string(m) + " ma " + std::to_string(j));
    }
    if (t.ma_machine_dist[j][m] > t.ma_range) {
      add("machine-distance",
          "machine " + std::to_string(m) + " ma " + std::to_string(j));
    }
    ++ma_count[j];
    ma_rate[j] += sc.machines[m].rate_bps * sc.radio.compression_ratio;
  }
  for (int j = 0; j < F3; ++j) {
    if (ma_count[j] > t.machine_limit) {
      add("ma-limit", "ma " + std::to_string(j) + " covers " +
                          std::to_string(ma_count[j]));
    }
    if (d.mas[j] && plan.ma_parent[j] < 0) {
      add("ma-backhaul", "ma " + std::to_string(j));
    }
    const int k = plan.ma_parent[j];
    const double cap = k >= 0 ? t.cap_ban_ma[k][j] : 0.0;
    if (ma_rate[j] > cap + 1e-9) {
      add("ma-capacity", "ma " + std::to_string(j) + " needs " +
                             std::to_string(ma_rate[j]) + " bps");
    }
  }

  if (budget && cost(d, sc) > *budget + 1e-9) {
    add("budget", "cost " + std::to_string(cost(d, sc)) + " > " +
                      std::to_string(*budget));
  }
  return out;
}

}  // namespace bhplan
