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

#include "bhplan/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <string>

#include "bhplan/flow.hpp"
#include "bhplan/model.hpp"

namespace bhplan {

void check_oracle_limits(const Scenario& sc, const OracleLimits& lim) {
  auto refuse = [](const std::string& what, int n, int cap) {
    throw LimitError("oracle refuses " + what + " = " + std::to_string(n) +
                     " (limit " + std::to_string(cap) + ")");
  };
  if (sc.num_bans() > lim.max_bans) refuse("BAN sites", sc.num_bans(), lim.max_bans);
  if (sc.num_sbss() > lim.max_sbss) refuse("SBS sites", sc.num_sbss(), lim.max_sbss);
  if (sc.num_mas() > lim.max_mas) refuse("MA sites", sc.num_mas(), lim.max_mas);
  if (sc.num_subareas() > lim.max_subareas) {
    refuse("subareas", sc.num_subareas(), lim.max_subareas);
  }
  if (sc.num_machines() > lim.max_machines) {
    refuse("machines", sc.num_machines(), lim.max_machines);
  }
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Slots = std::vector<int>;
// Best value per BAN slot-usage vector.
using SlotTable = std::map<Slots, double>;

void keep_min(SlotTable& table, const Slots& slots, double v) {
  auto [it, fresh] = table.emplace(slots, v);
  if (!fresh && v < it->second) it->second = v;
}

class Enumerator {
 public:
  Enumerator(const Scenario& sc, const DerivedTables& t, double theta,
             const OracleLimits& lim)
      : sc_(sc), t_(t), theta_(theta), lim_(lim) {
    check_oracle_limits(sc, lim);
    uniform_rates_ = true;
    for (const auto& m : sc.machines) {
      if (m.rate_bps != sc.machines.front().rate_bps) uniform_rates_ = false;
    }
  }

  // Scores one backhaul forest; lower is better.
  using ForestScore =
      std::function<double(const std::vector<NodeRef>& parent,
                           unsigned ban_mask, unsigned sbs_mask)>;

  // Best score per slot vector over every valid forest spanning exactly the
  // deployed SBSs.
  SlotTable forests(unsigned ban_mask, unsigned sbs_mask,
                    const ForestScore& score) {
    const int F1 = sc_.num_bans();
    const int F2 = sc_.num_sbss();
    std::vector<int> members;
    for (int i = 0; i < F2; ++i) {
      if (sbs_mask >> i & 1U) members.push_back(i);
    }
    std::vector<std::vector<NodeRef>> options(F2);
    for (int i : members) {
      for (int k = 0; k < F1; ++k) {
        if ((ban_mask >> k & 1U) && t_.link_usable(NodeRef::Ban(k), i)) {
          options[i].push_back(NodeRef::Ban(k));
        }
      }
      for (int q : members) {
        if (q != i && t_.link_usable(NodeRef::Sbs(q), i)) {
          options[i].push_back(NodeRef::Sbs(q));
        }
      }
    }
    SlotTable table;
    std::vector<NodeRef> parent(F2);
    std::function<void(std::size_t)> rec = [&](std::size_t n) {
      if (n == members.size()) {
        tick();
        Slots slots(F1, 0);
        for (int i : members) {
          if (parent[i].is_ban()) ++slots[parent[i].index];
          int cur = i;
          int hops = 0;
          while (parent[cur].is_sbs() && hops <= F2) {
            cur = parent[cur].index;
            ++hops;
          }
          if (!parent[cur].is_ban() || hops + 1 > sc_.max_hops()) return;
        }
        for (int k = 0; k < F1; ++k) {
          if (slots[k] > sc_.ban_slot_limit) return;
        }
        keep_min(table, slots, score(parent, ban_mask, sbs_mask));
        return;
      }
      const int i = members[n];
      for (NodeRef p : options[i]) {
        parent[i] = p;
        rec(n + 1);
      }
      parent[i] = {};
    };
    rec(0);
    return table;
  }

  // Uncovered subareas for a fixed forest, via max-flow over SBS capacities.
  double uncovered_subareas(const std::vector<NodeRef>& parent,
                            unsigned ban_mask, unsigned sbs_mask) const {
    const int S = sc_.num_subareas();
    const int F2 = sc_.num_sbss();
    const int src = S + F2;
    const int sink = src + 1;
    MaxFlow g(S + F2 + 2);
    int direct = 0;
    for (int s = 0; s < S; ++s) {
      bool by_ban = false;
      for (int k = 0; k < sc_.num_bans(); ++k) {
        if ((ban_mask >> k & 1U) && t_.ban_reaches(k, s)) by_ban = true;
      }
      if (by_ban) {
        ++direct;
        continue;
      }
      g.add_edge(src, s, 1);
      for (int i = 0; i < F2; ++i) {
        if ((sbs_mask >> i & 1U) && t_.sbs_reaches(i, s)) g.add_edge(s, S + i, 1);
      }
    }
    for (int i = 0; i < F2; ++i) {
      if (!(sbs_mask >> i & 1U)) continue;
      const int cap = t_.link_limit(parent[i], i);
      g.add_edge(S + i, parent[i].is_ban() ? sink : S + parent[i].index, cap);
    }
    return S - direct - g.run(src, sink);
  }

  // Forest part of the relaxed value: S + sum of per-subarea coefficients
  // minus the lambda-weighted link limits.
  double relaxed_forest(const std::vector<NodeRef>& parent, unsigned ban_mask,
                        unsigned sbs_mask, std::span<const double> lambda) const {
    const int F2 = sc_.num_sbss();
    std::vector<double> coef(F2, kInf);
    double v = sc_.num_subareas();
    for (int i = 0; i < F2; ++i) {
      if (!(sbs_mask >> i & 1U)) continue;
      double anc = 0.0;
      for (NodeRef p = parent[i]; p.is_sbs(); p = parent[p.index]) {
        anc += lambda[p.index];
      }
      coef[i] = anc + lambda[i] - 1.0;
      v -= lambda[i] * t_.link_limit(parent[i], i);
    }
    for (int s = 0; s < sc_.num_subareas(); ++s) {
      double best = 0.0;
      for (int k = 0; k < sc_.num_bans(); ++k) {
        if ((ban_mask >> k & 1U) && t_.ban_reaches(k, s)) best = std::min(best, -1.0);
      }
      for (int i = 0; i < F2; ++i) {
        if ((sbs_mask >> i & 1U) && t_.sbs_reaches(i, s)) best = std::min(best, coef[i]);
      }
      v += best;
    }
    return v;
  }

  // Uncovered machines per slot vector over every MA -> BAN assignment.
  SlotTable ma_assignments(unsigned ban_mask, unsigned ma_mask) {
    const int F1 = sc_.num_bans();
    const int F3 = sc_.num_mas();
    std::vector<int> members;
    for (int j = 0; j < F3; ++j) {
      if (ma_mask >> j & 1U) members.push_back(j);
    }
    SlotTable table;
    std::vector<int> parent(F3, -1);
    std::function<void(std::size_t)> rec = [&](std::size_t n) {
      if (n == members.size()) {
        tick();
        Slots slots(F1, 0);
        for (int j : members) ++slots[parent[j]];
        for (int k = 0; k < F1; ++k) {
          if (slots[k] > sc_.ban_slot_limit) return;
        }
        keep_min(table, slots, uncovered_machines(parent, ma_mask));
        return;
      }
      const int j = members[n];
      for (int k = 0; k < F1; ++k) {
        if ((ban_mask >> k & 1U) && t_.ma_link_usable(k, j)) {
          parent[j] = k;
          rec(n + 1);
        }
      }
      parent[j] = -1;
    };
    rec(0);
    return table;
  }

  double uncovered_machines(const std::vector<int>& parent,
                            unsigned ma_mask) const {
    const int M = sc_.num_machines();
    const int F3 = sc_.num_mas();
    const double delta = sc_.radio.compression_ratio;
    if (uniform_rates_ || M == 0) {
      const double load = M ? sc_.machines.front().rate_bps * delta : 0.0;
      const int src = M + F3;
      const int sink = src + 1;
      MaxFlow g(M + F3 + 2);
      for (int m = 0; m < M; ++m) g.add_edge(src, m, 1);
      for (int j = 0; j < F3; ++j) {
        if (!(ma_mask >> j & 1U)) continue;
        for (int m : t_.ma_reach[j]) g.add_edge(m, M + j, 1);
        const double cap = t_.cap_ban_ma[parent[j]][j];
        int n = t_.machine_limit;
        if (load > 0.0) {
          n = static_cast<int>(std::min<double>(n, std::floor(cap / load + 1e-9)));
        }
        g.add_edge(M + j, sink, n);
      }
      return M - g.run(src, sink);
    }
    // Mixed rates: branch and bound over machines.
    std::vector<int> count(F3, 0);
    std::vector<double> room(F3, 0.0);
    for (int j = 0; j < F3; ++j) {
      if (ma_mask >> j & 1U) room[j] = t_.cap_ban_ma[parent[j]][j] + 1e-9;
    }
    std::vector<std::vector<int>> eligible(M);
    for (int j = 0; j < F3; ++j) {
      if (!(ma_mask >> j & 1U)) continue;
      for (int m : t_.ma_reach[j]) eligible[m].push_back(j);
    }
    int best = 0;
    std::function<void(int, int)> rec = [&](int m, int covered) {
      if (covered + (M - m) <= best) return;
      if (m == M) {
        best = covered;
        return;
      }
      const double load = sc_.machines[m].rate_bps * delta;
      for (int j : eligible[m]) {
        if (count[j] < t_.machine_limit && load <= room[j]) {
          ++count[j];
          room[j] -= load;
          rec(m + 1, covered + 1);
          --count[j];
          room[j] += load;
        }
      }
      rec(m + 1, covered);
    };
    rec(0, 0);
    return M - best;
  }

  // min over compatible (forest, MA) pairs of forest + theta * machines.
  double combine(const SlotTable& forest, const SlotTable& ma) const {
    double best = kInf;
    for (const auto& [u, fv] : forest) {
      for (const auto& [v, mv] : ma) {
        bool ok = true;
        for (std::size_t k = 0; k < u.size(); ++k) {
          if (u[k] + v[k] > sc_.ban_slot_limit) ok = false;
        }
        if (ok) best = std::min(best, fv + theta_ * mv);
      }
    }
    return best;
  }

  double mask_cost(unsigned b, unsigned s, unsigned m) const {
    double c = 0.0;
    for (int k = 0; k < sc_.num_bans(); ++k) {
      if (b >> k & 1U) c += sc_.ban_sites[k].cost;
    }
    for (int i = 0; i < sc_.num_sbss(); ++i) {
      if (s >> i & 1U) c += sc_.sbs_sites[i].cost;
    }
    for (int j = 0; j < sc_.num_mas(); ++j) {
      if (m >> j & 1U) c += sc_.ma_sites[j].cost;
    }
    return c;
  }

  // Calls visit(cost, value) for every feasible deployment within budget.
  template <typename ForestFn, typename Visit>
  void each_deployment(double budget, ForestFn forest_fn, Visit visit) {
    const unsigned nb = 1U << sc_.num_bans();
    const unsigned ns = 1U << sc_.num_sbss();
    const unsigned nm = 1U << sc_.num_mas();
    std::map<std::pair<unsigned, unsigned>, SlotTable> ma_cache;
    for (unsigned b = 0; b < nb; ++b) {
      for (unsigned s = 0; s < ns; ++s) {
        if (mask_cost(b, s, 0) > budget + 1e-9) continue;
        const SlotTable ft = forest_fn(b, s);
        if (ft.empty()) continue;
        for (unsigned m = 0; m < nm; ++m) {
          const double c = mask_cost(b, s, m);
          if (c > budget + 1e-9) continue;
          auto key = std::make_pair(b, m);
          auto it = ma_cache.find(key);
          if (it == ma_cache.end()) {
            it = ma_cache.emplace(key, ma_assignments(b, m)).first;
          }
          if (it->second.empty()) continue;
          const double v = combine(ft, it->second);
          if (v < kInf) visit(c, v);
        }
      }
    }
  }

  SlotTable exact_forests(unsigned b, unsigned s) {
    auto key = std::make_pair(b, s);
    auto it = exact_cache_.find(key);
    if (it != exact_cache_.end()) return it->second;
    SlotTable table = forests(b, s, [&](const auto& parent, unsigned bm,
                                        unsigned sm) {
      return uncovered_subareas(parent, bm, sm);
    });
    exact_cache_.emplace(key, table);
    return table;
  }

 private:
  void tick() {
    if (++states_ > lim_.max_states) {
      throw LimitError("oracle state count exceeds " +
                       std::to_string(lim_.max_states));
    }
  }

  const Scenario& sc_;
  const DerivedTables& t_;
  double theta_;
  OracleLimits lim_;
  bool uniform_rates_ = true;
  std::int64_t states_ = 0;
  std::map<std::pair<unsigned, unsigned>, SlotTable> exact_cache_;
};

}  // namespace

std::vector<OraclePoint> exact_front(const Scenario& sc, const DerivedTables& t,
                                     double theta, const OracleLimits& lim) {
  Enumerator en(sc, t, theta, lim);
  std::vector<OraclePoint> all;
  en.each_deployment(
      kInf, [&](unsigned b, unsigned s) { return en.exact_forests(b, s); },
      [&](double c, double v) { all.push_back({c, v}); });
  std::sort(all.begin(), all.end(), [](const OraclePoint& a, const OraclePoint& b) {
    return a.f1 < b.f1 || (a.f1 == b.f1 && a.fc < b.fc);
  });
  std::vector<OraclePoint> front;
  for (const auto& p : all) {
    if (front.empty() || p.fc < front.back().fc) front.push_back(p);
  }
  for (const auto& a : front) {
    for (const auto& b : front) {
      if (dominates(a.f1, a.fc, b.f1, b.fc)) {
        throw IntegrityError("oracle front is not mutually nondominated");
      }
    }
  }
  return front;
}

double exact_constrained_optimum(const Scenario& sc, const DerivedTables& t,
                                 double budget, double theta,
                                 const OracleLimits& lim) {
  Enumerator en(sc, t, theta, lim);
  double best = kInf;
  en.each_deployment(
      budget, [&](unsigned b, unsigned s) { return en.exact_forests(b, s); },
      [&](double, double v) { best = std::min(best, v); });
  return best;
}

double exact_relaxed_optimum(const Scenario& sc, const DerivedTables& t,
                             std::span<const double> lambda, double budget,
                             double theta, const OracleLimits& lim) {
  if (static_cast<int>(lambda.size()) != sc.num_sbss()) {
    throw InputError("lambda size does not match the SBS count");
  }
  for (double l : lambda) {
    if (!std::isfinite(l) || l < 0.0) throw InputError("lambda must be >= 0");
  }
  Enumerator en(sc, t, theta, lim);
  double best = kInf;
  en.each_deployment(
      budget,
      [&](unsigned b, unsigned s) {
        return en.forests(b, s, [&](const auto& parent, unsigned bm,
                                    unsigned sm) {
          return en.relaxed_forest(parent, bm, sm, lambda);
        });
      },
      [&](double, double v) { best = std::min(best, v); });
  return best;
}

}  // namespace bhplan
