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

#include "bhplan/tabu.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>

namespace bhplan {
namespace {

constexpr double kCostSlack = 1e-9;

std::vector<SiteRef> level_sites(const Scenario& sc, SearchLevel level) {
  std::vector<SiteRef> out;
  if (level == SearchLevel::kBan) {
    for (int k = 0; k < sc.num_bans(); ++k) out.push_back({StationRole::kBan, k});
  } else {
    for (int i = 0; i < sc.num_sbss(); ++i) out.push_back({StationRole::kSbs, i});
    for (int j = 0; j < sc.num_mas(); ++j) out.push_back({StationRole::kMa, j});
  }
  return out;
}

std::string site_name(SiteRef s) {
  const char* prefix = s.role == StationRole::kBan   ? "b"
                       : s.role == StationRole::kSbs ? "s"
                                                     : "m";
  return prefix + std::to_string(s.index);
}

}  // namespace

void SearchParams::validate() const {
  if (outer_iterations <= 0 || inner_iterations <= 0) {
    throw InputError("search iteration budgets must be positive");
  }
  if (diversification < 0 || swap_cap < 0) {
    throw InputError("n_div and n_swap must be >= 0");
  }
  if (tenure_outer <= 0 || tenure_inner <= 0) {
    throw InputError("tabu tenures must be positive");
  }
  if (tenure_outer >= outer_iterations || tenure_inner >= inner_iterations) {
    throw InputError("tabu tenures must be below their iteration budgets");
  }
}

std::string to_string(const DeployMove& m) {
  switch (m.kind) {
    case DeployMoveKind::kOpen:
      return "open " + site_name(m.open);
    case DeployMoveKind::kClose:
      return "close " + site_name(m.close);
    case DeployMoveKind::kSwap:
      return "swap " + site_name(m.close) + "->" + site_name(m.open);
  }
  return "?";
}

bool is_deployed(const Deployment& d, SiteRef s) {
  switch (s.role) {
    case StationRole::kBan:
      return d.bans[s.index];
    case StationRole::kSbs:
      return d.sbss[s.index];
    case StationRole::kMa:
      return d.mas[s.index];
  }
  return false;
}

void set_deployed(Deployment& d, SiteRef s, bool on) {
  switch (s.role) {
    case StationRole::kBan:
      d.bans[s.index] = on;
      break;
    case StationRole::kSbs:
      d.sbss[s.index] = on;
      break;
    case StationRole::kMa:
      d.mas[s.index] = on;
      break;
  }
}

double site_cost(const Scenario& sc, SiteRef s) {
  switch (s.role) {
    case StationRole::kBan:
      return sc.ban_sites[s.index].cost;
    case StationRole::kSbs:
      return sc.sbs_sites[s.index].cost;
    case StationRole::kMa:
      return sc.ma_sites[s.index].cost;
  }
  return 0.0;
}

Deployment apply_move(const Deployment& d, const DeployMove& m) {
  Deployment out = d;
  if (m.kind != DeployMoveKind::kOpen) set_deployed(out, m.close, false);
  if (m.kind != DeployMoveKind::kClose) set_deployed(out, m.open, true);
  return out;
}

Deployment initial_deployment(const Scenario& sc, double budget) {
  Deployment d = Deployment::Empty(sc);
  double spent = 0.0;
  auto cheapest = [&](const std::vector<SiteRef>& sites) {
    std::optional<SiteRef> best;
    for (SiteRef s : sites) {
      if (is_deployed(d, s)) continue;
      if (!best || site_cost(sc, s) < site_cost(sc, *best)) best = s;
    }
    return best;
  };
  const auto bans = level_sites(sc, SearchLevel::kBan);
  const auto others = level_sites(sc, SearchLevel::kSbsMa);
  bool any_ban = false;
  while (spent < budget) {
    auto k = cheapest(bans);
    if (k && spent + site_cost(sc, *k) <= budget + kCostSlack) {
      set_deployed(d, *k, true);
      spent += site_cost(sc, *k);
      any_ban = true;
      continue;
    }
    if (!any_ban) break;
    auto p = cheapest(others);
    if (!p || spent + site_cost(sc, *p) > budget + kCostSlack) break;
    set_deployed(d, *p, true);
    spent += site_cost(sc, *p);
  }
  return d;
}

std::vector<DeployMove> neighborhood(const Deployment& d, SearchLevel level,
                                     double budget, const Scenario& sc,
                                     int swap_cap, Rng* rng) {
  const auto sites = level_sites(sc, level);
  const double f = cost(d, sc);
  std::vector<DeployMove> opens, closes, swaps;
  for (SiteRef s : sites) {
    if (is_deployed(d, s)) {
      if (f - site_cost(sc, s) <= budget + kCostSlack) {
        closes.push_back({DeployMoveKind::kClose, s, {}});
      }
    } else if (f + site_cost(sc, s) <= budget + kCostSlack) {
      opens.push_back({DeployMoveKind::kOpen, {}, s});
    }
  }
  for (SiteRef out : sites) {
    if (!is_deployed(d, out)) continue;
    for (SiteRef in : sites) {
      if (is_deployed(d, in)) continue;
      if (f - site_cost(sc, out) + site_cost(sc, in) <= budget + kCostSlack) {
        swaps.push_back({DeployMoveKind::kSwap, out, in});
      }
    }
  }
  if (swap_cap > 0 && static_cast<int>(swaps.size()) > swap_cap) {
    if (rng == nullptr) {
      swaps.resize(swap_cap);
    } else {
      std::vector<std::size_t> order(swaps.size());
      std::iota(order.begin(), order.end(), 0);
      for (int n = 0; n < swap_cap; ++n) {
        const auto pick = n + rng->below(order.size() - n);
        std::swap(order[n], order[pick]);
      }
      order.resize(swap_cap);
      std::sort(order.begin(), order.end());
      std::vector<DeployMove> kept;
      for (auto o : order) kept.push_back(swaps[o]);
      swaps = std::move(kept);
    }
  }
  std::vector<DeployMove> all = std::move(opens);
  all.insert(all.end(), closes.begin(), closes.end());
  all.insert(all.end(), swaps.begin(), swaps.end());
  return all;
}

// ---------------------------------------------------------------------------

TabuState::TabuState(const Scenario& sc)
    : ban_expiry_(sc.num_bans(), -1),
      sbs_expiry_(sc.num_sbss(), -1),
      ma_expiry_(sc.num_mas(), -1),
      sbs_freq_(sc.num_sbss(), 0),
      ma_freq_(sc.num_mas(), 0),
      ban_freq_(sc.num_bans(), 0) {}

int& TabuState::expiry(SiteRef s) {
  switch (s.role) {
    case StationRole::kBan:
      return ban_expiry_[s.index];
    case StationRole::kSbs:
      return sbs_expiry_[s.index];
    default:
      return ma_expiry_[s.index];
  }
}

int TabuState::expiry(SiteRef s) const {
  return const_cast<TabuState*>(this)->expiry(s);
}

bool TabuState::is_tabu(SearchLevel, const DeployMove& m, int now) const {
  if (m.kind != DeployMoveKind::kOpen && expiry(m.close) > now) return true;
  if (m.kind != DeployMoveKind::kClose && expiry(m.open) > now) return true;
  return false;
}

void TabuState::make_tabu(SearchLevel, const DeployMove& m, int now,
                          int tenure) {
  if (m.kind != DeployMoveKind::kOpen) expiry(m.close) = now + tenure;
  if (m.kind != DeployMoveKind::kClose) expiry(m.open) = now + tenure;
}

void TabuState::clear(SearchLevel level) {
  if (level == SearchLevel::kBan) {
    std::fill(ban_expiry_.begin(), ban_expiry_.end(), -1);
  } else {
    std::fill(sbs_expiry_.begin(), sbs_expiry_.end(), -1);
    std::fill(ma_expiry_.begin(), ma_expiry_.end(), -1);
  }
}

void TabuState::record_deployment(const Deployment& d) {
  for (std::size_t k = 0; k < d.bans.size(); ++k) ban_freq_[k] += d.bans[k];
  for (std::size_t i = 0; i < d.sbss.size(); ++i) sbs_freq_[i] += d.sbss[i];
  for (std::size_t j = 0; j < d.mas.size(); ++j) ma_freq_[j] += d.mas[j];
}

std::int64_t TabuState::frequency(SiteRef s) const {
  switch (s.role) {
    case StationRole::kBan:
      return ban_freq_[s.index];
    case StationRole::kSbs:
      return sbs_freq_[s.index];
    default:
      return ma_freq_[s.index];
  }
}

// ---------------------------------------------------------------------------

namespace {

class RelaxedSearch {
 public:
  RelaxedSearch(const Scenario& sc, const DerivedTables& t, double budget,
                std::span<const double> lambda, double theta,
                const SearchParams& params)
      : sc_(sc),
        t_(t),
        budget_(budget),
        lambda_(lambda.begin(), lambda.end()),
        theta_(theta),
        params_(params),
        rng_(params.seed),
        tabu_(sc) {}

  RelaxedSolveResult run() {
    RelaxedSolveResult res;
    Deployment d = initial_deployment(sc_, budget_);
    double vb = evaluate(d);
    Deployment best = d;
    res.incumbent_trace.push_back(vb);
    int clock_inner = 0;

    for (int t1 = 0; t1 < params_.outer_iterations; ++t1) {
      TraceRow row{t1, -1, vb, vb, "", 0, false};
      step(d, SearchLevel::kBan, t1, params_.tenure_outer, vb, best, row);
      res.incumbent_trace.push_back(vb);
      res.trace.push_back(row);
      tabu_.record_deployment(d);

      for (int t2 = 0; t2 < params_.inner_iterations; ++t2) {
        TraceRow irow{t1, t2, vb, vb, "", 0, false};
        const bool moved = step(d, SearchLevel::kSbsMa, clock_inner,
                                params_.tenure_inner, vb, best, irow);
        if (!moved && irow.tabu_hits > 0) {
          diversify(d);
          irow.diversified = true;
        }
        ++clock_inner;
        res.incumbent_trace.push_back(vb);
        irow.incumbent = vb;
        res.trace.push_back(irow);
        tabu_.record_deployment(d);
      }
    }

    AssignResult final = assign_connections(best, lambda_, sc_, t_, theta_);
    res.solution = {best, std::move(final.plan)};
    res.value = vb;
    res.evaluations = evaluations_;
    return res;
  }

 private:
  double evaluate(const Deployment& d) {
    auto it = cache_.find(d);
    if (it != cache_.end()) return it->second;
    ++evaluations_;
    const double v = assign_connections(d, lambda_, sc_, t_, theta_).value;
    cache_.emplace(d, v);
    return v;
  }

  // One tabu step at `level`. Returns whether the current deployment moved.
  bool step(Deployment& d, SearchLevel level, int now, int tenure, double& vb,
            Deployment& best, TraceRow& row) {
    const auto moves =
        neighborhood(d, level, budget_, sc_, params_.swap_cap, &rng_);
    if (moves.empty()) return false;
    std::vector<double> values(moves.size());
    std::size_t arg_all = 0;
    for (std::size_t m = 0; m < moves.size(); ++m) {
      values[m] = evaluate(apply_move(d, moves[m]));
      if (values[m] < values[arg_all]) arg_all = m;
    }
    row.best_candidate = values[arg_all];
    std::optional<std::size_t> chosen;
    if (values[arg_all] < vb) {
      // Aspiration: an improving move is taken even if tabu.
      vb = values[arg_all];
      best = apply_move(d, moves[arg_all]);
      chosen = arg_all;
    } else {
      for (std::size_t m = 0; m < moves.size(); ++m) {
        if (tabu_.is_tabu(level, moves[m], now)) {
          ++row.tabu_hits;
          continue;
        }
        if (!chosen || values[m] < values[*chosen]) chosen = m;
      }
    }
    row.incumbent = vb;
    if (!chosen) return false;
    row.move = to_string(moves[*chosen]);
    d = apply_move(d, moves[*chosen]);
    tabu_.make_tabu(level, moves[*chosen], now, tenure);
    return true;
  }

  // Restart diversification: open the N_div least-deployed SBS/MA sites,
  // closing random deployed ones when the budget would be exceeded.
  void diversify(Deployment& d) {
    auto sites = level_sites(sc_, SearchLevel::kSbsMa);
    std::vector<SiteRef> closed;
    for (SiteRef s : sites) {
      if (!is_deployed(d, s)) closed.push_back(s);
    }
    std::stable_sort(closed.begin(), closed.end(), [&](SiteRef a, SiteRef b) {
      return tabu_.frequency(a) < tabu_.frequency(b);
    });
    if (static_cast<int>(closed.size()) > params_.diversification) {
      closed.resize(params_.diversification);
    }
    std::vector<SiteRef> opened;
    for (SiteRef s : closed) {
      const double c = site_cost(sc_, s);
      while (cost(d, sc_) + c > budget_ + kCostSlack) {
        std::vector<SiteRef> victims;
        for (SiteRef v : sites) {
          if (is_deployed(d, v) &&
              std::find(opened.begin(), opened.end(), v) == opened.end()) {
            victims.push_back(v);
          }
        }
        if (victims.empty()) break;
        set_deployed(d, victims[rng_.below(victims.size())], false);
      }
      if (cost(d, sc_) + c <= budget_ + kCostSlack) {
        set_deployed(d, s, true);
        opened.push_back(s);
      }
    }
    tabu_.clear(SearchLevel::kSbsMa);
  }

  const Scenario& sc_;
  const DerivedTables& t_;
  double budget_;
  std::vector<double> lambda_;
  double theta_;
  SearchParams params_;
  Rng rng_;
  TabuState tabu_;
  std::unordered_map<Deployment, double, DeploymentHash> cache_;
  std::int64_t evaluations_ = 0;
};

}  // namespace

RelaxedSolveResult solve_relaxed(const Scenario& sc, const DerivedTables& t,
                                 double budget, std::span<const double> lambda,
                                 double theta, const SearchParams& params) {
  params.validate();
  validate_multipliers(lambda, sc.num_sbss());
  return RelaxedSearch(sc, t, budget, lambda, theta, params).run();
}

}  // namespace bhplan
