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

// Shared builders for the unit tests.

#ifndef BHPLAN_TESTS_SUPPORT_HPP_
#define BHPLAN_TESTS_SUPPORT_HPP_

#include <vector>

#include "bhplan/lagrangian.hpp"
#include "bhplan/scenario.hpp"

namespace bhplan::testing {

// 50 x 50 m, 25 subareas; within the oracle limits.
inline Scenario tiny_scenario(std::uint64_t seed, int bans = 3, int sbss = 5,
                              int mas = 3, int machines = 30) {
  GenParams p;
  p.width = 50.0;
  p.height = 50.0;
  p.num_bans = bans;
  p.num_sbss = sbss;
  p.num_mas = mas;
  p.num_machines = machines;
  return generate_scenario(p, seed);
}

inline std::vector<Site> sites_at(const std::vector<Point>& pts,
                                  double cost) {
  std::vector<Site> out;
  for (const auto& p : pts) out.push_back({p, cost});
  return out;
}

// Hand-placed instance with default radio and costs 10/1/1.
inline Scenario placed_scenario(double w, double h, std::vector<Point> bans,
                                std::vector<Point> sbss,
                                std::vector<Point> mas = {},
                                std::vector<Point> machines = {}) {
  Scenario sc;
  sc.width = w;
  sc.height = h;
  sc.ban_sites = sites_at(bans, 10.0);
  sc.sbs_sites = sites_at(sbss, 1.0);
  sc.ma_sites = sites_at(mas, 1.0);
  for (const auto& m : machines) sc.machines.push_back({m, 10e3});
  sc.validate();
  return sc;
}

inline Multipliers random_lambda(Rng& rng, int n, double hi = 1.5) {
  Multipliers l(n);
  for (auto& v : l) v = rng.uniform() < 0.3 ? 0.0 : rng.uniform(0.0, hi);
  return l;
}

inline Deployment random_deployment(Rng& rng, const Scenario& sc,
                                    double p = 0.6) {
  Deployment d = Deployment::Empty(sc);
  for (std::size_t k = 0; k < d.bans.size(); ++k) d.bans[k] = rng.uniform() < p;
  for (std::size_t i = 0; i < d.sbss.size(); ++i) d.sbss[i] = rng.uniform() < p;
  for (std::size_t j = 0; j < d.mas.size(); ++j) d.mas[j] = rng.uniform() < p;
  return d;
}

}  // namespace bhplan::testing

#endif  // BHPLAN_TESTS_SUPPORT_HPP_
