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

#include "doctest.h"

#include "bhplan/oracle.hpp"
#include "bhplan/tabu.hpp"
#include "support.hpp"

using namespace bhplan;

namespace {

std::vector<SiteRef> all_sites(const Scenario& sc, SearchLevel level) {
  std::vector<SiteRef> out;
  if (level == SearchLevel::kBan) {
    for (int k = 0; k < sc.num_bans(); ++k) out.push_back({StationRole::kBan, k});
  } else {
    for (int i = 0; i < sc.num_sbss(); ++i) out.push_back({StationRole::kSbs, i});
    for (int j = 0; j < sc.num_mas(); ++j) out.push_back({StationRole::kMa, j});
  }
  return out;
}

SearchParams small_params(std::uint64_t seed) {
  SearchParams p;
  p.outer_iterations = 8;
  p.inner_iterations = 12;
  p.tenure_outer = 3;
  p.tenure_inner = 5;
  p.seed = seed;
  return p;
}

}  // namespace

TEST_CASE("initial deployment") {
  const auto sc = testing::tiny_scenario(5);
  CHECK(initial_deployment(sc, 0.0).count() == 0);
  CHECK(initial_deployment(sc, 9.99).count() == 0);
  const auto one = initial_deployment(sc, sc.min_ban_cost());
  CHECK(one.count() == 1);
  CHECK(cost(one, sc) == sc.min_ban_cost());
  CHECK(initial_deployment(sc, sc.total_cost()) == Deployment::Full(sc));
}

TEST_CASE("neighborhood counts") {
  const auto sc = testing::tiny_scenario(6);
  CHECK(neighborhood(Deployment::Empty(sc), SearchLevel::kSbsMa, 1e9, sc).size() ==
        static_cast<std::size_t>(sc.num_sbss() + sc.num_mas()));
  for (const auto& m : neighborhood(Deployment::Full(sc), SearchLevel::kBan, 1e9, sc)) {
    CHECK(m.kind == DeployMoveKind::kClose);
  }
  Rng rng(3);
  for (int rep = 0; rep < 50; ++rep) {
    const auto d = testing::random_deployment(rng, sc, 0.5);
    const double budget = rng.uniform(0.0, sc.total_cost());
    for (auto level : {SearchLevel::kBan, SearchLevel::kSbsMa}) {
      const double f = cost(d, sc);
      std::size_t expect = 0;
      const auto sites = all_sites(sc, level);
      for (auto s : sites) {
        const double c = site_cost(sc, s);
        expect += is_deployed(d, s) ? (f - c <= budget) : (f + c <= budget);
      }
      for (auto out : sites) {
        for (auto in : sites) {
          if (is_deployed(d, out) && !is_deployed(d, in) &&
              f - site_cost(sc, out) + site_cost(sc, in) <= budget) {
            ++expect;
          }
        }
      }
      const auto moves = neighborhood(d, level, budget, sc);
      CHECK(moves.size() == expect);
      for (const auto& m : moves) CHECK(cost(apply_move(d, m), sc) <= budget + 1e-9);
    }
  }
  // Sampled swaps keep the count at the cap.
  Deployment d = Deployment::Empty(sc);
  d.sbss[0] = d.sbss[1] = d.mas[0] = true;
  const auto full = neighborhood(d, SearchLevel::kSbsMa, 1e9, sc);
  const auto capped = neighborhood(d, SearchLevel::kSbsMa, 1e9, sc, 4, &rng);
  std::size_t swaps = 0;
  for (const auto& m : capped) swaps += m.kind == DeployMoveKind::kSwap;
  CHECK(swaps == 4u);
  CHECK(capped.size() < full.size());
}

TEST_CASE("tabu memory") {
  const auto sc = testing::tiny_scenario(6);
  TabuState tabu(sc);
  const DeployMove open{DeployMoveKind::kOpen, {}, {StationRole::kSbs, 2}};
  CHECK_FALSE(tabu.is_tabu(SearchLevel::kSbsMa, open, 0));
  tabu.make_tabu(SearchLevel::kSbsMa, open, 0, 3);
  CHECK(tabu.is_tabu(SearchLevel::kSbsMa, open, 2));
  CHECK_FALSE(tabu.is_tabu(SearchLevel::kSbsMa, open, 3));
  tabu.make_tabu(SearchLevel::kSbsMa, open, 0, 3);
  tabu.clear(SearchLevel::kSbsMa);
  CHECK_FALSE(tabu.is_tabu(SearchLevel::kSbsMa, open, 1));
  Deployment d = Deployment::Empty(sc);
  d.mas[1] = true;
  tabu.record_deployment(d);
  tabu.record_deployment(d);
  CHECK(tabu.frequency({StationRole::kMa, 1}) == 2);
  CHECK(tabu.frequency({StationRole::kMa, 0}) == 0);
}

TEST_CASE("parameter validation") {
  SearchParams p;
  CHECK_NOTHROW(p.validate());
  p.tenure_inner = p.inner_iterations;
  CHECK_THROWS_AS(p.validate(), InputError);
  p = {};
  p.outer_iterations = 0;
  CHECK_THROWS_AS(p.validate(), InputError);
}

TEST_CASE("budget below every BAN") {
  const auto sc = testing::tiny_scenario(7);
  const auto t = derive_tables(sc);
  const Multipliers l(sc.num_sbss(), 0.2);
  const auto r = solve_relaxed(sc, t, sc.min_ban_cost() - 1.0, l, 0.5, small_params(1));
  CHECK(r.value == sc.num_subareas() + 0.5 * sc.num_machines());
}

TEST_CASE("deterministic and monotone in outer iterations") {
  const auto sc = testing::tiny_scenario(8);
  const auto t = derive_tables(sc);
  Rng rng(8);
  const auto l = testing::random_lambda(rng, sc.num_sbss());
  const auto p = small_params(4);
  const auto a = solve_relaxed(sc, t, 25.0, l, 0.5, p);
  const auto b = solve_relaxed(sc, t, 25.0, l, 0.5, p);
  CHECK(a.value == b.value);
  CHECK(a.solution.deployment == b.solution.deployment);
  CHECK(a.incumbent_trace == b.incumbent_trace);
  for (std::size_t k = 1; k < a.incumbent_trace.size(); ++k) {
    CHECK(a.incumbent_trace[k] <= a.incumbent_trace[k - 1]);
  }
  auto p2 = p;
  p2.outer_iterations *= 2;
  const auto c = solve_relaxed(sc, t, 25.0, l, 0.5, p2);
  CHECK(c.value <= a.value);
  CHECK(cost(c.solution.deployment, sc) <= 25.0);
}

TEST_CASE("relaxed search against the exhaustive optimum") {
  int hits = 0;
  const int seeds = 30;
  for (int seed = 1; seed <= seeds; ++seed) {
    const auto sc = testing::tiny_scenario(seed, 2, 3, 2);
    const auto t = derive_tables(sc);
    Rng rng(seed * 31);
    const auto l = testing::random_lambda(rng, sc.num_sbss(), 1.0);
    const double budget = rng.uniform(10.0, sc.total_cost());
    SearchParams p = small_params(seed);
    p.outer_iterations = 10;
    p.inner_iterations = 20;
    const auto r = solve_relaxed(sc, t, budget, l, 0.5, p);
    const double exact = exact_relaxed_optimum(sc, t, l, budget, 0.5);
    CHECK(r.value >= exact - 1e-9);
    CHECK(relaxed_objective(r.solution, l, 0.5, sc, t).value ==
          doctest::Approx(r.value).epsilon(1e-12));
    hits += std::abs(r.value - exact) <= 1e-9;
  }
  MESSAGE("relaxed optimum reached on " << hits << "/" << seeds);
  CHECK(hits >= 27);
}
