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

#include <cmath>

#include "doctest.h"

#include "bhplan/oracle.hpp"
#include "bhplan/pareto.hpp"
#include "support.hpp"

using namespace bhplan;

namespace {

ParetoParams quick_params(std::uint64_t seed) {
  ParetoParams p;
  p.lagrangian_rounds = 4;
  p.front_outer_iterations = 5;
  p.front_inner_iterations = 10;
  p.search.outer_iterations = 6;
  p.search.inner_iterations = 10;
  p.search.tenure_outer = 3;
  p.search.tenure_inner = 5;
  p.search.seed = seed;
  return p;
}

FrontEntry entry(double f1, double fc) {
  FrontEntry e;
  e.objectives.f1 = f1;
  e.objectives.fc = fc;
  return e;
}

void check_epsilons(const ParetoResult& r, const Scenario& sc, double dc) {
  for (std::size_t k = 1; k < r.epsilons.size(); ++k) {
    CHECK(r.epsilons[k] < r.epsilons[k - 1]);
  }
  CHECK(r.iterations == static_cast<int>(r.epsilons.size()));
  const double min_c = sc.num_bans() ? sc.min_ban_cost() : 0.0;
  CHECK(r.iterations <= std::floor((r.epsilon0 - min_c) / dc) + 1);
}

}  // namespace

TEST_CASE("epsilon update") {
  CHECK(update_epsilon({30.0, 35.0}, 40.0, 1.0) == 29.0);
  CHECK(update_epsilon({}, 40.0, 1.0) == 39.0);
  CHECK_THROWS_AS(update_epsilon({50.0}, 40.0, 1.0), IntegrityError);
}

TEST_CASE("front archive") {
  ParetoFront f;
  CHECK(f.merge(entry(10, 5)));
  CHECK_FALSE(f.merge(entry(10, 5)));
  CHECK_FALSE(f.merge(entry(11, 6)));
  CHECK(f.merge(entry(12, 3)));
  CHECK(f.merge(entry(9, 5)));  // removes (10, 5)
  CHECK(f.entries().size() == 2);
  CHECK(f.mutually_nondominated());
  const auto s = f.sorted();
  CHECK(s.front().objectives.f1 == 9);
  CHECK(f.best_fc_within(10.0) == 5.0);
  CHECK(f.best_fc_within(12.0) == 3.0);
  CHECK_FALSE(f.best_fc_within(8.0).has_value());
}

TEST_CASE("gap report") {
  ParetoFront f;
  f.merge(entry(10, 199));
  f.merge(entry(20, 50));
  const std::vector<BoundEntry> b{{25.0, 50.0, 50.0, true},
                                  {15.0, 100.0, 100.0, true},
                                  {5.0, 12.0, 12.0, true},
                                  {30.0, 0.0, -1.0, true}};
  const auto g = gap_report(f, b);
  REQUIRE(g.rows.size() == 2);
  CHECK(g.max_ratio == doctest::Approx(1.99));
  CHECK(g.rows[0].ratio == doctest::Approx(1.0));
  CHECK(g.skipped_epsilons.size() == 2);  // no entry at 5, zero bound at 30
  CHECK(g.any_heuristic);
}

TEST_CASE("restrictions") {
  const auto sc = testing::tiny_scenario(2);
  CHECK(parse_restriction("single-hop") == Restriction::kSingleHop);
  CHECK(to_string(Restriction::kFiberOnly) == "fiber-only");
  CHECK_THROWS_AS(parse_restriction("mesh"), InputError);
  CHECK(restrict_scenario(sc, Restriction::kFiberOnly).num_sbss() == 0);
  CHECK(restrict_scenario(sc, Restriction::kSingleHop).max_relays == 0);
  CHECK(restrict_scenario(sc, Restriction::kNone).max_relays == sc.max_relays);
}

TEST_CASE("repair yields feasible plans") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const auto sc = testing::tiny_scenario(seed);
    const auto t = derive_tables(sc);
    Rng rng(seed);
    for (int rep = 0; rep < 10; ++rep) {
      const auto d = testing::random_deployment(rng, sc, 0.7);
      const auto l = testing::random_lambda(rng, sc.num_sbss(), 0.3);
      const auto relaxed = assign_connections(d, l, sc, t, 0.5);
      const Solution fixed = repair({d, relaxed.plan}, sc, t);
      CHECK(check_feasibility(fixed, sc, t).empty());
      CHECK(cost(fixed.deployment, sc) <= cost(d, sc));
    }
  }
}

TEST_CASE("single BAN covering everything") {
  const auto sc = testing::placed_scenario(20.0, 20.0, {{10, 10}}, {});
  const auto t = derive_tables(sc);
  const auto r = solve_pareto(sc, t, quick_params(1));
  const auto s = r.front.sorted();
  REQUIRE(s.size() == 2);
  CHECK(s[0].objectives.f1 == 0.0);
  CHECK(s[0].objectives.fc == 4.0);
  CHECK(s[1].objectives.f1 == 10.0);
  CHECK(s[1].objectives.fc == 0.0);
  CHECK(r.epsilons.back() <= 10.0 + 1e-9);
  check_epsilons(r, sc, 1.0);
}

TEST_CASE("empty scenario") {
  Scenario sc;
  sc.width = sc.height = 20.0;
  const auto t = derive_tables(sc);
  const auto r = solve_pareto(sc, t, quick_params(1));
  REQUIRE(r.front.entries().size() == 1);
  CHECK(r.front.entries()[0].objectives.fc == 4.0);
}

TEST_CASE("tiny fronts: feasible, nondominated, close to exact") {
  int equal = 0;
  const int seeds = 5;
  for (int seed = 1; seed <= seeds; ++seed) {
    const auto sc = testing::tiny_scenario(seed);
    const auto t = derive_tables(sc);
    const auto p = quick_params(seed);
    const auto r = solve_pareto(sc, t, p);
    CHECK(r.front.mutually_nondominated());
    check_epsilons(r, sc, p.delta_cost);
    for (const auto& e : r.front.entries()) {
      CHECK(check_feasibility(e.solution, sc, t).empty());
      const auto o = objectives(e.solution, sc, p.theta);
      CHECK(o.fc == e.objectives.fc);
      CHECK(o.f1 == e.objectives.f1);
    }
    for (const auto& b : r.bounds) CHECK(b.bound <= b.raw_bound + 1e-9);
    const auto exact = exact_front(sc, t, p.theta);
    // Nothing the heuristic finds can beat the exact set.
    for (const auto& e : r.front.entries()) {
      for (const auto& x : exact) {
        CHECK_FALSE(dominates(e.objectives.f1, e.objectives.fc, x.f1, x.fc));
      }
    }
    std::vector<OraclePoint> got;
    for (const auto& e : r.front.sorted()) got.push_back({e.objectives.f1, e.objectives.fc});
    equal += got == exact;
  }
  MESSAGE("exact front reproduced on " << equal << "/" << seeds);
  CHECK(equal >= 3);
}

TEST_CASE("heuristic entries never beat the exact constrained optimum") {
  const auto sc = testing::tiny_scenario(11, 2, 3, 2);
  const auto t = derive_tables(sc);
  const auto r = solve_pareto(sc, t, quick_params(2));
  for (const auto& b : r.bounds) {
    const double opt = exact_constrained_optimum(sc, t, b.epsilon, 0.5);
    CHECK(b.bound >= 0.0);
    CHECK(opt <= r.front.best_fc_within(b.epsilon).value_or(1e18) + 1e-9);
  }
}

TEST_CASE("parameter validation") {
  ParetoParams p;
  CHECK_NOTHROW(p.validate());
  p.delta_cost = 0.0;
  CHECK_THROWS_AS(p.validate(), InputError);
  p = {};
  p.theta = -1.0;
  CHECK_THROWS_AS(p.validate(), InputError);
}
