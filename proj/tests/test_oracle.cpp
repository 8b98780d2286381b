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

#include <algorithm>

#include "doctest.h"

#include "bhplan/oracle.hpp"
#include "bhplan/pareto.hpp"
#include "support.hpp"

using namespace bhplan;

TEST_CASE("zero sites") {
  Scenario sc;
  sc.width = 30.0;
  sc.height = 20.0;
  sc.machines = {{{3, 3}, 10e3}, {{20, 10}, 10e3}};
  const auto t = derive_tables(sc);
  const auto f = exact_front(sc, t, 0.5);
  REQUIRE(f.size() == 1);
  CHECK(f[0] == OraclePoint{0.0, 6.0 + 0.5 * 2});
}

TEST_CASE("one BAN site") {
  const auto sc = testing::placed_scenario(50.0, 50.0, {{25, 25}}, {});
  const auto t = derive_tables(sc);
  const int k = static_cast<int>(t.ban_reach[0].size());
  REQUIRE(k > 0);
  const auto f = exact_front(sc, t, 0.5);
  REQUIRE(f.size() == 2);
  CHECK(f[0] == OraclePoint{0.0, 25.0});
  CHECK(f[1] == OraclePoint{10.0, 25.0 - k});
}

TEST_CASE("relaxed optimum special cases") {
  const auto sc = testing::tiny_scenario(12, 2, 3, 2);
  const auto t = derive_tables(sc);
  const std::vector<double> l(sc.num_sbss(), 0.4);
  CHECK(exact_relaxed_optimum(sc, t, l, 0.0, 0.5) ==
        sc.num_subareas() + 0.5 * sc.num_machines());
  CHECK_THROWS_AS(exact_relaxed_optimum(sc, t, std::vector<double>{-1.0, 0, 0}, 10.0, 0.5),
                  InputError);
}

TEST_CASE("zero multipliers without binding link limits") {
  // Links short enough that the subarea limit never binds.
  const auto sc = testing::placed_scenario(40.0, 20.0, {{5, 10}}, {{18, 10}, {30, 10}},
                                           {{20, 5}}, {{22, 4}, {35, 15}});
  const auto t = derive_tables(sc);
  REQUIRE(t.link_limit(NodeRef::Ban(0), 0) >= sc.num_subareas());
  const std::vector<double> zero(sc.num_sbss(), 0.0);
  const auto front = exact_front(sc, t, 0.5);
  for (double eps : {0.0, 10.0, 11.0, 12.0, 13.0}) {
    double best = 1e18;
    for (const auto& p : front) {
      if (p.f1 <= eps) best = std::min(best, p.fc);
    }
    CHECK(exact_relaxed_optimum(sc, t, zero, eps, 0.5) == best);
    CHECK(exact_constrained_optimum(sc, t, eps, 0.5) == best);
  }
}

TEST_CASE("weak duality spot check") {
  for (int seed = 1; seed <= 4; ++seed) {
    const auto sc = testing::tiny_scenario(seed, 2, 4, 2);
    const auto t = derive_tables(sc);
    Rng rng(seed);
    for (int rep = 0; rep < 5; ++rep) {
      const auto l = testing::random_lambda(rng, sc.num_sbss(), 2.0);
      const double eps = rng.uniform(0.0, sc.total_cost());
      CHECK(exact_relaxed_optimum(sc, t, l, eps, 0.5) <=
            exact_constrained_optimum(sc, t, eps, 0.5) + 1e-9);
    }
  }
}

TEST_CASE("front is independent of site order") {
  const auto sc = testing::tiny_scenario(21);
  auto rev = sc;
  std::reverse(rev.sbs_sites.begin(), rev.sbs_sites.end());
  std::reverse(rev.ban_sites.begin(), rev.ban_sites.end());
  std::reverse(rev.ma_sites.begin(), rev.ma_sites.end());
  std::reverse(rev.machines.begin(), rev.machines.end());
  const auto a = exact_front(sc, derive_tables(sc), 0.5);
  const auto b = exact_front(rev, derive_tables(rev), 0.5);
  CHECK(a == b);
  for (std::size_t i = 1; i < a.size(); ++i) {
    CHECK(a[i - 1].f1 < a[i].f1);
    CHECK(a[i - 1].fc > a[i].fc);
  }
}

TEST_CASE("limits") {
  const auto sc = testing::tiny_scenario(1, 4, 5, 3);
  CHECK_THROWS_AS(check_oracle_limits(sc, {}), LimitError);
  CHECK_THROWS_AS(exact_front(sc, derive_tables(sc), 0.5), LimitError);
  const auto ok = testing::tiny_scenario(1);
  CHECK_NOTHROW(check_oracle_limits(ok, {}));
  OracleLimits tight;
  tight.max_states = 10;
  CHECK_THROWS_AS(exact_front(ok, derive_tables(ok), 0.5, tight), LimitError);
  auto big = ok;
  big.width = 60.0;  // 36 subareas
  CHECK_THROWS_AS(check_oracle_limits(big, {}), LimitError);
}
