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

#include "bhplan/lagrangian.hpp"
#include "bhplan/model.hpp"
#include "support.hpp"

using namespace bhplan;

namespace {

// Value of the relaxed problem written before substitution: the
// minimisation objective plus lambda_i times the load violation of SBS i.
double direct_relaxed(const Solution& s, std::span<const double> lambda,
                      double theta, const Scenario& sc,
                      const DerivedTables& t) {
  double v = objectives(s, sc, theta).fc;
  const auto load = sbs_loads(s.plan, sc.num_sbss());
  for (int i = 0; i < sc.num_sbss(); ++i) {
    const NodeRef p = s.plan.sbs_parent[i];
    if (!p.valid()) continue;
    v += lambda[i] * (load[i] - t.link_limit(p, i));
  }
  return v;
}

Solution random_solution(Rng& rng, const Scenario& sc, const DerivedTables& t,
                         double theta) {
  const auto d = testing::random_deployment(rng, sc);
  const auto lambda = testing::random_lambda(rng, sc.num_sbss());
  auto r = assign_connections(d, lambda, sc, t, theta);
  return {d, r.plan};
}

}  // namespace

TEST_CASE("relaxed objective at zero multipliers is f_c") {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const auto sc = testing::tiny_scenario(seed);
    const auto t = derive_tables(sc);
    Rng rng(seed);
    const Multipliers zero(sc.num_sbss(), 0.0);
    for (int rep = 0; rep < 25; ++rep) {
      const Solution s = random_solution(rng, sc, t, 0.5);
      CHECK(relaxed_objective(s, zero, 0.5, sc, t).value ==
            objectives(s, sc, 0.5).fc);
      ++checked;
    }
  }
  CHECK(checked == 1000);
}

TEST_CASE("relaxed objective matches the unsubstituted form") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto sc = testing::tiny_scenario(seed, 2, 5, 2);
    const auto t = derive_tables(sc);
    Rng rng(seed + 100);
    for (int rep = 0; rep < 20; ++rep) {
      const Solution s = random_solution(rng, sc, t, 0.5);
      const auto lambda = testing::random_lambda(rng, sc.num_sbss());
      CHECK(relaxed_objective(s, lambda, 0.5, sc, t).value ==
            doctest::Approx(direct_relaxed(s, lambda, 0.5, sc, t)).epsilon(1e-12));
    }
  }
}

TEST_CASE("empty solution") {
  const auto sc = testing::tiny_scenario(3);
  const auto t = derive_tables(sc);
  const Multipliers l(sc.num_sbss(), 0.7);
  CHECK(relaxed_objective(Solution::Empty(sc), l, 0.5, sc, t).value ==
        sc.num_subareas() + 0.5 * sc.num_machines());
  // No BAN deployed: nothing attaches.
  Deployment d = Deployment::Full(sc);
  d.bans.assign(d.bans.size(), false);
  const auto r = assign_connections(d, l, sc, t, 0.5);
  CHECK(r.value == sc.num_subareas() + 0.5 * sc.num_machines());
  CHECK(static_cast<int>(r.unattached_sbs.size()) == sc.num_sbss());
}

TEST_CASE("multiplier validation") {
  const std::vector<double> bad{0.1, -0.5};
  CHECK_THROWS_AS(validate_multipliers(bad, 2), InputError);
  const std::vector<double> nan{0.1, std::nan("")};
  CHECK_THROWS_AS(validate_multipliers(nan, 2), InputError);
  CHECK_THROWS_AS(validate_multipliers(std::vector<double>{0.0}, 2), InputError);
  CHECK_NOTHROW(validate_multipliers(std::vector<double>{0.0, 2.0}, 2));
}

TEST_CASE("attach delta at lambda 0 and 1") {
  // BAN covers the left end; the SBS 15 m away covers new cells.
  const auto sc = testing::placed_scenario(60.0, 10.0, {{5, 5}}, {{25, 5}});
  const auto t = derive_tables(sc);
  REQUIRE(t.link_usable(NodeRef::Ban(0), 0));
  const Deployment d = Deployment::Full(sc);
  for (double l : {0.0, 1.0}) {
    const Multipliers lambda{l};
    PathState st(sc, t, d, lambda, 0.5);
    st.cover_by_bans();
    const auto eff = st.evaluate({MoveKind::kAttachBan, 0, 0});
    REQUIRE(eff.has_value());
    const auto dv = delta_attach_ban(st, 0, 0);
    REQUIRE(dv.has_value());
    CHECK(*dv == doctest::Approx(eff->delta));
    const int n = t.link_limit(NodeRef::Ban(0), 0);
    if (l == 0.0) {
      CHECK(eff->delta == -static_cast<double>(eff->new_cover.size()));
      int free = 0;
      for (int s : t.sbs_reach[0]) free += st.subarea_free(s) ? 1 : 0;
      CHECK(static_cast<int>(eff->new_cover.size()) == std::min(n, free));
    } else {
      CHECK(eff->delta == -static_cast<double>(n));
    }
  }
}

TEST_CASE("one BAN, one SBS: greedy matches enumeration") {
  const auto sc = testing::placed_scenario(60.0, 10.0, {{5, 5}}, {{22, 5}});
  const auto t = derive_tables(sc);
  const Multipliers zero{0.0};
  const auto r = assign_connections(Deployment::Full(sc), zero, sc, t, 0.5);
  CHECK(r.plan.sbs_parent[0] == NodeRef::Ban(0));
  // Enumeration: the SBS serves any subset of its reach not held by the BAN,
  // up to its link limit; the optimum is all of them.
  int ban_cov = static_cast<int>(t.ban_reach[0].size());
  int extra = 0;
  for (int s : t.sbs_reach[0]) extra += t.ban_reaches(0, s) ? 0 : 1;
  extra = std::min(extra, t.link_limit(NodeRef::Ban(0), 0));
  CHECK(r.value == sc.num_subareas() - ban_cov - extra);
}

TEST_CASE("single slot: only one of two SBSs attaches") {
  auto sc = testing::placed_scenario(60.0, 30.0, {{30, 15}}, {{18, 15}, {42, 15}});
  sc.ban_slot_limit = 1;
  const auto t = derive_tables(sc);
  REQUIRE(t.link_usable(NodeRef::Ban(0), 0));
  REQUIRE(t.link_usable(NodeRef::Ban(0), 1));
  REQUIRE_FALSE(t.link_usable(NodeRef::Sbs(0), 1));
  const Multipliers zero{0.0, 0.0};
  const auto r = assign_connections(Deployment::Full(sc), zero, sc, t, 0.5);
  CHECK(r.unattached_sbs.size() == 1u);
  // Enumerate: attaching either one; the greedy value equals the better.
  double best = 1e9;
  for (int pick = 0; pick < 2; ++pick) {
    Solution s = Solution::Empty(sc);
    s.deployment = Deployment::Full(sc);
    s.plan.sbs_parent[pick] = NodeRef::Ban(0);
    for (int c : t.ban_reach[0]) s.plan.ban_cover[c] = 0;
    int room = t.link_limit(NodeRef::Ban(0), pick);
    for (int c : t.sbs_reach[pick]) {
      if (room > 0 && s.plan.ban_cover[c] < 0) {
        s.plan.sbs_cover[c] = pick;
        --room;
      }
    }
    best = std::min(best, objectives(s, sc, 0.5).fc);
  }
  CHECK(r.value == best);
}

TEST_CASE("incremental deltas equal recomputation") {
  int applied = 0;
  int evaluated = 0;
  Rng rng(2024);
  for (std::uint64_t seed = 1; applied < 10000; ++seed) {
    const auto sc = testing::tiny_scenario(seed, 3, 5, 3);
    const auto t = derive_tables(sc);
    for (int rep = 0; rep < 10 && applied < 10000; ++rep) {
      const auto d = testing::random_deployment(rng, sc, 0.8);
      const auto lambda = testing::random_lambda(rng, sc.num_sbss(), 2.0);
      PathState st(sc, t, d, lambda, 0.5);
      st.cover_by_bans();
      st.attach_mas();
      CHECK(st.value() == doctest::Approx(
                              relaxed_objective({d, st.plan()}, lambda, 0.5, sc, t).value)
                              .epsilon(1e-12));
      for (int step = 0; step < 40; ++step) {
        AttachMove mv;
        mv.kind = static_cast<MoveKind>(rng.below(3));
        mv.sbs = static_cast<int>(rng.below(sc.num_sbss()));
        mv.target = static_cast<int>(
            rng.below(mv.kind == MoveKind::kAttachBan ? sc.num_bans() : sc.num_sbss()));
        const auto eff = st.evaluate(mv);
        ++evaluated;
        if (!eff) continue;
        const double before = relaxed_objective({d, st.plan()}, lambda, 0.5, sc, t).value;
        st.apply(mv, *eff);
        const double after = relaxed_objective({d, st.plan()}, lambda, 0.5, sc, t).value;
        CHECK(std::abs((after - before) - eff->delta) <= 1e-9);
        CHECK(std::abs(st.value() - after) <= 1e-9);
        ++applied;
      }
    }
  }
  CHECK(applied == 10000);
  MESSAGE("evaluated " << evaluated << " random moves");
}

TEST_CASE("subgradient step") {
  const auto sc = testing::placed_scenario(60.0, 10.0, {{5, 5}}, {{22, 5}});
  auto t = derive_tables(sc);
  Solution s = Solution::Empty(sc);
  s.deployment = Deployment::Full(sc);
  s.plan.sbs_parent[0] = NodeRef::Ban(0);
  s.plan.sbs_cover[2] = 0;
  // Slack: lambda stays at 0.
  const Multipliers zero{0.0};
  CHECK(subgradient_update(zero, s, t, 10.0, 4.0, 1.0) == Multipliers{0.0});
  // g = 3 with |g|^2 = 9 and UB - LB = 9: t = 1.
  t.n_ban_sbs[0][0] = 1;
  for (int c : {1, 2, 3, 4}) s.plan.sbs_cover[c] = 0;
  CHECK(capacity_subgradient(s, t)[0] == 3.0);
  CHECK(subgradient_update(Multipliers{0.5}, s, t, 10.0, 1.0, 1.0)[0] ==
        doctest::Approx(3.5));
}
