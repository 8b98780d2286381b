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

// Exercises the shared library through its C interface only.

#include <cstdlib>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "bhplan/bhplan.h"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  bhp_string_free(s);
  return out;
}

const char* kTinyGen =
    R"({"width":50,"height":50,"num_bans":2,"num_sbss":3,"num_mas":2,"num_machines":20})";

}  // namespace

TEST_CASE("version and errors") {
  CHECK(std::string(bhp_version()) == "0.3.0");
  bhp_scenario* sc = nullptr;
  CHECK(bhp_scenario_from_json("{not json", &sc) == BHP_ERR_INPUT);
  CHECK(sc == nullptr);
  CHECK(std::string(bhp_last_error()).size() > 0);
  CHECK(bhp_scenario_from_json(nullptr, &sc) == BHP_ERR_INPUT);
  CHECK(bhp_scenario_generate("no-such-preset", nullptr, 1, &sc) == BHP_ERR_INPUT);
  CHECK(bhp_scenario_generate(nullptr, R"({"width":-1})", 1, &sc) == BHP_ERR_INPUT);
  bhp_scenario_free(nullptr);
  bhp_string_free(nullptr);
}

TEST_CASE("scenario, tables and solve") {
  bhp_scenario* sc = nullptr;
  REQUIRE(bhp_scenario_generate(nullptr, kTinyGen, 5, &sc) == BHP_OK);
  int b, s, m, n, S;
  REQUIRE(bhp_scenario_counts(sc, &b, &s, &m, &n, &S) == BHP_OK);
  CHECK(b == 2);
  CHECK(S == 25);
  double theta = 0;
  CHECK(bhp_scenario_theta(sc, &theta) == BHP_OK);
  CHECK(theta == 0.5);

  char* text = nullptr;
  REQUIRE(bhp_scenario_to_json(sc, &text) == BHP_OK);
  const std::string js = take(text);
  bhp_scenario* again = nullptr;
  REQUIRE(bhp_scenario_from_json(js.c_str(), &again) == BHP_OK);
  std::uint64_t h1 = 0, h2 = 1;
  bhp_scenario_hash(sc, &h1);
  bhp_scenario_hash(again, &h2);
  CHECK(h1 == h2);
  bhp_scenario_free(again);

  bhp_tables* t = nullptr;
  REQUIRE(bhp_tables_derive(sc, &t) == BHP_OK);
  char* tj = nullptr;
  REQUIRE(bhp_tables_to_json(t, sc, &tj) == BHP_OK);
  bhp_tables* t2 = nullptr;
  CHECK(bhp_tables_from_json(take(tj).c_str(), sc, &t2) == BHP_OK);
  bhp_tables_free(t2);

  char* params = nullptr;
  REQUIRE(bhp_params_resolve(sc, R"({"lagrangian_rounds":3,"search":{"outer_iterations":5,"tenure_outer":3}})",
                             &params) == BHP_OK);
  const std::string pj = take(params);
  CHECK(json::parse(pj)["search"]["outer_iterations"] == 5);
  CHECK(bhp_params_resolve(sc, R"({"bogus":1})", &params) == BHP_ERR_INPUT);
  CHECK(bhp_params_resolve(sc, R"({"search":{"outer_iterations":5}})", &params) ==
        BHP_ERR_INPUT);

  bhp_result* r = nullptr;
  REQUIRE(bhp_solve(sc, t, pj.c_str(), &r) == BHP_OK);
  char* sum = nullptr;
  REQUIRE(bhp_result_summary(r, &sum) == BHP_OK);
  const json summary = json::parse(take(sum));
  const int entries = static_cast<int>(summary["front"].size());
  CHECK(entries >= 1);
  for (int i = 0; i < entries; ++i) {
    bhp_solution* sol = nullptr;
    REQUIRE(bhp_result_solution(r, i, &sol) == BHP_OK);
    int violations = -1;
    char* report = nullptr;
    CHECK(bhp_solution_check(sol, sc, t, -1.0, &violations, &report) == BHP_OK);
    CHECK(violations == 0);
    bhp_string_free(report);
    char* obj = nullptr;
    REQUIRE(bhp_solution_objectives(sol, sc, 0.5, &obj) == BHP_OK);
    CHECK(json::parse(take(obj))["fc"] == summary["front"][i]["fc"]);
    bhp_solution_free(sol);
  }
  bhp_solution* none = nullptr;
  CHECK(bhp_result_solution(r, entries, &none) == BHP_ERR_INPUT);

  const fs::path dir = fs::temp_directory_path() / "bhplan_capi_test";
  fs::remove_all(dir);
  char* files = nullptr;
  REQUIRE(bhp_result_write(r, sc, dir.string().c_str(), &files) == BHP_OK);
  CHECK(json::parse(take(files)).size() >= 3);
  char* rep = nullptr;
  REQUIRE(bhp_report(dir.string().c_str(), &rep) == BHP_OK);
  CHECK(json::parse(take(rep)).contains("max_ratio"));
  char* hex = nullptr;
  REQUIRE(bhp_hash_file((dir / "front.csv").string().c_str(), &hex) == BHP_OK);
  CHECK(take(hex).size() == 16);
  fs::remove(dir / "bounds.csv");
  CHECK(bhp_report(dir.string().c_str(), &rep) != BHP_OK);
  fs::remove_all(dir);

  char* pts = nullptr;
  char* csv = nullptr;
  REQUIRE(bhp_oracle_front(sc, t, 0.5, &pts, &csv) == BHP_OK);
  const json exact = json::parse(take(pts));
  CHECK(take(csv).rfind("# source=oracle", 0) == 0);
  // Heuristic entries are never better than the exact set.
  for (const auto& e : summary["front"]) {
    for (const auto& x : exact) {
      const double f1 = e["f1"], fc = e["fc"], xf1 = x[0], xfc = x[1];
      CHECK_FALSE((f1 <= xf1 && fc <= xfc && (f1 < xf1 || fc < xfc)));
    }
  }

  bhp_result_free(r);
  bhp_tables_free(t);
  bhp_scenario_free(sc);
}

TEST_CASE("oracle refusal and restriction") {
  bhp_scenario* sc = nullptr;
  REQUIRE(bhp_scenario_generate("paper-fig2", nullptr, 1, &sc) == BHP_OK);
  bhp_tables* t = nullptr;
  REQUIRE(bhp_tables_derive(sc, &t) == BHP_OK);
  char* pts = nullptr;
  char* csv = nullptr;
  CHECK(bhp_oracle_front(sc, t, 0.5, &pts, &csv) == BHP_ERR_LIMIT);
  bhp_scenario* fiber = nullptr;
  REQUIRE(bhp_scenario_restrict(sc, "fiber-only", &fiber) == BHP_OK);
  int b, s, m, n, S;
  bhp_scenario_counts(fiber, &b, &s, &m, &n, &S);
  CHECK(s == 0);
  CHECK(b == 5);
  bhp_scenario* bad = nullptr;
  CHECK(bhp_scenario_restrict(sc, "mesh", &bad) == BHP_ERR_INPUT);
  bhp_scenario_free(fiber);
  bhp_tables_free(t);
  bhp_scenario_free(sc);
}

TEST_CASE("corrupted solution is reported") {
  bhp_scenario* sc = nullptr;
  REQUIRE(bhp_scenario_generate(nullptr, kTinyGen, 5, &sc) == BHP_OK);
  bhp_tables* t = nullptr;
  REQUIRE(bhp_tables_derive(sc, &t) == BHP_OK);
  bhp_solution* sol = nullptr;
  CHECK(bhp_solution_from_json(sc, R"({"deployment":{"bans":[],"sbss":[9],"mas":[]}})",
                               &sol) == BHP_ERR_INPUT);
  REQUIRE(bhp_solution_from_json(sc, R"({"deployment":{"bans":[],"sbss":[0],"mas":[]}})",
                                 &sol) == BHP_OK);
  int v = 0;
  char* report = nullptr;
  REQUIRE(bhp_solution_check(sol, sc, t, -1.0, &v, &report) == BHP_OK);
  CHECK(v >= 1);
  CHECK(take(report).find("sbs-backhaul") != std::string::npos);
  bhp_solution_free(sol);
  bhp_tables_free(t);
  bhp_scenario_free(sc);
}
