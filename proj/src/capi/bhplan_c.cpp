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

#include "bhplan/bhplan.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "bhplan/io.hpp"
#include "bhplan/oracle.hpp"
#include "bhplan/pareto.hpp"

struct bhp_scenario {
  bhplan::Scenario value;
};
struct bhp_tables {
  bhplan::DerivedTables value;
};
struct bhp_solution {
  bhplan::Solution value;
};
struct bhp_result {
  bhplan::ParetoResult value;
  bhplan::ParetoParams params;
};

namespace {

using nlohmann::json;

thread_local std::string g_last_error;

bhp_status fail(bhp_status code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

// Runs body, mapping exceptions onto status codes.
template <typename Body>
bhp_status guarded(Body&& body) {
  try {
    g_last_error.clear();
    body();
    return BHP_OK;
  } catch (const bhplan::InputError& e) {
    return fail(BHP_ERR_INPUT, e.what());
  } catch (const bhplan::LimitError& e) {
    return fail(BHP_ERR_LIMIT, e.what());
  } catch (const bhplan::IntegrityError& e) {
    return fail(BHP_ERR_INTEGRITY, e.what());
  } catch (const json::exception& e) {
    return fail(BHP_ERR_INPUT, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(BHP_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(BHP_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BHP_ERR_INTERNAL, e.what());
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* p, const char* what) {
  if (!p) throw bhplan::InputError(std::string(what) + " is NULL");
}

json parse(const char* text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw bhplan::InputError(std::string(what) + ": malformed JSON: " + e.what());
  }
}

json front_json(const bhplan::ParetoFront& front) {
  json a = json::array();
  for (const auto& e : front.sorted()) {
    a.push_back({{"f1", e.objectives.f1},
                 {"f2", e.objectives.f2},
                 {"f3", e.objectives.f3},
                 {"fc", e.objectives.fc},
                 {"epsilon", e.epsilon}});
  }
  return a;
}

json gap_json(const bhplan::GapReport& g) {
  json rows = json::array();
  for (const auto& r : g.rows) {
    rows.push_back({{"epsilon", r.epsilon},
                    {"best_fc", r.best_fc},
                    {"bound", r.bound},
                    {"ratio", r.ratio},
                    {"heuristic", r.heuristic}});
  }
  return {{"rows", rows},
          {"skipped", g.skipped_epsilons},
          {"max_ratio", g.max_ratio},
          {"any_heuristic", g.any_heuristic}};
}

}  // namespace

extern "C" {

const char* bhp_version(void) { return bhplan::kVersion; }

const char* bhp_last_error(void) { return g_last_error.c_str(); }

void bhp_string_free(char* s) { std::free(s); }

// ---------------------------------------------------------------------------

bhp_status bhp_scenario_generate(const char* preset, const char* gen_json,
                                 uint64_t seed, bhp_scenario** out) {
  return guarded([&] {
    need(out, "out");
    bhplan::GenParams p;
    if (preset && *preset) {
      if (std::string(preset) != "paper-fig2") {
        throw bhplan::InputError(std::string("unknown preset '") + preset + "'");
      }
      p = bhplan::GenParams::PaperFig2();
    }
    if (gen_json) p = bhplan::gen_params_from_json(parse(gen_json, "gen"), p);
    auto h = std::make_unique<bhp_scenario>();
    h->value = bhplan::generate_scenario(p, seed);
    *out = h.release();
  });
}

bhp_status bhp_scenario_from_json(const char* text, bhp_scenario** out) {
  return guarded([&] {
    need(text, "json");
    need(out, "out");
    auto h = std::make_unique<bhp_scenario>();
    h->value = bhplan::scenario_from_json(parse(text, "scenario"));
    *out = h.release();
  });
}

bhp_status bhp_scenario_to_json(const bhp_scenario* sc, char** out) {
  return guarded([&] {
    need(sc, "scenario");
    need(out, "out");
    *out = dup(bhplan::scenario_to_json(sc->value).dump(1) + "\n");
  });
}

bhp_status bhp_scenario_hash(const bhp_scenario* sc, uint64_t* out) {
  return guarded([&] {
    need(sc, "scenario");
    need(out, "out");
    *out = bhplan::scenario_hash(sc->value);
  });
}

bhp_status bhp_scenario_restrict(const bhp_scenario* sc,
                                 const char* restriction, bhp_scenario** out) {
  return guarded([&] {
    need(sc, "scenario");
    need(restriction, "restriction");
    need(out, "out");
    auto h = std::make_unique<bhp_scenario>();
    h->value = bhplan::restrict_scenario(sc->value,
                                         bhplan::parse_restriction(restriction));
    *out = h.release();
  });
}

bhp_status bhp_scenario_counts(const bhp_scenario* sc, int* bans, int* sbss,
                               int* mas, int* machines, int* subareas) {
  return guarded([&] {
    need(sc, "scenario");
    const auto& s = sc->value;
    if (bans) *bans = s.num_bans();
    if (sbss) *sbss = s.num_sbss();
    if (mas) *mas = s.num_mas();
    if (machines) *machines = s.num_machines();
    if (subareas) *subareas = s.num_subareas();
  });
}

bhp_status bhp_scenario_theta(const bhp_scenario* sc, double* out) {
  return guarded([&] {
    need(sc, "scenario");
    need(out, "out");
    *out = sc->value.radio.htc_mtc_weight;
  });
}

void bhp_scenario_free(bhp_scenario* sc) { delete sc; }

// ---------------------------------------------------------------------------

bhp_status bhp_tables_derive(const bhp_scenario* sc, bhp_tables** out) {
  return guarded([&] {
    need(sc, "scenario");
    need(out, "out");
    auto h = std::make_unique<bhp_tables>();
    h->value = bhplan::derive_tables(sc->value);
    *out = h.release();
  });
}

bhp_status bhp_tables_to_json(const bhp_tables* t, const bhp_scenario* sc,
                              char** out) {
  return guarded([&] {
    need(t, "tables");
    need(sc, "scenario");
    need(out, "out");
    *out = dup(bhplan::tables_to_json(t->value, bhplan::scenario_hash(sc->value))
                   .dump() +
               "\n");
  });
}

bhp_status bhp_tables_from_json(const char* text, const bhp_scenario* sc,
                                bhp_tables** out) {
  return guarded([&] {
    need(text, "json");
    need(sc, "scenario");
    need(out, "out");
    auto h = std::make_unique<bhp_tables>();
    h->value = bhplan::tables_from_json(parse(text, "tables"),
                                        bhplan::scenario_hash(sc->value));
    *out = h.release();
  });
}

void bhp_tables_free(bhp_tables* t) { delete t; }

// ---------------------------------------------------------------------------

bhp_status bhp_solution_from_json(const bhp_scenario* sc, const char* text,
                                  bhp_solution** out) {
  return guarded([&] {
    need(sc, "scenario");
    need(text, "json");
    need(out, "out");
    auto h = std::make_unique<bhp_solution>();
    h->value = bhplan::solution_from_json(parse(text, "solution"), sc->value);
    *out = h.release();
  });
}

bhp_status bhp_solution_check(const bhp_solution* sol, const bhp_scenario* sc,
                              const bhp_tables* t, double budget,
                              int* violations, char** report_json) {
  return guarded([&] {
    need(sol, "solution");
    need(sc, "scenario");
    need(t, "tables");
    std::optional<double> cap;
    if (budget >= 0) cap = budget;
    const auto vs =
        bhplan::check_feasibility(sol->value, sc->value, t->value, cap);
    if (violations) *violations = static_cast<int>(vs.size());
    if (report_json) *report_json = dup(bhplan::violations_to_json(vs).dump(1));
  });
}

bhp_status bhp_solution_objectives(const bhp_solution* sol,
                                   const bhp_scenario* sc, double theta,
                                   char** out_json) {
  return guarded([&] {
    need(sol, "solution");
    need(sc, "scenario");
    need(out_json, "out");
    const auto o = bhplan::objectives(sol->value, sc->value, theta);
    *out_json = dup(json{{"f1", o.f1}, {"f2", o.f2}, {"f3", o.f3}, {"fc", o.fc}}
                        .dump());
  });
}

void bhp_solution_free(bhp_solution* sol) { delete sol; }

// ---------------------------------------------------------------------------

bhp_status bhp_params_resolve(const bhp_scenario* sc,
                              const char* overrides_json, char** out_json) {
  return guarded([&] {
    need(out_json, "out");
    bhplan::ParetoParams p;
    if (sc) p.theta = sc->value.radio.htc_mtc_weight;
    if (overrides_json) {
      p = bhplan::pareto_params_from_json(parse(overrides_json, "solve"), p);
    }
    p.validate();
    *out_json = dup(bhplan::pareto_params_to_json(p).dump());
  });
}

bhp_status bhp_solve(const bhp_scenario* sc, const bhp_tables* t,
                     const char* params_json, bhp_result** out) {
  return guarded([&] {
    need(sc, "scenario");
    need(t, "tables");
    need(out, "out");
    bhplan::ParetoParams p;
    p.theta = sc->value.radio.htc_mtc_weight;
    if (params_json) p = bhplan::pareto_params_from_json(parse(params_json, "solve"), p);
    auto h = std::make_unique<bhp_result>();
    h->params = p;
    h->value = bhplan::solve_pareto(sc->value, t->value, p);
    *out = h.release();
  });
}

bhp_status bhp_result_summary(const bhp_result* r, char** out_json) {
  return guarded([&] {
    need(r, "result");
    need(out_json, "out");
    const auto& v = r->value;
    json bounds = json::array();
    for (const auto& b : v.bounds) {
      bounds.push_back({{"epsilon", b.epsilon},
                        {"bound", b.bound},
                        {"raw_bound", b.raw_bound},
                        {"heuristic", b.heuristic}});
    }
    json j = {{"iterations", v.iterations},
              {"epsilon0", v.epsilon0},
              {"epsilons", v.epsilons},
              {"front", front_json(v.front)},
              {"bounds", bounds},
              {"gap", gap_json(bhplan::gap_report(v.front, v.bounds))}};
    *out_json = dup(j.dump());
  });
}

bhp_status bhp_result_write(const bhp_result* r, const bhp_scenario* sc,
                            const char* dir, char** files_json) {
  return guarded([&] {
    need(r, "result");
    need(sc, "scenario");
    need(dir, "dir");
    const auto files =
        bhplan::write_pareto_outputs(r->value, sc->value, dir, "heuristic");
    if (files_json) *files_json = dup(json(files).dump());
  });
}

bhp_status bhp_result_solution(const bhp_result* r, int index,
                               bhp_solution** out) {
  return guarded([&] {
    need(r, "result");
    need(out, "out");
    const auto entries = r->value.front.sorted();
    if (index < 0 || index >= static_cast<int>(entries.size())) {
      throw bhplan::InputError("front index out of range");
    }
    auto h = std::make_unique<bhp_solution>();
    h->value = entries[index].solution;
    *out = h.release();
  });
}

void bhp_result_free(bhp_result* r) { delete r; }

// ---------------------------------------------------------------------------

bhp_status bhp_oracle_front(const bhp_scenario* sc, const bhp_tables* t,
                            double theta, char** points_json, char** csv) {
  return guarded([&] {
    need(sc, "scenario");
    need(t, "tables");
    const auto pts = bhplan::exact_front(sc->value, t->value, theta);
    json a = json::array();
    for (const auto& p : pts) a.push_back({p.f1, p.fc});
    if (points_json) *points_json = dup(a.dump());
    if (csv) *csv = dup(bhplan::oracle_front_csv(pts));
  });
}

bhp_status bhp_report(const char* dir, char** out_json) {
  return guarded([&] {
    need(dir, "dir");
    need(out_json, "out");
    const std::filesystem::path d(dir);
    for (const char* f : {"front.csv", "bounds.csv"}) {
      if (!std::filesystem::exists(d / f)) {
        throw bhplan::InputError("missing " + (d / f).string());
      }
    }
    const auto rows = bhplan::read_front_csv(d / "front.csv");
    const auto bounds = bhplan::read_bounds_csv(d / "bounds.csv");
    // Rebuild a front of objective pairs; the report only needs (f1, f_c).
    bhplan::ParetoFront front;
    json pts = json::array();
    for (const auto& r : rows) {
      bhplan::FrontEntry e;
      e.objectives.f1 = r.f1;
      e.objectives.fc = r.fc;
      e.epsilon = r.epsilon;
      front.merge(std::move(e));
      pts.push_back({r.f1, r.fc});
    }
    json bpts = json::array();
    for (const auto& b : bounds) bpts.push_back({b.epsilon, b.bound});
    json j = gap_json(bhplan::gap_report(front, bounds));
    j["front"] = pts;
    j["bounds"] = bpts;
    *out_json = dup(j.dump());
  });
}

bhp_status bhp_hash_file(const char* path, char** hex_out) {
  return guarded([&] {
    need(path, "path");
    need(hex_out, "out");
    *hex_out = dup(bhplan::hex64(bhplan::fnv1a64(bhplan::read_text_file(path))));
  });
}

}  // extern "C"
