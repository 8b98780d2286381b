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

// bhplan command line. Talks to the planner only through the C interface.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bhplan/bhplan.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitBadInput = 2;

// Failure carrying the exit code it should map to.
struct Exit {
  int code;
  std::string message;
};

[[noreturn]] void raise(bhp_status st, const std::string& what) {
  const int code = st == BHP_ERR_LIMIT ? kExitViolations : kExitBadInput;
  throw Exit{code, what + ": " + bhp_last_error()};
}

void ok(bhp_status st, const std::string& what) {
  if (st != BHP_OK) raise(st, what);
}

std::string take(char* s) {
  std::string out = s ? s : "";
  bhp_string_free(s);
  return out;
}

struct ScenarioDel {
  void operator()(bhp_scenario* p) const { bhp_scenario_free(p); }
};
struct TablesDel {
  void operator()(bhp_tables* p) const { bhp_tables_free(p); }
};
struct SolutionDel {
  void operator()(bhp_solution* p) const { bhp_solution_free(p); }
};
struct ResultDel {
  void operator()(bhp_result* p) const { bhp_result_free(p); }
};
using ScenarioPtr = std::unique_ptr<bhp_scenario, ScenarioDel>;
using TablesPtr = std::unique_ptr<bhp_tables, TablesDel>;
using SolutionPtr = std::unique_ptr<bhp_solution, SolutionDel>;
using ResultPtr = std::unique_ptr<bhp_result, ResultDel>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Exit{kExitBadInput, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Exit{kExitBadInput, "cannot write " + path.string()};
  out << text;
}

ScenarioPtr load_scenario(const std::string& path) {
  const std::string text = read_file(path);
  bhp_scenario* sc = nullptr;
  ok(bhp_scenario_from_json(text.c_str(), &sc), path);
  return ScenarioPtr(sc);
}

TablesPtr derive(const bhp_scenario* sc) {
  bhp_tables* t = nullptr;
  ok(bhp_tables_derive(sc, &t), "derive");
  return TablesPtr(t);
}

std::string hash_hex(const bhp_scenario* sc) {
  std::uint64_t h = 0;
  ok(bhp_scenario_hash(sc, &h), "hash");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Config file: {"gen": {...}, "solve": {...}}, both optional. A run
// manifest is accepted too; its config snapshot is used.
json load_config(const std::string& path) {
  if (path.empty()) return json::object();
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw Exit{kExitBadInput, path + ": malformed JSON: " + e.what()};
  }
  if (!j.is_object()) throw Exit{kExitBadInput, path + ": expected an object"};
  if (j.contains("tool") && j.contains("config")) j = j["config"];
  for (const auto& [k, _] : j.items()) {
    if (k != "gen" && k != "solve") {
      throw Exit{kExitBadInput, path + ": unknown field '" + k + "'"};
    }
  }
  return j;
}

struct Common {
  std::uint64_t seed = 1;
  bool seed_set = false;
  std::string config;
  std::string out;
  std::string preset;
  std::string restrict = "none";
  std::optional<double> theta;
  std::optional<double> delta_c;
  std::optional<double> delta_eps;
};

class Manifest {
 public:
  Manifest(std::string command, std::vector<std::string> args)
      : command_(std::move(command)),
        args_(std::move(args)),
        start_(std::chrono::steady_clock::now()) {}

  json body = json::object();

  void write(const fs::path& dir, const std::vector<std::string>& outputs) {
    json files = json::array();
    for (const auto& f : outputs) {
      char* hex = nullptr;
      ok(bhp_hash_file((dir / f).string().c_str(), &hex), "hash " + f);
      files.push_back({{"file", f}, {"fnv1a64", take(hex)}});
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start_)
                            .count();
    json m = body;
    m["tool"] = "bhplan";
    m["version"] = bhp_version();
    m["command"] = command_;
    m["args"] = args_;
    m["elapsed_s"] = secs;
    m["outputs"] = files;
    write_file(dir / "manifest.json", m.dump(1) + "\n");
  }

 private:
  std::string command_;
  std::vector<std::string> args_;
  std::chrono::steady_clock::time_point start_;
};

// Solve parameters: config "solve" block, then flags on top.
std::string resolve_params(const bhp_scenario* sc, const json& config,
                           const Common& c, const json& fallback) {
  json over = config.contains("solve") ? config["solve"] : fallback;
  if (c.theta) over["theta"] = *c.theta;
  if (c.delta_c) over["delta_cost"] = *c.delta_c;
  if (c.delta_eps) over["delta_eps"] = *c.delta_eps;
  if (c.seed_set) over["search"]["seed"] = c.seed;
  char* out = nullptr;
  ok(bhp_params_resolve(sc, over.dump().c_str(), &out), "config");
  return take(out);
}

ScenarioPtr apply_restriction(ScenarioPtr sc, const std::string& r) {
  if (r == "none") return sc;
  bhp_scenario* out = nullptr;
  ok(bhp_scenario_restrict(sc.get(), r.c_str(), &out), "--restrict");
  return ScenarioPtr(out);
}

// ---------------------------------------------------------------------------

int cmd_gen(const Common& c, Manifest& man) {
  const json config = load_config(c.config);
  const std::string gen = config.contains("gen") ? config["gen"].dump() : "";
  bhp_scenario* raw = nullptr;
  ok(bhp_scenario_generate(c.preset.empty() ? nullptr : c.preset.c_str(),
                           gen.empty() ? nullptr : gen.c_str(), c.seed, &raw),
     "gen");
  ScenarioPtr sc(raw);
  char* text = nullptr;
  ok(bhp_scenario_to_json(sc.get(), &text), "gen");
  const fs::path dir(c.out);
  write_file(dir / "scenario.json", take(text));
  int counts[5];
  ok(bhp_scenario_counts(sc.get(), &counts[0], &counts[1], &counts[2],
                         &counts[3], &counts[4]),
     "gen");
  std::printf("scenario %s: %d BAN / %d SBS / %d MA sites, %d machines, %d subareas\n",
              hash_hex(sc.get()).c_str(), counts[0], counts[1], counts[2],
              counts[3], counts[4]);
  man.body["scenario_hash"] = hash_hex(sc.get());
  man.body["seed"] = c.seed;
  man.body["preset"] = c.preset;
  man.body["config"] = config;
  man.write(dir, {"scenario.json"});
  return kExitOk;
}

int cmd_derive(const std::string& scenario, const Common& c, Manifest& man) {
  auto sc = apply_restriction(load_scenario(scenario), c.restrict);
  auto t = derive(sc.get());
  char* text = nullptr;
  ok(bhp_tables_to_json(t.get(), sc.get(), &text), "derive");
  const fs::path dir(c.out);
  write_file(dir / "tables.json", take(text));
  man.body["scenario_hash"] = hash_hex(sc.get());
  man.body["restrict"] = c.restrict;
  man.write(dir, {"tables.json"});
  std::printf("tables for %s written to %s\n", hash_hex(sc.get()).c_str(),
              (dir / "tables.json").string().c_str());
  return kExitOk;
}

json run_solve(const bhp_scenario* sc, const bhp_tables* t,
               const std::string& params, const fs::path& dir,
               std::vector<std::string>& files) {
  bhp_result* raw = nullptr;
  ok(bhp_solve(sc, t, params.c_str(), &raw), "solve");
  ResultPtr r(raw);
  char* written = nullptr;
  ok(bhp_result_write(r.get(), sc, dir.string().c_str(), &written), "solve");
  for (const auto& f : json::parse(take(written))) files.push_back(f);
  char* summary = nullptr;
  ok(bhp_result_summary(r.get(), &summary), "solve");
  return json::parse(take(summary));
}

int cmd_solve(const std::string& scenario, const Common& c, Manifest& man) {
  if (!c.preset.empty() && c.preset != "paper-fig2") {
    throw Exit{kExitBadInput, "unknown preset '" + c.preset + "'"};
  }
  const json config = load_config(c.config);
  auto sc = apply_restriction(load_scenario(scenario), c.restrict);
  auto t = derive(sc.get());
  const std::string params = resolve_params(sc.get(), config, c, json::object());
  const fs::path dir(c.out);
  std::vector<std::string> files;
  const json s = run_solve(sc.get(), t.get(), params, dir, files);
  std::printf("%d eps iterations, %zu front entries, max bound ratio %.4f\n",
              s["iterations"].get<int>(), s["front"].size(),
              s["gap"]["max_ratio"].get<double>());
  man.body["scenario_hash"] = hash_hex(sc.get());
  man.body["scenario_file"] = scenario;
  man.body["restrict"] = c.restrict;
  man.body["seed"] = json::parse(params)["search"]["seed"];
  man.body["config"] = {{"solve", json::parse(params)}};
  man.write(dir, files);
  return kExitOk;
}

int cmd_check(const std::string& scenario, const std::string& solution,
              std::optional<double> budget) {
  auto sc = load_scenario(scenario);
  auto t = derive(sc.get());
  const std::string text = read_file(solution);
  bhp_solution* raw = nullptr;
  ok(bhp_solution_from_json(sc.get(), text.c_str(), &raw), solution);
  SolutionPtr sol(raw);
  int count = 0;
  char* report = nullptr;
  ok(bhp_solution_check(sol.get(), sc.get(), t.get(), budget.value_or(-1.0),
                        &count, &report),
     "check");
  const json vs = json::parse(take(report));
  for (const auto& v : vs) {
    std::printf("%s: %s\n", v["id"].get<std::string>().c_str(),
                v["detail"].get<std::string>().c_str());
  }
  std::printf("%d violation%s\n", count, count == 1 ? "" : "s");
  return count == 0 ? kExitOk : kExitViolations;
}

int cmd_oracle(const std::string& scenario, const Common& c, Manifest& man) {
  const json config = load_config(c.config);
  auto sc = load_scenario(scenario);
  auto t = derive(sc.get());
  const json generous = {
      {"search", {{"outer_iterations", 50}, {"inner_iterations", 50}}}};
  const std::string params = resolve_params(sc.get(), config, c, generous);
  const double theta = json::parse(params)["theta"].get<double>();

  char* pts = nullptr;
  char* csv = nullptr;
  const bhp_status st = bhp_oracle_front(sc.get(), t.get(), theta, &pts, &csv);
  if (st == BHP_ERR_LIMIT) {
    std::fprintf(stderr, "refused: %s\n", bhp_last_error());
    return kExitViolations;
  }
  ok(st, "oracle");
  const json oracle = json::parse(take(pts));
  const fs::path dir(c.out);
  write_file(dir / "oracle_front.csv", take(csv));

  std::vector<std::string> files{"oracle_front.csv"};
  std::vector<std::string> heur_files;
  const json s = run_solve(sc.get(), t.get(), params, dir / "heuristic", heur_files);
  for (const auto& f : heur_files) files.push_back("heuristic/" + f);

  std::ostringstream cmp;
  cmp << "f1,fc,status\n";
  int match = 0, dominated = 0, missed = 0, impossible = 0;
  for (const auto& p : oracle) {
    const double f1 = p[0], fc = p[1];
    std::string status = "missed";
    for (const auto& h : s["front"]) {
      if (h["f1"] == f1 && h["fc"] == fc) {
        status = "match";
        break;
      }
      if (h["f1"] == f1 && h["fc"].get<double>() > fc) status = "dominated";
    }
    (status == "match" ? match : status == "dominated" ? dominated : missed)++;
    cmp << f1 << ',' << fc << ',' << status << "\n";
  }
  for (const auto& h : s["front"]) {
    for (const auto& p : oracle) {
      const double f1 = p[0], fc = p[1];
      if (h["f1"].get<double>() <= f1 && h["fc"].get<double>() <= fc &&
          (h["f1"].get<double>() < f1 || h["fc"].get<double>() < fc)) {
        ++impossible;
      }
    }
  }
  write_file(dir / "comparison.csv", cmp.str());
  files.push_back("comparison.csv");
  std::printf("oracle points %zu: %d match, %d dominated, %d missed\n",
              oracle.size(), match, dominated, missed);
  man.body["scenario_hash"] = hash_hex(sc.get());
  man.body["config"] = {{"solve", json::parse(params)}};
  man.body["summary"] = {{"match", match}, {"dominated", dominated},
                         {"missed", missed}};
  man.write(dir, files);
  if (impossible > 0) {
    std::fprintf(stderr, "heuristic beats the oracle at %d points\n", impossible);
    return kExitViolations;
  }
  return kExitOk;
}

int cmd_report(const std::string& dir_arg, const Common& c, Manifest& man) {
  char* out = nullptr;
  ok(bhp_report(dir_arg.c_str(), &out), "report");
  const json r = json::parse(take(out));
  const fs::path dir(c.out.empty() ? dir_arg : c.out);
  std::ostringstream gap, front, bounds;
  gap << "epsilon,best_fc,bound,ratio,heuristic_bound\n";
  std::printf("%10s %12s %12s %8s\n", "epsilon", "best_fc", "bound", "ratio");
  for (const auto& row : r["rows"]) {
    gap << row["epsilon"] << ',' << row["best_fc"] << ',' << row["bound"] << ','
        << row["ratio"] << ',' << (row["heuristic"].get<bool>() ? 1 : 0) << "\n";
    std::printf("%10g %12g %12g %8.4f\n", row["epsilon"].get<double>(),
                row["best_fc"].get<double>(), row["bound"].get<double>(),
                row["ratio"].get<double>());
  }
  for (const auto& e : r["skipped"]) {
    std::printf("%10g  (no ratio: bound <= 0 or no feasible entry)\n", e.get<double>());
  }
  std::printf("max ratio %.4f%s\n", r["max_ratio"].get<double>(),
              r["any_heuristic"].get<bool>() ? " (heuristic bounds)" : "");
  front << "f1,fc\n";
  for (const auto& p : r["front"]) front << p[0] << ',' << p[1] << "\n";
  bounds << "epsilon,bound\n";
  for (const auto& p : r["bounds"]) bounds << p[0] << ',' << p[1] << "\n";
  write_file(dir / "gap.csv", gap.str());
  write_file(dir / "plot_front.csv", front.str());
  write_file(dir / "plot_bounds.csv", bounds.str());
  man.body["source_dir"] = dir_arg;
  man.body["max_ratio"] = r["max_ratio"];
  man.write(dir, {"gap.csv", "plot_front.csv", "plot_bounds.csv"});
  return kExitOk;
}

void add_common(CLI::App* cmd, Common& c, bool out_required) {
  auto* seed = cmd->add_option("--seed", c.seed, "random seed");
  seed->each([&c](const std::string&) { c.seed_set = true; });
  cmd->add_option("--config", c.config, "JSON config with gen/solve blocks")
      ->check(CLI::ExistingFile);
  auto* out = cmd->add_option("--out", c.out, "output directory");
  if (out_required) out->required();
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  CLI::App app{"bhplan: multi-objective planning of multi-hop mmWave backhaul"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(bhp_version()));

  Common c;
  std::string scenario, solution, dir;
  std::optional<double> budget;

  auto* gen = app.add_subcommand("gen", "generate a scenario");
  add_common(gen, c, true);
  gen->add_option("--preset", c.preset, "paper-fig2");

  auto* derive_cmd = app.add_subcommand("derive", "write derived radio tables");
  derive_cmd->add_option("scenario", scenario)->required();
  add_common(derive_cmd, c, true);
  derive_cmd->add_option("--restrict", c.restrict)
      ->check(CLI::IsMember({"none", "fiber-only", "single-hop"}));

  auto* solve = app.add_subcommand("solve", "trace the Pareto front");
  solve->add_option("scenario", scenario)->required();
  add_common(solve, c, true);
  solve->add_option("--preset", c.preset, "paper-fig2 (reference 400 x 400 m layout)");
  solve->add_option("--restrict", c.restrict)
      ->check(CLI::IsMember({"none", "fiber-only", "single-hop"}));
  solve->add_option("--theta", c.theta, "HTC/MTC weight");
  solve->add_option("--delta-c", c.delta_c, "budget decrement");
  solve->add_option("--delta-eps", c.delta_eps, "window width");

  auto* check = app.add_subcommand("check", "verify a solution");
  check->add_option("scenario", scenario)->required();
  check->add_option("solution", solution)->required();
  check->add_option("--budget", budget, "also enforce a cost cap");

  auto* oracle = app.add_subcommand("oracle", "exact front and comparison");
  oracle->add_option("scenario", scenario)->required();
  add_common(oracle, c, true);
  oracle->add_option("--theta", c.theta, "HTC/MTC weight");
  oracle->add_option("--delta-c", c.delta_c, "budget decrement");
  oracle->add_option("--delta-eps", c.delta_eps, "window width");

  auto* report = app.add_subcommand("report", "gap table and plot data");
  report->add_option("dir", dir, "solve output directory")->required();
  report->add_option("--out", c.out, "where to write (default: dir)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitBadInput;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    Manifest man(name, args);
    if (name == "gen") return cmd_gen(c, man);
    if (name == "derive") return cmd_derive(scenario, c, man);
    if (name == "solve") return cmd_solve(scenario, c, man);
    if (name == "check") return cmd_check(scenario, solution, budget);
    if (name == "oracle") return cmd_oracle(scenario, c, man);
    if (name == "report") return cmd_report(dir, c, man);
  } catch (const Exit& e) {
    std::fprintf(stderr, "bhplan: %s\n", e.message.c_str());
    return e.code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "bhplan: %s\n", e.what());
    return kExitBadInput;
  }
  return kExitBadInput;
}
