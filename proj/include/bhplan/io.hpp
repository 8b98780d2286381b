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

#ifndef BHPLAN_IO_HPP_
#define BHPLAN_IO_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "bhplan/model.hpp"
#include "bhplan/oracle.hpp"
#include "bhplan/pareto.hpp"
#include "bhplan/scenario.hpp"

namespace bhplan {

inline constexpr int kScenarioSchemaVersion = 1;

nlohmann::json radio_to_json(const RadioConfig& radio);
// Missing keys keep their defaults; wrong types raise InputError naming the
// field.
RadioConfig radio_from_json(const nlohmann::json& j, RadioConfig base = {});

nlohmann::json scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const nlohmann::json& j);
std::uint64_t scenario_hash(const Scenario& scenario);

// Overrides on top of `base` (e.g. a preset).
GenParams gen_params_from_json(const nlohmann::json& j, GenParams base);
ParetoParams pareto_params_from_json(const nlohmann::json& j,
                                     ParetoParams base);
nlohmann::json pareto_params_to_json(const ParetoParams& p);

nlohmann::json tables_to_json(const DerivedTables& tables,
                              std::uint64_t scenario_hash);
// Throws InputError if the sidecar was derived for a different scenario.
DerivedTables tables_from_json(const nlohmann::json& j,
                               std::uint64_t expected_hash);

nlohmann::json solution_to_json(const Solution& solution,
                                const ObjectiveVector& objectives);
Solution solution_from_json(const nlohmann::json& j, const Scenario& scenario);

nlohmann::json violations_to_json(const std::vector<Violation>& violations);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path,
                     const std::string& text);
nlohmann::json read_json_file(const std::filesystem::path& path);

// Shortest round-trip decimal form, so CSV values re-parse exactly.
std::string format_number(double v);

// Writes front.csv, bounds.csv, epsilons.csv and solutions/*.json.
// Returns the list of written files relative to `dir`.
std::vector<std::string> write_pareto_outputs(const ParetoResult& result,
                                              const Scenario& scenario,
                                              const std::filesystem::path& dir,
                                              const std::string& source);

std::string oracle_front_csv(const std::vector<OraclePoint>& points);

struct FrontCsvRow {
  double epsilon = 0.0;
  double f1 = 0.0;
  int f2 = 0;
  int f3 = 0;
  double fc = 0.0;
  double bound = 0.0;
  bool heuristic_bound = true;
  std::string solution_file;
};

std::vector<FrontCsvRow> read_front_csv(const std::filesystem::path& path);
std::vector<BoundEntry> read_bounds_csv(const std::filesystem::path& path);

}  // namespace bhplan

#endif  // BHPLAN_IO_HPP_
