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

#include "bhplan/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace bhplan {

using nlohmann::json;

namespace {

// Typed field access that names the offending field on failure.
class Fields {
 public:
  Fields(const json& j, std::string path, std::set<std::string> allowed)
      : j_(j), path_(std::move(path)) {
    if (!j.is_object()) throw InputError(where("") + ": expected an object");
    for (const auto& [k, _] : j.items()) {
      if (!allowed.count(k)) {
        throw InputError(where(k) + ": unknown field");
      }
    }
  }

  bool has(const std::string& k) const { return j_.contains(k); }
  const json& raw(const std::string& k) const { return need(k); }

  std::string where(const std::string& k) const {
    if (path_.empty()) return "field '" + k + "'";
    return "field '" + path_ + (k.empty() ? "" : "." + k) + "'";
  }

  double num(const std::string& k) const {
    const json& v = need(k);
    if (!v.is_number()) throw InputError(where(k) + ": expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw InputError(where(k) + ": must be finite");
    return d;
  }
  int integer(const std::string& k) const {
    const json& v = need(k);
    if (!v.is_number_integer()) {
      throw InputError(where(k) + ": expected an integer");
    }
    return v.get<int>();
  }
  std::uint64_t u64(const std::string& k) const {
    const json& v = need(k);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      throw InputError(where(k) + ": expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
  }
  std::string str(const std::string& k) const {
    const json& v = need(k);
    if (!v.is_string()) throw InputError(where(k) + ": expected a string");
    return v.get<std::string>();
  }
  void opt(const std::string& k, double& out) const {
    if (has(k)) out = num(k);
  }
  void opt(const std::string& k, int& out) const {
    if (has(k)) out = integer(k);
  }

 private:
  const json& need(const std::string& k) const {
    if (!j_.contains(k)) throw InputError(where(k) + ": missing");
    return j_.at(k);
  }

  const json& j_;
  std::string path_;
};

std::string join(const std::string& path, const std::string& k) {
  return path.empty() ? k : path + "." + k;
}

json sites_to_json(const std::vector<Site>& sites) {
  json a = json::array();
  for (const auto& s : sites) a.push_back({{"x", s.pos.x}, {"y", s.pos.y}, {"cost", s.cost}});
  return a;
}

std::vector<Site> sites_from_json(const json& j, const std::string& path) {
  if (!j.is_array()) throw InputError("field '" + path + "': expected an array");
  std::vector<Site> out;
  for (std::size_t n = 0; n < j.size(); ++n) {
    Fields f(j[n], path + "[" + std::to_string(n) + "]", {"x", "y", "cost"});
    Site s;
    s.pos = {f.num("x"), f.num("y")};
    f.opt("cost", s.cost);
    out.push_back(s);
  }
  return out;
}

template <std::size_t N>
json named(const std::array<double, N>& v, const std::array<const char*, N>& names) {
  json o = json::object();
  for (std::size_t n = 0; n < N; ++n) o[names[n]] = v[n];
  return o;
}

template <std::size_t N>
void named_from(const Fields& parent, const std::string& key,
                const std::string& path, std::array<double, N>& v,
                const std::array<const char*, N>& names) {
  if (!parent.has(key)) return;
  std::set<std::string> allowed(names.begin(), names.end());
  Fields f(parent.raw(key), join(path, key), allowed);
  for (std::size_t n = 0; n < N; ++n) f.opt(names[n], v[n]);
}

constexpr std::array<const char*, 4> kClassNames{"access_los", "access_nlos",
                                                 "backhaul_los", "backhaul_nlos"};
constexpr std::array<const char*, 3> kRoleNames{"ban", "sbs", "ma"};
constexpr std::array<const char*, 2> kKindNames{"access", "backhaul"};

std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path) {
  std::istringstream in(read_text_file(path));
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    rows.push_back(std::move(cells));
  }
  return rows;
}

double parse_double(const std::string& s, const std::string& what) {
  if (s.empty()) return std::nan("");
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError(what + ": bad number '" + s + "'");
  }
}

std::string node_text(NodeRef n) {
  return (n.is_ban() ? "b" : "s") + std::to_string(n.index);
}

NodeRef parse_node(const json& v, const std::string& where, const Scenario& sc) {
  if (!v.is_string()) throw InputError(where + ": expected \"b<k>\" or \"s<i>\"");
  const std::string s = v.get<std::string>();
  if (s.size() < 2 || (s[0] != 'b' && s[0] != 's')) {
    throw InputError(where + ": expected \"b<k>\" or \"s<i>\", got '" + s + "'");
  }
  int idx = -1;
  auto [ptr, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), idx);
  if (ec != std::errc() || ptr != s.data() + s.size() || idx < 0) {
    throw InputError(where + ": bad station reference '" + s + "'");
  }
  const int limit = s[0] == 'b' ? sc.num_bans() : sc.num_sbss();
  if (idx >= limit) throw InputError(where + ": '" + s + "' out of range");
  return s[0] == 'b' ? NodeRef::Ban(idx) : NodeRef::Sbs(idx);
}

int parse_key(const std::string& k, int limit, const std::string& where) {
  int idx = -1;
  auto [ptr, ec] = std::from_chars(k.data(), k.data() + k.size(), idx);
  if (ec != std::errc() || ptr != k.data() + k.size() || idx < 0 || idx >= limit) {
    throw InputError(where + ": bad index '" + k + "'");
  }
  return idx;
}

}  // namespace

// ---------------------------------------------------------------------------

json radio_to_json(const RadioConfig& r) {
  return {
      {"carrier_frequency_hz", r.carrier_frequency_hz},
      {"reference_distance_m", r.reference_distance_m},
      {"pathloss_exponent", named(r.pathloss_exponent, kClassNames)},
      {"shadowing_std_db", named(r.shadowing_std_db, kClassNames)},
      {"blockage_beta", r.blockage_beta},
      {"tx_power_dbm", named(r.tx_power_dbm, kRoleNames)},
      {"bandwidth_hz", named(r.bandwidth_hz, kKindNames)},
      {"noise_power_dbm", r.noise_power_dbm},
      {"snr_threshold_db", r.snr_threshold_db},
      {"access_outage", r.access_outage},
      {"backhaul_outage", r.backhaul_outage},
      {"user_density_per_m2", r.user_density_per_m2},
      {"per_user_rate_bps", r.per_user_rate_bps},
      {"compression_ratio", r.compression_ratio},
      {"theta", r.htc_mtc_weight},
      {"machine_limit", r.machine_limit},
      {"ma_range_m", r.ma_range_m},
  };
}

RadioConfig radio_from_json(const json& j, RadioConfig r) {
  const std::string path = "radio";
  Fields f(j, path,
           {"carrier_frequency_hz", "reference_distance_m", "pathloss_exponent",
            "shadowing_std_db", "blockage_beta", "tx_power_dbm", "bandwidth_hz",
            "noise_power_dbm", "snr_threshold_db", "access_outage",
            "backhaul_outage", "user_density_per_m2", "per_user_rate_bps",
            "compression_ratio", "theta", "machine_limit", "ma_range_m"});
  if (f.has("carrier_frequency_hz")) {
    r.carrier_frequency_hz = f.num("carrier_frequency_hz");
    if (r.carrier_frequency_hz <= 0) {
      throw InputError(f.where("carrier_frequency_hz") + ": must be > 0");
    }
    r.wavelength_m = kSpeedOfLight / r.carrier_frequency_hz;
  }
  f.opt("reference_distance_m", r.reference_distance_m);
  named_from(f, "pathloss_exponent", path, r.pathloss_exponent, kClassNames);
  named_from(f, "shadowing_std_db", path, r.shadowing_std_db, kClassNames);
  f.opt("blockage_beta", r.blockage_beta);
  named_from(f, "tx_power_dbm", path, r.tx_power_dbm, kRoleNames);
  named_from(f, "bandwidth_hz", path, r.bandwidth_hz, kKindNames);
  f.opt("noise_power_dbm", r.noise_power_dbm);
  f.opt("snr_threshold_db", r.snr_threshold_db);
  f.opt("access_outage", r.access_outage);
  f.opt("backhaul_outage", r.backhaul_outage);
  f.opt("user_density_per_m2", r.user_density_per_m2);
  f.opt("per_user_rate_bps", r.per_user_rate_bps);
  f.opt("compression_ratio", r.compression_ratio);
  f.opt("theta", r.htc_mtc_weight);
  f.opt("machine_limit", r.machine_limit);
  f.opt("ma_range_m", r.ma_range_m);
  r.validate();
  return r;
}

json scenario_to_json(const Scenario& sc) {
  json machines = json::array();
  for (const auto& m : sc.machines) {
    machines.push_back({{"x", m.pos.x}, {"y", m.pos.y}, {"rate", m.rate_bps}});
  }
  return {
      {"version", kScenarioSchemaVersion},
      {"area", {{"w", sc.width}, {"h", sc.height}}},
      {"radio", radio_to_json(sc.radio)},
      {"ban_sites", sites_to_json(sc.ban_sites)},
      {"sbs_sites", sites_to_json(sc.sbs_sites)},
      {"ma_sites", sites_to_json(sc.ma_sites)},
      {"machines", machines},
      {"subarea_side", sc.subarea_side},
      {"n_b", sc.ban_slot_limit},
      {"n_relays", sc.max_relays},
  };
}

Scenario scenario_from_json(const json& j) {
  Fields f(j, "",
           {"version", "area", "radio", "ban_sites", "sbs_sites", "ma_sites",
            "machines", "subarea_side", "n_b", "n_relays"});
  if (f.integer("version") != kScenarioSchemaVersion) {
    throw InputError(f.where("version") + ": unsupported schema version");
  }
  Scenario sc;
  Fields area(f.raw("area"), "area", {"w", "h"});
  sc.width = area.num("w");
  sc.height = area.num("h");
  if (f.has("radio")) sc.radio = radio_from_json(f.raw("radio"));
  if (f.has("ban_sites")) sc.ban_sites = sites_from_json(f.raw("ban_sites"), "ban_sites");
  if (f.has("sbs_sites")) sc.sbs_sites = sites_from_json(f.raw("sbs_sites"), "sbs_sites");
  if (f.has("ma_sites")) sc.ma_sites = sites_from_json(f.raw("ma_sites"), "ma_sites");
  if (f.has("machines")) {
    const json& a = f.raw("machines");
    if (!a.is_array()) throw InputError("field 'machines': expected an array");
    for (std::size_t n = 0; n < a.size(); ++n) {
      Fields m(a[n], "machines[" + std::to_string(n) + "]", {"x", "y", "rate"});
      Machine mc;
      mc.pos = {m.num("x"), m.num("y")};
      m.opt("rate", mc.rate_bps);
      sc.machines.push_back(mc);
    }
  }
  f.opt("subarea_side", sc.subarea_side);
  f.opt("n_b", sc.ban_slot_limit);
  f.opt("n_relays", sc.max_relays);
  sc.validate();
  return sc;
}

std::uint64_t scenario_hash(const Scenario& sc) {
  return fnv1a64(scenario_to_json(sc).dump());
}

GenParams gen_params_from_json(const json& j, GenParams p) {
  Fields f(j, "gen",
           {"width", "height", "num_bans", "num_sbss", "num_mas", "num_machines",
            "ban_cost", "sbs_cost", "ma_cost", "machine_rate_bps",
            "subarea_side", "ban_slot_limit", "max_relays", "radio",
            "ban_sites", "sbs_sites", "ma_sites"});
  f.opt("width", p.width);
  f.opt("height", p.height);
  f.opt("num_bans", p.num_bans);
  f.opt("num_sbss", p.num_sbss);
  f.opt("num_mas", p.num_mas);
  f.opt("num_machines", p.num_machines);
  f.opt("ban_cost", p.ban_cost);
  f.opt("sbs_cost", p.sbs_cost);
  f.opt("ma_cost", p.ma_cost);
  f.opt("machine_rate_bps", p.machine_rate_bps);
  f.opt("subarea_side", p.subarea_side);
  f.opt("ban_slot_limit", p.ban_slot_limit);
  f.opt("max_relays", p.max_relays);
  if (f.has("radio")) p.radio = radio_from_json(f.raw("radio"), p.radio);
  if (f.has("ban_sites")) p.explicit_bans = sites_from_json(f.raw("ban_sites"), "gen.ban_sites");
  if (f.has("sbs_sites")) p.explicit_sbss = sites_from_json(f.raw("sbs_sites"), "gen.sbs_sites");
  if (f.has("ma_sites")) p.explicit_mas = sites_from_json(f.raw("ma_sites"), "gen.ma_sites");
  return p;
}

ParetoParams pareto_params_from_json(const json& j, ParetoParams p) {
  Fields f(j, "solve",
           {"theta", "lagrangian_rounds", "delta_cost", "delta_eps",
            "front_outer_iterations", "front_inner_iterations", "step_scale",
            "step_patience", "bound_select", "search"});
  f.opt("theta", p.theta);
  f.opt("lagrangian_rounds", p.lagrangian_rounds);
  f.opt("delta_cost", p.delta_cost);
  f.opt("delta_eps", p.delta_eps);
  f.opt("front_outer_iterations", p.front_outer_iterations);
  f.opt("front_inner_iterations", p.front_inner_iterations);
  f.opt("step_scale", p.step_scale);
  f.opt("step_patience", p.step_patience);
  if (f.has("bound_select")) {
    const std::string b = f.str("bound_select");
    if (b == "max") {
      p.bound_select = BoundSelect::kMax;
    } else if (b == "min") {
      p.bound_select = BoundSelect::kMin;
    } else {
      throw InputError(f.where("bound_select") + ": expected \"max\" or \"min\"");
    }
  }
  if (f.has("search")) {
    Fields s(f.raw("search"), "solve.search",
             {"outer_iterations", "inner_iterations", "diversification",
              "swap_cap", "tenure_outer", "tenure_inner", "seed"});
    s.opt("outer_iterations", p.search.outer_iterations);
    s.opt("inner_iterations", p.search.inner_iterations);
    s.opt("diversification", p.search.diversification);
    s.opt("swap_cap", p.search.swap_cap);
    s.opt("tenure_outer", p.search.tenure_outer);
    s.opt("tenure_inner", p.search.tenure_inner);
    if (s.has("seed")) p.search.seed = s.u64("seed");
  }
  return p;
}

json pareto_params_to_json(const ParetoParams& p) {
  return {
      {"theta", p.theta},
      {"lagrangian_rounds", p.lagrangian_rounds},
      {"delta_cost", p.delta_cost},
      {"delta_eps", p.delta_eps},
      {"front_outer_iterations", p.front_outer_iterations},
      {"front_inner_iterations", p.front_inner_iterations},
      {"step_scale", p.step_scale},
      {"step_patience", p.step_patience},
      {"bound_select", p.bound_select == BoundSelect::kMax ? "max" : "min"},
      {"search",
       {{"outer_iterations", p.search.outer_iterations},
        {"inner_iterations", p.search.inner_iterations},
        {"diversification", p.search.diversification},
        {"swap_cap", p.search.swap_cap},
        {"tenure_outer", p.search.tenure_outer},
        {"tenure_inner", p.search.tenure_inner},
        {"seed", p.search.seed}}},
  };
}

// ---------------------------------------------------------------------------

json tables_to_json(const DerivedTables& t, std::uint64_t hash) {
  return {
      {"scenario_hash", hex64(hash)},
      {"num_subareas", t.num_subareas},
      {"ban_radius", t.ban_radius},
      {"sbs_radius", t.sbs_radius},
      {"ma_range", t.ma_range},
      {"machine_limit", t.machine_limit},
      {"ban_reach", t.ban_reach},
      {"sbs_reach", t.sbs_reach},
      {"ma_reach", t.ma_reach},
      {"ban_subarea_dist", t.ban_subarea_dist},
      {"sbs_subarea_dist", t.sbs_subarea_dist},
      {"ma_machine_dist", t.ma_machine_dist},
      {"cap_ban_sbs", t.cap_ban_sbs},
      {"cap_sbs_sbs", t.cap_sbs_sbs},
      {"cap_ban_ma", t.cap_ban_ma},
      {"n_ban_sbs", t.n_ban_sbs},
      {"n_sbs_sbs", t.n_sbs_sbs},
  };
}

DerivedTables tables_from_json(const json& j, std::uint64_t expected_hash) {
  if (!j.is_object() || !j.contains("scenario_hash")) {
    throw InputError("field 'scenario_hash': missing");
  }
  if (j.at("scenario_hash") != hex64(expected_hash)) {
    throw InputError("tables were derived for a different scenario");
  }
  DerivedTables t;
  try {
    j.at("num_subareas").get_to(t.num_subareas);
    j.at("ban_radius").get_to(t.ban_radius);
    j.at("sbs_radius").get_to(t.sbs_radius);
    j.at("ma_range").get_to(t.ma_range);
    j.at("machine_limit").get_to(t.machine_limit);
    j.at("ban_reach").get_to(t.ban_reach);
    j.at("sbs_reach").get_to(t.sbs_reach);
    j.at("ma_reach").get_to(t.ma_reach);
    j.at("ban_subarea_dist").get_to(t.ban_subarea_dist);
    j.at("sbs_subarea_dist").get_to(t.sbs_subarea_dist);
    j.at("ma_machine_dist").get_to(t.ma_machine_dist);
    j.at("cap_ban_sbs").get_to(t.cap_ban_sbs);
    j.at("cap_sbs_sbs").get_to(t.cap_sbs_sbs);
    j.at("cap_ban_ma").get_to(t.cap_ban_ma);
    j.at("n_ban_sbs").get_to(t.n_ban_sbs);
    j.at("n_sbs_sbs").get_to(t.n_sbs_sbs);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed tables file: ") + e.what());
  }
  return t;
}

// ---------------------------------------------------------------------------

json solution_to_json(const Solution& sol, const ObjectiveVector& o) {
  const auto& d = sol.deployment;
  const auto& p = sol.plan;
  auto on = [](const std::vector<bool>& bits) {
    json a = json::array();
    for (std::size_t n = 0; n < bits.size(); ++n) {
      if (bits[n]) a.push_back(n);
    }
    return a;
  };
  json cover = json::object();
  for (std::size_t s = 0; s < p.ban_cover.size(); ++s) {
    const int k = p.ban_cover[s];
    const int i = p.sbs_cover[s];
    const std::string key = std::to_string(s);
    if (k >= 0 && i >= 0) {
      cover[key] = {"b" + std::to_string(k), "s" + std::to_string(i)};
    } else if (k >= 0) {
      cover[key] = "b" + std::to_string(k);
    } else if (i >= 0) {
      cover[key] = "s" + std::to_string(i);
    }
  }
  json parents = json::object();
  for (std::size_t i = 0; i < p.sbs_parent.size(); ++i) {
    if (p.sbs_parent[i].valid()) parents[std::to_string(i)] = node_text(p.sbs_parent[i]);
  }
  json ma_links = json::object();
  for (std::size_t j = 0; j < p.ma_parent.size(); ++j) {
    if (p.ma_parent[j] >= 0) ma_links[std::to_string(j)] = p.ma_parent[j];
  }
  json machines = json::object();
  for (std::size_t m = 0; m < p.machine_cover.size(); ++m) {
    if (p.machine_cover[m] >= 0) machines[std::to_string(m)] = p.machine_cover[m];
  }
  return {
      {"deployment", {{"bans", on(d.bans)}, {"sbss", on(d.sbss)}, {"mas", on(d.mas)}}},
      {"cover", cover},
      {"parents", parents},
      {"ma_links", ma_links},
      {"machines", machines},
      {"objectives", {{"f1", o.f1}, {"f2", o.f2}, {"f3", o.f3}, {"fc", o.fc}}},
  };
}

Solution solution_from_json(const json& j, const Scenario& sc) {
  Fields f(j, "", {"deployment", "cover", "parents", "ma_links", "machines",
                   "objectives"});
  Solution sol = Solution::Empty(sc);
  Fields dep(f.raw("deployment"), "deployment", {"bans", "sbss", "mas"});
  auto bits = [&](const char* key, std::vector<bool>& out) {
    if (!dep.has(key)) return;
    const json& a = dep.raw(key);
    const std::string where = dep.where(key);
    if (!a.is_array()) throw InputError(where + ": expected an array");
    for (const auto& v : a) {
      if (!v.is_number_integer() || v.get<long long>() < 0 ||
          v.get<long long>() >= static_cast<long long>(out.size())) {
        throw InputError(where + ": bad site index " + v.dump());
      }
      out[v.get<std::size_t>()] = true;
    }
  };
  bits("bans", sol.deployment.bans);
  bits("sbss", sol.deployment.sbss);
  bits("mas", sol.deployment.mas);

  auto object = [&](const char* key) -> const json* {
    if (!f.has(key)) return nullptr;
    const json& o = f.raw(key);
    if (!o.is_object()) throw InputError(f.where(key) + ": expected an object");
    return &o;
  };
  if (const json* cover = object("cover")) {
    for (const auto& [k, v] : cover->items()) {
      const std::string where = "field 'cover." + k + "'";
      const int s = parse_key(k, sc.num_subareas(), where);
      const std::vector<json> refs = v.is_array() ? v.get<std::vector<json>>()
                                                  : std::vector<json>{v};
      for (const auto& r : refs) {
        const NodeRef n = parse_node(r, where, sc);
        (n.is_ban() ? sol.plan.ban_cover : sol.plan.sbs_cover)[s] = n.index;
      }
    }
  }
  if (const json* parents = object("parents")) {
    for (const auto& [k, v] : parents->items()) {
      const std::string where = "field 'parents." + k + "'";
      sol.plan.sbs_parent[parse_key(k, sc.num_sbss(), where)] =
          parse_node(v, where, sc);
    }
  }
  auto index_map = [&](const char* key, int key_limit, int value_limit,
                       std::vector<int>& out) {
    const json* o = object(key);
    if (!o) return;
    for (const auto& [k, v] : o->items()) {
      const std::string where = "field '" + std::string(key) + "." + k + "'";
      const int idx = parse_key(k, key_limit, where);
      if (!v.is_number_integer() || v.get<long long>() < 0 ||
          v.get<long long>() >= value_limit) {
        throw InputError(where + ": bad index " + v.dump());
      }
      out[idx] = v.get<int>();
    }
  };
  index_map("ma_links", sc.num_mas(), sc.num_bans(), sol.plan.ma_parent);
  index_map("machines", sc.num_machines(), sc.num_mas(), sol.plan.machine_cover);
  return sol;
}

json violations_to_json(const std::vector<Violation>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back({{"id", v.id}, {"detail", v.detail}});
  return a;
}

// ---------------------------------------------------------------------------

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << text;
  if (!out) throw InputError("write failed for " + path.string());
}

json read_json_file(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(path.string() + ": malformed JSON: " + e.what());
  }
}

std::string format_number(double v) {
  if (std::isnan(v)) return "";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

// ---------------------------------------------------------------------------

std::vector<std::string> write_pareto_outputs(const ParetoResult& result,
                                              const Scenario& sc,
                                              const std::filesystem::path& dir,
                                              const std::string& source) {
  std::vector<std::string> written;
  auto bound_at = [&](double eps) -> const BoundEntry* {
    for (const auto& b : result.bounds) {
      if (b.epsilon == eps) return &b;
    }
    return nullptr;
  };

  std::ostringstream front;
  front << "# source=" << source << "\n";
  front << "epsilon,f1,f2,f3,fc,bound,heuristic_bound,solution_file\n";
  const auto entries = result.front.sorted();
  for (std::size_t n = 0; n < entries.size(); ++n) {
    const auto& e = entries[n];
    char name[32];
    std::snprintf(name, sizeof name, "sol_%03zu.json", n);
    const std::string rel = std::string("solutions/") + name;
    write_text_file(dir / rel, solution_to_json(e.solution, e.objectives).dump(1) + "\n");
    written.push_back(rel);
    const BoundEntry* b = bound_at(e.epsilon);
    front << format_number(e.epsilon) << ',' << format_number(e.objectives.f1)
          << ',' << e.objectives.f2 << ',' << e.objectives.f3 << ','
          << format_number(e.objectives.fc) << ','
          << (b ? format_number(b->bound) : "") << ','
          << (b ? (b->heuristic ? 1 : 0) : 1) << ',' << rel << "\n";
  }
  write_text_file(dir / "front.csv", front.str());
  written.push_back("front.csv");

  std::ostringstream bounds;
  bounds << "epsilon,bound,raw_bound,heuristic_bound\n";
  for (const auto& b : result.bounds) {
    bounds << format_number(b.epsilon) << ',' << format_number(b.bound) << ','
           << format_number(b.raw_bound) << ',' << (b.heuristic ? 1 : 0) << "\n";
  }
  write_text_file(dir / "bounds.csv", bounds.str());
  written.push_back("bounds.csv");

  std::ostringstream eps;
  eps << "iteration,epsilon\n";
  for (std::size_t n = 0; n < result.epsilons.size(); ++n) {
    eps << n << ',' << format_number(result.epsilons[n]) << "\n";
  }
  write_text_file(dir / "epsilons.csv", eps.str());
  written.push_back("epsilons.csv");
  (void)sc;
  return written;
}

std::string oracle_front_csv(const std::vector<OraclePoint>& points) {
  std::ostringstream out;
  out << "# source=oracle\n";
  out << "epsilon,f1,f2,f3,fc,bound,heuristic_bound,solution_file\n";
  for (const auto& p : points) {
    out << format_number(p.f1) << ',' << format_number(p.f1) << ",,,"
        << format_number(p.fc) << ",,0,\n";
  }
  return out.str();
}

std::vector<FrontCsvRow> read_front_csv(const std::filesystem::path& path) {
  auto rows = read_csv(path);
  if (rows.empty() || rows[0].size() < 8 || rows[0][0] != "epsilon") {
    throw InputError(path.string() + ": missing front header");
  }
  std::vector<FrontCsvRow> out;
  for (std::size_t n = 1; n < rows.size(); ++n) {
    const auto& r = rows[n];
    const std::string where = path.string() + " row " + std::to_string(n);
    if (r.size() < 8) throw InputError(where + ": expected 8 columns");
    FrontCsvRow row;
    row.epsilon = parse_double(r[0], where);
    row.f1 = parse_double(r[1], where);
    row.f2 = r[2].empty() ? -1 : static_cast<int>(parse_double(r[2], where));
    row.f3 = r[3].empty() ? -1 : static_cast<int>(parse_double(r[3], where));
    row.fc = parse_double(r[4], where);
    row.bound = parse_double(r[5], where);
    row.heuristic_bound = r[6] != "0";
    row.solution_file = r[7];
    out.push_back(row);
  }
  return out;
}

std::vector<BoundEntry> read_bounds_csv(const std::filesystem::path& path) {
  auto rows = read_csv(path);
  if (rows.empty() || rows[0].size() < 4 || rows[0][0] != "epsilon") {
    throw InputError(path.string() + ": missing bounds header");
  }
  std::vector<BoundEntry> out;
  for (std::size_t n = 1; n < rows.size(); ++n) {
    const auto& r = rows[n];
    const std::string where = path.string() + " row " + std::to_string(n);
    if (r.size() < 4) throw InputError(where + ": expected 4 columns");
    out.push_back({parse_double(r[0], where), parse_double(r[1], where),
                   parse_double(r[2], where), r[3] != "0"});
  }
  return out;
}

}  // namespace bhplan
