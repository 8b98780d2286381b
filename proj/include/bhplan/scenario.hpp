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

// Planning instances, the mmWave radio abstraction and the derived tables
// (coverage radii, reachability, backhaul capacities, subarea-count limits)
// that every solver consumes.

#ifndef BHPLAN_SCENARIO_HPP_
#define BHPLAN_SCENARIO_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "bhplan/common.hpp"

namespace bhplan {

inline constexpr double kSpeedOfLight = 299792458.0;

enum class LinkClass : int {
  kAccessLos = 0,
  kAccessNlos = 1,
  kBackhaulLos = 2,
  kBackhaulNlos = 3,
};

// Access or backhaul; the LOS/NLOS split is resolved by the mixture.
enum class LinkKind : int { kAccess = 0, kBackhaul = 1 };

enum class StationRole : int { kBan = 0, kSbs = 1, kMa = 2 };

struct RadioConfig {
  double carrier_frequency_hz = 73e9;
  double wavelength_m = kSpeedOfLight / 73e9;
  double reference_distance_m = 1.0;
  // Indexed by LinkClass.
  std::array<double, 4> pathloss_exponent{2.0, 3.3, 2.0, 3.5};
  std::array<double, 4> shadowing_std_db{5.2, 7.6, 4.2, 7.9};
  double blockage_beta = 0.046;
  // Indexed by StationRole. The MA entry drives the MA<->BAN backhaul link.
  std::array<double, 3> tx_power_dbm{30.0, 30.0, 30.0};
  // Indexed by LinkKind.
  std::array<double, 2> bandwidth_hz{1e9, 1e9};
  double noise_power_dbm = -74.0;
  double snr_threshold_db = -10.0;
  double access_outage = 0.1;
  double backhaul_outage = 0.1;
  double user_density_per_m2 = 200e-6;
  double per_user_rate_bps = 100e6;
  double compression_ratio = 0.5;
  double htc_mtc_weight = 0.5;
  int machine_limit = 600;
  double ma_range_m = 100.0;

  // Throws InputError on any broken invariant.
  void validate() const;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

double distance(Point a, Point b);

struct Site {
  Point pos;
  double cost = 1.0;
  friend bool operator==(const Site&, const Site&) = default;
};

struct Machine {
  Point pos;
  double rate_bps = 10e3;
  friend bool operator==(const Machine&, const Machine&) = default;
};

struct Scenario {
  double width = 0.0;
  double height = 0.0;
  RadioConfig radio;
  std::vector<Site> ban_sites;
  std::vector<Site> sbs_sites;
  std::vector<Site> ma_sites;
  std::vector<Machine> machines;
  double subarea_side = 10.0;
  int ban_slot_limit = 5;  // N_b
  int max_relays = 2;      // N; paths have at most N+1 hops

  int grid_cols() const;
  int grid_rows() const;
  int num_subareas() const { return grid_cols() * grid_rows(); }
  // Midpoint of cell s, clipped to the area for partial edge cells.
  Point subarea_center(int s) const;
  int num_bans() const { return static_cast<int>(ban_sites.size()); }
  int num_sbss() const { return static_cast<int>(sbs_sites.size()); }
  int num_mas() const { return static_cast<int>(ma_sites.size()); }
  int num_machines() const { return static_cast<int>(machines.size()); }
  double total_cost() const;
  // Cheapest BAN site; +inf when there are none.
  double min_ban_cost() const;
  int max_hops() const { return max_relays + 1; }

  void validate() const;
};

// Parameters for seeded instance generation. Explicit site lists, when
// non-empty, replace the random draw for that role.
struct GenParams {
  double width = 400.0;
  double height = 400.0;
  int num_bans = 5;
  int num_sbss = 40;
  int num_mas = 20;
  int num_machines = 2000;
  double ban_cost = 10.0;
  double sbs_cost = 1.0;
  double ma_cost = 1.0;
  double machine_rate_bps = 10e3;
  double subarea_side = 10.0;
  int ban_slot_limit = 5;
  int max_relays = 2;
  RadioConfig radio;
  std::vector<Site> explicit_bans;
  std::vector<Site> explicit_sbss;
  std::vector<Site> explicit_mas;

  static GenParams PaperFig2();
};

Scenario generate_scenario(const GenParams& params, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Radio model

// Mean pathloss in dB; shadowing is handled analytically by the callers.
double pathloss_db(const RadioConfig& radio, double d, LinkClass cls);
double los_probability(const RadioConfig& radio, double d);
// Mean SNR in dB for the given transmitter role and link class.
double mean_snr_db(const RadioConfig& radio, double d, LinkClass cls,
                   StationRole tx);
// P(SNR <= gamma_t) under the LOS/NLOS mixture with lognormal shadowing.
double outage_probability(const RadioConfig& radio, double d, LinkKind kind,
                          StationRole tx);
// Largest d with outage <= p_oa (bisection to 0.01 m), capped at `cap`.
double coverage_radius(const RadioConfig& radio, LinkKind kind,
                       StationRole tx, double cap);
// SNR (dB) exceeded with probability 1 - p_ob.
double reliable_snr_db(const RadioConfig& radio, double d, StationRole tx);
double backhaul_capacity(const RadioConfig& radio, Point parent, Point child,
                         StationRole tx);
// Largest n <= max_subareas with P(R_u * K > C) <= p_ob, K ~ Poisson(n m).
int subarea_capacity_limit(const RadioConfig& radio, double capacity_bps,
                           double subarea_area, int max_subareas);
// Exact P(K * R_u > C) for K ~ Poisson(mean).
double demand_exceed_probability(double mean, double per_user_rate,
                                 double capacity);

// ---------------------------------------------------------------------------
// Derived tables

struct DerivedTables {
  int num_subareas = 0;
  double ban_radius = 0.0;
  double sbs_radius = 0.0;
  double ma_range = 0.0;
  int machine_limit = 0;
  // Reachable subareas per site, nearest-first (ties by index).
  std::vector<std::vector<int>> ban_reach;
  std::vector<std::vector<int>> sbs_reach;
  // Machines within ma_range per MA, nearest-first.
  std::vector<std::vector<int>> ma_reach;
  // Distances site -> subarea centre, [site][s].
  std::vector<std::vector<double>> ban_subarea_dist;
  std::vector<std::vector<double>> sbs_subarea_dist;
  std::vector<std::vector<double>> ma_machine_dist;
  // Backhaul capacities (bps); [parent][child].
  std::vector<std::vector<double>> cap_ban_sbs;
  std::vector<std::vector<double>> cap_sbs_sbs;  // diagonal is 0
  std::vector<std::vector<double>> cap_ban_ma;
  // Subarea-count limits for the same links.
  std::vector<std::vector<int>> n_ban_sbs;
  std::vector<std::vector<int>> n_sbs_sbs;

  bool link_usable(NodeRef parent, int child_sbs) const;
  int link_limit(NodeRef parent, int child_sbs) const;
  bool ma_link_usable(int ban, int ma) const {
    return cap_ban_ma[ban][ma] > 0.0;
  }
  bool sbs_reaches(int i, int s) const;
  bool ban_reaches(int k, int s) const;
};

DerivedTables derive_tables(const Scenario& scenario);

}  // namespace bhplan

#endif  // BHPLAN_SCENARIO_HPP_
