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

#include "bhplan/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace bhplan {
namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// P(X <= x) for X ~ N(mean, sd); a step when sd == 0.
double gaussian_cdf(double x, double mean, double sd) {
  if (sd <= 0.0) return x >= mean ? 1.0 : 0.0;
  return normal_cdf((x - mean) / sd);
}

LinkClass los_class(LinkKind kind) {
  return kind == LinkKind::kAccess ? LinkClass::kAccessLos
                                   : LinkClass::kBackhaulLos;
}

LinkClass nlos_class(LinkKind kind) {
  return kind == LinkKind::kAccess ? LinkClass::kAccessNlos
                                   : LinkClass::kBackhaulNlos;
}

int idx(LinkClass c) { return static_cast<int>(c); }

// P(SNR <= x) under the LOS/NLOS mixture at distance d.
double snr_cdf(const RadioConfig& radio, double d, LinkKind kind,
               StationRole tx, double x) {
  const double p_los = los_probability(radio, d);
  const LinkClass los = los_class(kind);
  const LinkClass nlos = nlos_class(kind);
  const double cdf_los = gaussian_cdf(x, mean_snr_db(radio, d, los, tx),
                                      radio.shadowing_std_db[idx(los)]);
  const double cdf_nlos = gaussian_cdf(x, mean_snr_db(radio, d, nlos, tx),
                                       radio.shadowing_std_db[idx(nlos)]);
  return p_los * cdf_los + (1.0 - p_los) * cdf_nlos;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

bool finite(double v) { return std::isfinite(v); }

std::vector<int> sorted_within(const std::vector<double>& dist,
                               double radius) {
  std::vector<int> out;
  for (int s = 0; s < static_cast<int>(dist.size()); ++s) {
    if (dist[s] <= radius) out.push_back(s);
  }
  std::stable_sort(out.begin(), out.end(),
                   [&](int a, int b) { return dist[a] < dist[b]; });
  return out;
}

}  // namespace

void RadioConfig::validate() const {
  require(finite(carrier_frequency_hz) && carrier_frequency_hz > 0,
          "radio.carrier_frequency must be positive");
  require(finite(wavelength_m) && wavelength_m > 0,
          "radio.wavelength must be positive");
  const double expect = kSpeedOfLight / carrier_frequency_hz;
  require(std::abs(wavelength_m - expect) <= 1e-3 * expect,
          "radio.wavelength inconsistent with carrier_frequency");
  require(finite(reference_distance_m) && reference_distance_m > 0,
          "radio.reference_distance must be positive");
  for (double n : pathloss_exponent) {
    require(finite(n) && n > 0, "radio.pathloss_exponent must be positive");
  }
  for (double s : shadowing_std_db) {
    require(finite(s) && s >= 0, "radio.shadowing_std must be >= 0");
  }
  require(finite(blockage_beta) && blockage_beta >= 0,
          "radio.blockage_beta must be >= 0");
  for (double p : tx_power_dbm) require(finite(p), "radio.tx_power finite");
  for (double b : bandwidth_hz) {
    require(finite(b) && b >= 0, "radio.bandwidth must be >= 0");
  }
  require(finite(noise_power_dbm), "radio.noise_power finite");
  require(finite(snr_threshold_db), "radio.snr_threshold finite");
  require(access_outage > 0 && access_outage < 1,
          "radio.access_outage must be in (0,1)");
  require(backhaul_outage > 0 && backhaul_outage < 1,
          "radio.backhaul_outage must be in (0,1)");
  require(finite(user_density_per_m2) && user_density_per_m2 >= 0,
          "radio.user_density must be >= 0");
  require(finite(per_user_rate_bps) && per_user_rate_bps > 0,
          "radio.per_user_rate must be positive");
  require(compression_ratio > 0 && compression_ratio <= 1,
          "radio.compression_ratio must be in (0,1]");
  require(finite(htc_mtc_weight) && htc_mtc_weight >= 0,
          "radio.htc_mtc_weight must be >= 0");
  require(machine_limit >= 0, "radio.machine_limit must be >= 0");
  require(finite(ma_range_m) && ma_range_m >= 0,
          "radio.ma_range must be >= 0");
}

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

int Scenario::grid_cols() const {
  return static_cast<int>(std::ceil(width / subarea_side - 1e-9));
}

int Scenario::grid_rows() const {
  return static_cast<int>(std::ceil(height / subarea_side - 1e-9));
}

Point Scenario::subarea_center(int s) const {
  const int cols = grid_cols();
  const int c = s % cols;
  const int r = s / cols;
  const double x0 = c * subarea_side;
  const double y0 = r * subarea_side;
  const double x1 = std::min(width, x0 + subarea_side);
  const double y1 = std::min(height, y0 + subarea_side);
  return {0.5 * (x0 + x1), 0.5 * (y0 + y1)};
}

double Scenario::total_cost() const {
  double total = 0.0;
  for (const auto& s : ban_sites) total += s.cost;
  for (const auto& s : sbs_sites) total += s.cost;
  for (const auto& s : ma_sites) total += s.cost;
  return total;
}

double Scenario::min_ban_cost() const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : ban_sites) best = std::min(best, s.cost);
  return best;
}

void Scenario::validate() const {
  require(finite(width) && width > 0 && finite(height) && height > 0,
          "area must have positive width and height");
  require(finite(subarea_side) && subarea_side > 0,
          "subarea_side must be positive");
  require(ban_slot_limit >= 0, "n_b must be >= 0");
  require(max_relays >= 0, "n_relays must be >= 0");
  radio.validate();
  auto inside = [&](Point p) {
    return p.x >= 0 && p.x <= width && p.y >= 0 && p.y <= height;
  };
  auto check_sites = [&](const std::vector<Site>& sites, const char* name) {
    for (std::size_t i = 0; i < sites.size(); ++i) {
      require(inside(sites[i].pos), std::string(name) + "[" +
                                        std::to_string(i) +
                                        "] lies outside the area");
      require(finite(sites[i].cost) && sites[i].cost > 0,
              std::string(name) + "[" + std::to_string(i) +
                  "].cost must be positive");
    }
  };
  check_sites(ban_sites, "ban_sites");
  check_sites(sbs_sites, "sbs_sites");
  check_sites(ma_sites, "ma_sites");
  for (std::size_t m = 0; m < machines.size(); ++m) {
    require(inside(machines[m].pos),
            "machines[" + std::to_string(m) + "] lies outside the area");
    require(finite(machines[m].rate_bps) && machines[m].rate_bps >= 0,
            "machines[" + std::to_string(m) + "].rate must be >= 0");
  }
}

GenParams GenParams::PaperFig2() { return GenParams{}; }

Scenario generate_scenario(const GenParams& p, std::uint64_t seed) {
  if (!(p.width > 0) || !(p.height > 0)) {
    throw InputError("zero-size area");
  }
  if (p.num_bans < 0 || p.num_sbss < 0 || p.num_mas < 0 ||
      p.num_machines < 0) {
    throw InputError("site and machine counts must be >= 0");
  }
  Scenario sc;
  sc.width = p.width;
  sc.height = p.height;
  sc.radio = p.radio;
  sc.subarea_side = p.subarea_side;
  sc.ban_slot_limit = p.ban_slot_limit;
  sc.max_relays = p.max_relays;

  Rng rng(seed);
  auto draw_point = [&] {
    const double x = rng.uniform(0.0, p.width);
    const double y = rng.uniform(0.0, p.height);
    return Point{x, y};
  };
  auto draw_sites = [&](const std::vector<Site>& explicit_sites, int count,
                        double cost) {
    if (!explicit_sites.empty()) return explicit_sites;
    std::vector<Site> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) out.push_back({draw_point(), cost});
    return out;
  };
  sc.ban_sites = draw_sites(p.explicit_bans, p.num_bans, p.ban_cost);
  sc.sbs_sites = draw_sites(p.explicit_sbss, p.num_sbss, p.sbs_cost);
  sc.ma_sites = draw_sites(p.explicit_mas, p.num_mas, p.ma_cost);
  sc.machines.reserve(p.num_machines);
  for (int m = 0; m < p.num_machines; ++m) {
    sc.machines.push_back({draw_point(), p.machine_rate_bps});
  }
  sc.validate();
  return sc;
}

// ---------------------------------------------------------------------------

double pathloss_db(const RadioConfig& radio, double d, LinkClass cls) {
  if (!(d > 0)) throw std::domain_error("pathloss: distance must be > 0");
  const double d0 = radio.reference_distance_m;
  const double free_space =
      20.0 * std::log10(4.0 * std::numbers::pi * d0 / radio.wavelength_m);
  return free_space +
         10.0 * radio.pathloss_exponent[idx(cls)] * std::log10(d / d0);
}

double los_probability(const RadioConfig& radio, double d) {
  return std::exp(-radio.blockage_beta * d);
}

double mean_snr_db(const RadioConfig& radio, double d, LinkClass cls,
                   StationRole tx) {
  return radio.tx_power_dbm[static_cast<int>(tx)] - pathloss_db(radio, d, cls) -
         radio.noise_power_dbm;
}

double outage_probability(const RadioConfig& radio, double d, LinkKind kind,
                          StationRole tx) {
  return snr_cdf(radio, d, kind, tx, radio.snr_threshold_db);
}

double coverage_radius(const RadioConfig& radio, LinkKind kind, StationRole tx,
                       double cap) {
  const double p = radio.access_outage;
  if (outage_probability(radio, cap, kind, tx) <= p) return cap;
  double lo = 1e-6;
  if (outage_probability(radio, lo, kind, tx) > p) return 0.0;
  double hi = cap;
  while (hi - lo > 1e-3) {
    const double mid = 0.5 * (lo + hi);
    if (outage_probability(radio, mid, kind, tx) <= p) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

double reliable_snr_db(const RadioConfig& radio, double d, StationRole tx) {
  const double target = radio.backhaul_outage;
  const LinkKind kind = LinkKind::kBackhaul;
  const double m_los = mean_snr_db(radio, d, LinkClass::kBackhaulLos, tx);
  const double m_nlos = mean_snr_db(radio, d, LinkClass::kBackhaulNlos, tx);
  const double spread =
      10.0 * std::max({radio.shadowing_std_db[idx(LinkClass::kBackhaulLos)],
                       radio.shadowing_std_db[idx(LinkClass::kBackhaulNlos)],
                       1.0});
  double lo = std::min(m_los, m_nlos) - spread;
  double hi = std::max(m_los, m_nlos) + spread;
  // Smallest x with CDF(x) >= target.
  for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (snr_cdf(radio, d, kind, tx, mid) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double backhaul_capacity(const RadioConfig& radio, Point parent, Point child,
                         StationRole tx) {
  const double d = distance(parent, child);
  if (!(d > 0)) throw std::domain_error("backhaul: distance must be > 0");
  const double bw = radio.bandwidth_hz[static_cast<int>(LinkKind::kBackhaul)];
  if (bw <= 0) return 0.0;
  const double snr = reliable_snr_db(radio, d, tx);
  if (snr < -20.0) return 0.0;
  return bw * std::log2(1.0 + std::pow(10.0, snr / 10.0));
}

double demand_exceed_probability(double mean, double per_user_rate,
                                 double capacity) {
  if (mean <= 0.0) return 0.0;
  // K * R_u > C  <=>  K > C / R_u  <=>  K >= floor(C / R_u) + 1.
  const double c = std::floor(capacity / per_user_rate);
  if (c < 0) return 1.0;
  const auto log_term = [&](double k) {
    return -mean + k * std::log(mean) - std::lgamma(k + 1.0);
  };
  if (c < mean) {
    double cdf = 0.0;
    for (double k = 0; k <= c; k += 1.0) cdf += std::exp(log_term(k));
    return std::max(0.0, 1.0 - cdf);
  }
  // Upper tail summed directly; terms decay geometrically past the mode.
  double tail = 0.0;
  for (double k = c + 1.0;; k += 1.0) {
    const double t = std::exp(log_term(k));
    tail += t;
    if (t < 1e-18 * std::max(tail, 1e-300) || t == 0.0) break;
  }
  return std::min(1.0, tail);
}

int subarea_capacity_limit(const RadioConfig& radio, double capacity_bps,
                           double subarea_area, int max_subareas) {
  const double per_subarea = radio.user_density_per_m2 * subarea_area;
  auto ok = [&](int n) {
    return demand_exceed_probability(n * per_subarea, radio.per_user_rate_bps,
                                     capacity_bps) <= radio.backhaul_outage;
  };
  // Exceedance probability is nondecreasing in n; binary search the
  // largest feasible count.
  if (ok(max_subareas)) return max_subareas;
  int lo = 0;  // feasible: zero demand
  int hi = max_subareas;
  while (hi - lo > 1) {
    const int mid = lo + (hi - lo) / 2;
    if (ok(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

// ---------------------------------------------------------------------------

bool DerivedTables::link_usable(NodeRef parent, int child) const {
  if (parent.is_ban()) return cap_ban_sbs[parent.index][child] > 0.0;
  if (parent.is_sbs()) {
    return parent.index != child && cap_sbs_sbs[parent.index][child] > 0.0;
  }
  return false;
}

int DerivedTables::link_limit(NodeRef parent, int child) const {
  if (parent.is_ban()) return n_ban_sbs[parent.index][child];
  if (parent.is_sbs()) return n_sbs_sbs[parent.index][child];
  return 0;
}

bool DerivedTables::sbs_reaches(int i, int s) const {
  return sbs_subarea_dist[i][s] <= sbs_radius;
}

bool DerivedTables::ban_reaches(int k, int s) const {
  return ban_subarea_dist[k][s] <= ban_radius;
}

DerivedTables derive_tables(const Scenario& sc) {
  sc.validate();
  const RadioConfig& radio = sc.radio;
  DerivedTables t;
  const int S = sc.num_subareas();
  t.num_subareas = S;
  const double diag = std::hypot(sc.width, sc.height);
  t.ban_radius = coverage_radius(radio, LinkKind::kAccess, StationRole::kBan,
                                 diag);
  t.sbs_radius = coverage_radius(radio, LinkKind::kAccess, StationRole::kSbs,
                                 diag);
  t.ma_range = radio.ma_range_m;
  t.machine_limit = radio.machine_limit;

  std::vector<Point> centers(S);
  for (int s = 0; s < S; ++s) centers[s] = sc.subarea_center(s);

  auto dist_rows = [&](const std::vector<Site>& sites) {
    std::vector<std::vector<double>> rows(sites.size(),
                                          std::vector<double>(S));
    for (std::size_t i = 0; i < sites.size(); ++i) {
      for (int s = 0; s < S; ++s) rows[i][s] = distance(sites[i].pos, centers[s]);
    }
    return rows;
  };
  t.ban_subarea_dist = dist_rows(sc.ban_sites);
  t.sbs_subarea_dist = dist_rows(sc.sbs_sites);
  for (const auto& row : t.ban_subarea_dist) {
    t.ban_reach.push_back(sorted_within(row, t.ban_radius));
  }
  for (const auto& row : t.sbs_subarea_dist) {
    t.sbs_reach.push_back(sorted_within(row, t.sbs_radius));
  }

  const int M = sc.num_machines();
  t.ma_machine_dist.assign(sc.num_mas(), std::vector<double>(M));
  for (int j = 0; j < sc.num_mas(); ++j) {
    for (int m = 0; m < M; ++m) {
      t.ma_machine_dist[j][m] = distance(sc.ma_sites[j].pos, sc.machines[m].pos);
    }
    t.ma_reach.push_back(sorted_within(t.ma_machine_dist[j], t.ma_range));
  }

  const double cell_area = sc.subarea_side * sc.subarea_side;
  // Co-located sites would make the link distance zero; treat them as 1 mm.
  auto capacity = [&](Point a, Point b, StationRole tx) {
    if (distance(a, b) <= 0.0) b.x += 1e-3;
    return backhaul_capacity(radio, a, b, tx);
  };
  const int F1 = sc.num_bans();
  const int F2 = sc.num_sbss();
  const int F3 = sc.num_mas();
  t.cap_ban_sbs.assign(F1, std::vector<double>(F2, 0.0));
  t.n_ban_sbs.assign(F1, std::vector<int>(F2, 0));
  for (int k = 0; k < F1; ++k) {
    for (int i = 0; i < F2; ++i) {
      const double c = capacity(sc.ban_sites[k].pos, sc.sbs_sites[i].pos,
                                StationRole::kBan);
      t.cap_ban_sbs[k][i] = c;
      t.n_ban_sbs[k][i] = subarea_capacity_limit(radio, c, cell_area, S);
    }
  }
  t.cap_sbs_sbs.assign(F2, std::vector<double>(F2, 0.0));
  t.n_sbs_sbs.assign(F2, std::vector<int>(F2, 0));
  for (int p = 0; p < F2; ++p) {
    for (int i = 0; i < F2; ++i) {
      if (p == i) continue;
      const double c = capacity(sc.sbs_sites[p].pos, sc.sbs_sites[i].pos,
                                StationRole::kSbs);
      t.cap_sbs_sbs[p][i] = c;
      t.n_sbs_sbs[p][i] = subarea_capacity_limit(radio, c, cell_area, S);
    }
  }
  t.cap_ban_ma.assign(F1, std::vector<double>(F3, 0.0));
  for (int k = 0; k < F1; ++k) {
    for (int j = 0; j < F3; ++j) {
      t.cap_ban_ma[k][j] =
          capacity(sc.ma_sites[j].pos, sc.ban_sites[k].pos, StationRole::kMa);
    }
  }
  return t;
}

}  // namespace bhplan
