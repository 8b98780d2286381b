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

#ifndef BHPLAN_COMMON_HPP_
#define BHPLAN_COMMON_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bhplan {

inline constexpr const char* kVersion = "0.3.0";

// Malformed or out-of-domain user input (schema errors, bad parameters).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Structural breakage inside a plan (cycles, dangling parents).
class IntegrityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Brute-force oracle refused an instance above its enumeration limits.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class NodeKind : std::uint8_t { kNone = 0, kBan = 1, kSbs = 2 };

// A backhaul tree node: either a BAN site or an SBS site.
struct NodeRef {
  NodeKind kind = NodeKind::kNone;
  int index = -1;

  static constexpr NodeRef Ban(int k) { return {NodeKind::kBan, k}; }
  static constexpr NodeRef Sbs(int i) { return {NodeKind::kSbs, i}; }
  constexpr bool valid() const { return kind != NodeKind::kNone; }
  constexpr bool is_ban() const { return kind == NodeKind::kBan; }
  constexpr bool is_sbs() const { return kind == NodeKind::kSbs; }
  friend constexpr bool operator==(NodeRef, NodeRef) = default;
};

// splitmix64-seeded xoshiro256** with platform-independent uniform helpers.
// std distributions are implementation defined, which breaks byte-identical
// scenario generation across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  // Uniform in [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n);
  // Standard normal via Box-Muller.
  double normal();
  // Poisson(mean) by inversion; fine for the small means used in tests.
  int poisson(double mean);

 private:
  std::uint64_t s_[4];
};

std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

}  // namespace bhplan

#endif  // BHPLAN_COMMON_HPP_
