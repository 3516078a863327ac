#pragma once

// Complexity-preserving transformations of binary strings, orbit computation,
// Burnside class counting, and reduction of a distribution to classes.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "natdist/sampling.hpp"

namespace natdist {

// The four transformations form a Klein four-group: each is an involution
// and Sy and Co commute.
enum class Transform { Id, Sy, Co, SyCo };

std::string transform_sy(std::string_view s);    // reversal
std::string transform_co(std::string_view s);    // complementation
std::string transform_syco(std::string_view s);  // reversal of the complement
std::string apply_transform(Transform t, std::string_view s);

// The orbit of s under the group, sorted ascending; size is always 2 or 4
// (complementation has no fixed point).
std::vector<std::string> orbit(std::string_view s);

// Arithmetically smallest member of orbit(s); idempotent.
std::string canonical(std::string_view s);

// Number of orbits of {0,1}^n under the group:
//   n even: (2^n + 2*2^(n/2)) / 4
//   n odd:  (2^n + 2^((n+1)/2)) / 4
// Fixed points per transformation: Id 2^n; Sy 2^ceil(n/2); Co none;
// SyCo 2^(n/2) for even n, none for odd n.
std::uint64_t class_count(int n);

// One complexity class in a reduced distribution. `weight` is the summed
// member probability divided by the orbit size (the per-member mean);
// `p` is the weight renormalized over the observed classes. Both induce the
// same ranking.
struct ReducedEntry {
  std::string canonical;
  int orbit_size = 0;
  std::uint64_t count = 0;  // summed raw counts of observed members
  double weight = 0;
  double p = 0;
};

struct ReducedDistribution {
  int n = 0;
  std::vector<ReducedEntry> entries;  // descending weight, then canonical ascending
  double weight_total = 0;
  std::uint64_t total_count = 0;
  std::optional<ExperimentSpec> spec;

  const ReducedEntry* find(std::string_view canonical_key) const;
  std::vector<std::pair<std::string, double>> weights() const;
};

// Classes with no observed member are omitted, matching the zero-omission
// convention of raw distributions.
ReducedDistribution reduce_distribution(const Distribution& d);

}  // namespace natdist
