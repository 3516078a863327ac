#include "natdist/symmetry.hpp"

#include <algorithm>

namespace natdist {

namespace {

void check_binary(std::string_view s) {
  if (s.empty()) throw ConfigError("transformation input must be nonempty");
  for (char c : s) {
    if (c != '0' && c != '1') throw ConfigError("transformation input must be binary");
  }
}

}  // namespace

std::string transform_sy(std::string_view s) {
  check_binary(s);
  return std::string(s.rbegin(), s.rend());
}

std::string transform_co(std::string_view s) {
  check_binary(s);
  std::string out(s);
  for (char& c : out) c = (c == '0') ? '1' : '0';
  return out;
}

std::string transform_syco(std::string_view s) { return transform_sy(transform_co(s)); }

std::string apply_transform(Transform t, std::string_view s) {
  switch (t) {
    case Transform::Id:
      check_binary(s);
      return std::string(s);
    case Transform::Sy:
      return transform_sy(s);
    case Transform::Co:
      return transform_co(s);
    case Transform::SyCo:
      return transform_syco(s);
  }
  throw ConfigError("unknown transformation");
}

std::vector<std::string> orbit(std::string_view s) {
  check_binary(s);
  std::vector<std::string> members{std::string(s), transform_sy(s), transform_co(s),
                                   transform_syco(s)};
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return members;
}

std::string canonical(std::string_view s) { return orbit(s).front(); }

std::uint64_t class_count(int n) {
  if (n < 1) throw ConfigError("class_count requires n >= 1");
  if (n > 62) throw CapacityError("class_count overflows 64-bit arithmetic for n > 62");
  const std::uint64_t id_fixed = 1ull << n;
  const std::uint64_t sy_fixed = 1ull << ((n + 1) / 2);
  const std::uint64_t syco_fixed = (n % 2 == 0) ? (1ull << (n / 2)) : 0;
  return (id_fixed + sy_fixed + syco_fixed) / 4;
}

const ReducedEntry* ReducedDistribution::find(std::string_view canonical_key) const {
  for (const ReducedEntry& e : entries) {
    if (e.canonical == canonical_key) return &e;
  }
  return nullptr;
}

std::vector<std::pair<std::string, double>> ReducedDistribution::weights() const {
  std::vector<std::pair<std::string, double>> out;
  out.reserve(entries.size());
  for (const ReducedEntry& e : entries) out.emplace_back(e.canonical, e.weight);
  return out;
}

ReducedDistribution reduce_distribution(const Distribution& d) {
  struct Group {
    double p_sum = 0;
    std::uint64_t count_sum = 0;
  };
  // Keys of d.p iterate in ascending order, so the per-class sums (and the
  // resulting doubles) are deterministic.
  std::map<std::string, Group> groups;
  for (const auto& [s, prob] : d.p) {
    Group& g = groups[canonical(s)];
    g.p_sum += prob;
    auto it = d.counts.find(s);
    if (it != d.counts.end()) g.count_sum += it->second;
  }

  ReducedDistribution r;
  r.n = d.n;
  r.total_count = d.total;
  r.spec = d.spec;
  r.entries.reserve(groups.size());
  for (const auto& [canon, g] : groups) {
    ReducedEntry e;
    e.canonical = canon;
    e.orbit_size = static_cast<int>(orbit(canon).size());
    e.count = g.count_sum;
    e.weight = g.p_sum / static_cast<double>(e.orbit_size);
    r.entries.push_back(std::move(e));
  }
  for (const ReducedEntry& e : r.entries) r.weight_total += e.weight;
  for (ReducedEntry& e : r.entries) e.p = e.weight / r.weight_total;
  std::sort(r.entries.begin(), r.entries.end(), [](const ReducedEntry& a, const ReducedEntry& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return a.canonical < b.canonical;
  });
  return r;
}

}  // namespace natdist
