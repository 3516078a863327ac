#include "natdist/rankstats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace natdist {

namespace {

bool has_ties(std::span<const double> ranks) {
  std::vector<double> sorted(ranks.begin(), ranks.end());
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

std::uint64_t factorial(int m) {
  std::uint64_t f = 1;
  for (int i = 2; i <= m; ++i) f *= static_cast<std::uint64_t>(i);
  return f;
}

// rho of a permutation against the identity ranking, from the integer sum of
// squared rank differences.
double rho_from_s(std::uint64_t s, int m) {
  const double denom = static_cast<double>(m) * (static_cast<double>(m) * m - 1.0);
  return 1.0 - 6.0 * static_cast<double>(s) / denom;
}

bool at_least_as_extreme(double rho_perm, double observed, Tail tail) {
  if (tail == Tail::OneSided) return rho_perm >= observed - kRhoTolerance;
  return std::abs(rho_perm) >= std::abs(observed) - kRhoTolerance;
}

std::uint64_t count_extreme_exact(double observed, int m, Tail tail) {
  std::vector<int> perm(static_cast<std::size_t>(m));
  std::iota(perm.begin(), perm.end(), 1);
  std::uint64_t extreme = 0;
  do {
    std::uint64_t s = 0;
    for (int i = 0; i < m; ++i) {
      const std::int64_t d = static_cast<std::int64_t>(i + 1) - perm[static_cast<std::size_t>(i)];
      s += static_cast<std::uint64_t>(d * d);
    }
    if (at_least_as_extreme(rho_from_s(s, m), observed, tail)) ++extreme;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return extreme;
}

// Monte-Carlo permutations are drawn in fixed-size batches, each from its
// own (seed, batch) substream, so the count is independent of how batches
// would be scheduled across workers.
constexpr std::uint64_t kMcBatchSize = 512;

std::uint64_t count_extreme_monte_carlo(double observed, int m, Tail tail, std::uint64_t seed) {
  std::uint64_t extreme = 0;
  std::uint64_t remaining = kMonteCarloSamples;
  for (std::uint64_t batch = 0; remaining > 0; ++batch) {
    const std::uint64_t in_batch = std::min(kMcBatchSize, remaining);
    remaining -= in_batch;
    Rng rng = Rng::substream(seed, kStreamMonteCarlo, batch);
    std::vector<int> perm(static_cast<std::size_t>(m));
    for (std::uint64_t draw = 0; draw < in_batch; ++draw) {
      std::iota(perm.begin(), perm.end(), 1);
      rng.shuffle(perm);
      std::uint64_t s = 0;
      for (int i = 0; i < m; ++i) {
        const std::int64_t d =
            static_cast<std::int64_t>(i + 1) - perm[static_cast<std::size_t>(i)];
        s += static_cast<std::uint64_t>(d * d);
      }
      if (at_least_as_extreme(rho_from_s(s, m), observed, tail)) ++extreme;
    }
  }
  return extreme;
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ConfigError("pearson requires equal-length inputs");
  const std::size_t m = x.size();
  if (m < 2) throw ConfigError("pearson requires at least 2 pairs");
  double mean_x = 0, mean_y = 0;
  for (std::size_t i = 0; i < m; ++i) {
    mean_x += x[i];
    mean_y += y[i];
  }
  mean_x /= static_cast<double>(m);
  mean_y /= static_cast<double>(m);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = x[i] - mean_x;
    const double dy = y[i] - mean_y;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) {
    throw UndefinedCorrelationError("correlation undefined: zero variance input");
  }
  return sxy / std::sqrt(sxx * syy);
}

double spearman(std::span<const double> x_ranks, std::span<const double> y_ranks) {
  if (x_ranks.size() != y_ranks.size()) throw ConfigError("spearman requires aligned inputs");
  const std::size_t m = x_ranks.size();
  if (m < 2) throw ConfigError("spearman requires at least 2 pairs");
  if (has_ties(x_ranks) || has_ties(y_ranks)) {
    return pearson(x_ranks, y_ranks);  // throws if all ranks are tied
  }
  double s = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double d = x_ranks[i] - y_ranks[i];
    s += d * d;
  }
  const double md = static_cast<double>(m);
  return 1.0 - 6.0 * s / (md * (md * md - 1.0));
}

double spearman(const RankVector& x, const RankVector& y) {
  if (x.labels != y.labels) throw ConfigError("spearman inputs are not aligned by label");
  return spearman(std::span<const double>(x.ranks), std::span<const double>(y.ranks));
}

std::string to_string(Tail t) { return t == Tail::OneSided ? "one-sided" : "two-sided"; }

std::string to_string(PermMethod m) {
  switch (m) {
    case PermMethod::Auto:
      return "auto";
    case PermMethod::Exact:
      return "exact-permutation";
    case PermMethod::MonteCarlo:
      return "monte-carlo";
  }
  return "?";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::NotSignificant:
      return "not-significant";
    case Verdict::Significant:
      return "significant";
    case Verdict::HighlySignificant:
      return "highly-significant";
  }
  return "?";
}

Verdict classify(double p) {
  if (p < 0 || p > 1) throw ConfigError("p-value outside [0, 1]");
  if (p <= 0.01) return Verdict::HighlySignificant;
  if (p <= 0.05) return Verdict::Significant;
  return Verdict::NotSignificant;
}

SignificanceResult significance(double observed_rho, int m, PermMethod mode, Tail tail,
                                std::uint64_t seed) {
  if (m < 2) throw ConfigError("significance requires at least 2 rank pairs");
  PermMethod resolved = mode;
  if (mode == PermMethod::Auto) {
    resolved = (m < 9) ? PermMethod::Exact : PermMethod::MonteCarlo;
  }
  SignificanceResult result;
  result.method = resolved;
  result.tail = tail;
  if (resolved == PermMethod::Exact) {
    if (m > kMaxExactPermutationM) {
      throw CapacityError("exact permutation test over " + std::to_string(m) +
                          "! orderings exceeds the enumeration cap (m <= " +
                          std::to_string(kMaxExactPermutationM) + ")");
    }
    result.samples = factorial(m);
    result.extreme = count_extreme_exact(observed_rho, m, tail);
    result.p_value = static_cast<double>(result.extreme) / static_cast<double>(result.samples);
  } else {
    result.samples = kMonteCarloSamples;
    result.extreme = count_extreme_monte_carlo(observed_rho, m, tail, seed);
    result.p_value = (static_cast<double>(result.extreme) + 1.0) /
                     (static_cast<double>(result.samples) + 1.0);
  }
  result.verdict = classify(result.p_value);
  return result;
}

double min_attainable_p(int m, PermMethod mode, Tail tail) {
  if (m < 2) throw ConfigError("significance requires at least 2 rank pairs");
  PermMethod resolved = mode;
  if (mode == PermMethod::Auto) {
    resolved = (m < 9) ? PermMethod::Exact : PermMethod::MonteCarlo;
  }
  if (resolved == PermMethod::Exact) {
    if (m > kMaxExactPermutationM) {
      throw CapacityError("exact permutation test capped at m <= " +
                          std::to_string(kMaxExactPermutationM));
    }
    // rho = 1 is matched by the identity alone one-sided, and by the
    // identity plus the full reversal two-sided.
    return (tail == Tail::OneSided ? 1.0 : 2.0) / static_cast<double>(factorial(m));
  }
  return 1.0 / (static_cast<double>(kMonteCarloSamples) + 1.0);
}

std::vector<SignificanceTableRow> significance_table(int m, Tail tail, PermMethod mode,
                                                     std::uint64_t seed, double grid_step) {
  if (m < 2) throw ConfigError("significance tables require m >= 2");
  PermMethod resolved = mode;
  if (mode == PermMethod::Auto) {
    resolved = (m <= kMaxExactPermutationM) ? PermMethod::Exact : PermMethod::MonteCarlo;
  }
  std::vector<SignificanceTableRow> rows;
  if (resolved == PermMethod::Exact) {
    if (m > kMaxExactPermutationM) {
      throw CapacityError("exact table capped at m <= " + std::to_string(kMaxExactPermutationM));
    }
    // Bucket the m! permutations by their integer sum of squared rank
    // differences; every attainable rho appears once.
    const std::uint64_t s_max =
        static_cast<std::uint64_t>(m) * (static_cast<std::uint64_t>(m) * m - 1) / 3;
    std::vector<std::uint64_t> buckets(static_cast<std::size_t>(s_max) + 1, 0);
    std::vector<int> perm(static_cast<std::size_t>(m));
    std::iota(perm.begin(), perm.end(), 1);
    do {
      std::uint64_t s = 0;
      for (int i = 0; i < m; ++i) {
        const std::int64_t d =
            static_cast<std::int64_t>(i + 1) - perm[static_cast<std::size_t>(i)];
        s += static_cast<std::uint64_t>(d * d);
      }
      ++buckets[static_cast<std::size_t>(s)];
    } while (std::next_permutation(perm.begin(), perm.end()));
    const double total = static_cast<double>(factorial(m));
    for (std::uint64_t s = 0; s <= s_max; ++s) {
      if (buckets[static_cast<std::size_t>(s)] == 0) continue;
      const double rho = rho_from_s(s, m);
      std::uint64_t extreme = 0;
      for (std::uint64_t s2 = 0; s2 <= s_max; ++s2) {
        if (buckets[static_cast<std::size_t>(s2)] == 0) continue;
        if (at_least_as_extreme(rho_from_s(s2, m), rho, tail)) {
          extreme += buckets[static_cast<std::size_t>(s2)];
        }
      }
      rows.push_back({m, rho, static_cast<double>(extreme) / total});
    }
  } else {
    if (grid_step <= 0 || grid_step > 2) throw ConfigError("grid step must be in (0, 2]");
    // The same seed for every row keeps the sweep monotone in rho.
    for (double rho = 1.0; rho >= -1.0 - 1e-9; rho -= grid_step) {
      const double clamped = std::max(rho, -1.0);
      rows.push_back({m, clamped, significance(clamped, m, resolved, tail, seed).p_value});
    }
  }
  return rows;
}

}  // namespace natdist
