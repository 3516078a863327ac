#pragma once

// Rank-correlation statistics and permutation significance testing.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "natdist/errors.hpp"
#include "natdist/rng.hpp"

namespace natdist {

// Ranks aligned by label; ranks of m items sum to m(m+1)/2.
struct RankVector {
  std::vector<double> ranks;
  std::vector<std::string> labels;
};

// Spearman's rho. Tie-free inputs use 1 - 6*sum(d^2)/(m(m^2-1)); inputs with
// ties fall back to the Pearson correlation of the rank values. The two
// paths agree to 1e-12 when both apply.
double spearman(std::span<const double> x_ranks, std::span<const double> y_ranks);

// Label-aligned variant; throws ConfigError when the labels do not match.
double spearman(const RankVector& x, const RankVector& y);

// Product-moment correlation of raw values. Throws
// UndefinedCorrelationError on zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

enum class Tail { OneSided, TwoSided };
enum class PermMethod { Auto, Exact, MonteCarlo };
enum class Verdict { NotSignificant, Significant, HighlySignificant };

std::string to_string(Tail t);
std::string to_string(PermMethod m);
std::string to_string(Verdict v);

// p <= 0.01: highly significant; p <= 0.05: significant; else not.
Verdict classify(double p);

// Exact enumeration is capped here; forcing it beyond raises CapacityError.
inline constexpr int kMaxExactPermutationM = 11;
// Monte-Carlo sample size.
inline constexpr std::uint64_t kMonteCarloSamples = 10000;
// Permutations whose rho is within this tolerance of the observed rho count
// as "at least as extreme" (absorbs float noise in tied observations).
inline constexpr double kRhoTolerance = 1e-12;

struct SignificanceResult {
  double p_value = 1;
  PermMethod method = PermMethod::Exact;  // resolved method, never Auto
  Tail tail = Tail::OneSided;
  std::uint64_t samples = 0;  // m! for exact, sample count for Monte-Carlo
  std::uint64_t extreme = 0;  // arrangements at least as extreme as observed
  Verdict verdict = Verdict::NotSignificant;
};

// Permutation test of an observed rho among m rank pairs against the
// tie-free null (all m! orderings equally likely). Auto picks exact
// enumeration for m < 9 and Monte-Carlo sampling (batched substreams of
// `seed`, add-one corrected p = (c+1)/(N+1)) for m >= 9.
SignificanceResult significance(double observed_rho, int m, PermMethod mode, Tail tail,
                                std::uint64_t seed);

// Smallest p the test could report for the given setup (the p of a perfect
// correlation); rows that cannot clear a threshold are statistically
// under-powered rather than discordant.
double min_attainable_p(int m, PermMethod mode, Tail tail);

struct SignificanceTableRow {
  int m = 0;
  double rho = 0;
  double p = 0;
};

// p-value lookup table for one m. Exact tables list every attainable rho in
// descending order; Monte-Carlo tables (m > kMaxExactPermutationM or forced)
// sweep rho over a grid with the same seed per row, keeping the table
// monotone.
std::vector<SignificanceTableRow> significance_table(int m, Tail tail, PermMethod mode,
                                                     std::uint64_t seed,
                                                     double grid_step = 0.05);

}  // namespace natdist
