#pragma once

// The top-level experiment: distribution sequences over n, cross-model rank
// comparison, order-preservation / naturalness verdicts, convergence
// profiles, and the frequency-based complexity estimate.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "natdist/rankstats.hpp"
#include "natdist/sampling.hpp"
#include "natdist/symmetry.hpp"

namespace natdist {

// Settings shared by every n of a sequence. Unset fields take the
// experiment defaults for the model and n.
struct SequenceOptions {
  std::optional<std::uint64_t> steps;       // default 10n
  std::optional<std::uint64_t> sample_size; // default: whole rule space
  std::optional<ExtractionMode> extraction; // default all-substrings
  std::optional<StopRule> stop_rule;        // default per model
  InitialConditions initial = InitialConditions::Both;
  std::uint64_t seed = kDefaultSeed;
};

ExperimentSpec make_spec(const ModelSpec& model, int n, const SequenceOptions& options);

struct DistributionSequence {
  std::string model_label;  // e.g. "tm(2,2)"
  std::optional<ModelSpec> model;
  std::map<int, ReducedDistribution> per_n;
};

struct ExperimentRun {
  Distribution raw;
  ReducedDistribution reduced;
};

ExperimentRun run_experiment(const ExperimentSpec& spec, int workers = 1);

// Reduced distributions for every n in [n_min, n_max].
DistributionSequence build_sequence(const ModelSpec& model, int n_min, int n_max,
                                    const SequenceOptions& options, int workers = 1);

// One per-n comparison row. `elements` is the size of the support
// intersection the ranks were computed over; rows whose intersection is too
// small (or degenerate) are flagged incomparable instead of failing.
struct ReportRow {
  int n = 0;
  int elements = 0;
  bool comparable = false;
  double spearman_rho = 0;
  SignificanceResult significance;
  double pearson_r = 0;
};

struct CorrelationReport {
  std::string label_a;
  std::string label_b;
  Tail tail = Tail::OneSided;
  std::uint64_t seed = kDefaultSeed;
  std::vector<ReportRow> rows;  // ascending n
};

// For each common n: ranks over the intersection of the two reduced
// supports, Spearman rho with auto-mode significance, and Pearson r on the
// aligned class weights. Throws ConfigError when the n ranges do not
// overlap.
CorrelationReport compare_models(const DistributionSequence& a, const DistributionSequence& b,
                                 Tail tail, std::uint64_t seed);

// Support intersection of two reduced distributions, optionally keeping only
// classes whose weight exceeds `floor` in both. Labels ascend
// arithmetically; wa/wb are the aligned weights.
struct SharedSupport {
  std::vector<std::string> labels;
  std::vector<double> wa;
  std::vector<double> wb;
};

SharedSupport intersect_support(const ReducedDistribution& a, const ReducedDistribution& b,
                                double floor = 0);

// Order-preservation verdict between two same-length reduced distributions:
// the Spearman significance over the shared support must clear c. An
// optional weight floor restricts the comparison to classes whose weight
// exceeds it in both distributions (the "first segment"); the default of 0
// compares the whole shared support, which is also what the cross-model
// tables use. `under_powered` marks supports so small that even a perfect
// correlation could not reach p <= c.
struct MonotonyVerdict {
  double c = 0.01;            // significance threshold
  double weight_floor = 0;
  bool comparable = false;
  bool under_powered = false;
  int elements = 0;
  double rho = 0;
  double p_value = 1;
  double preserved_fraction = 0;  // pairs whose relative order agrees
  bool verdict = false;           // comparable and p <= c
};

MonotonyVerdict order_preserving(const ReducedDistribution& d1, const ReducedDistribution& d2,
                                 double c, Tail tail = Tail::OneSided,
                                 std::uint64_t seed = kDefaultSeed, double weight_floor = 0);

enum class Naturalness { Natural, Quasi, NotNatural };

std::string to_string(Naturalness v);

struct NaturalnessReport {
  double c = 0.01;
  Tail tail = Tail::OneSided;
  std::uint64_t seed = kDefaultSeed;
  Naturalness verdict = Naturalness::NotNatural;
  std::vector<std::pair<int, MonotonyVerdict>> rows;  // ascending n
};

// Natural: every usable row (comparable, not under-powered) passes at c.
// Quasi: every usable row passes at the 0.05 significance level but not all
// at c. Not natural otherwise (including when no row is usable).
NaturalnessReport naturalness_test(const DistributionSequence& candidate,
                                   const DistributionSequence& reference, double c = 0.01,
                                   Tail tail = Tail::OneSided,
                                   std::uint64_t seed = kDefaultSeed, double weight_floor = 0);

enum class ConvergenceMode { Order, Values };

// One step of the convergence profile between consecutive sequence entries.
// Order distance is 1 - rho; value distance is the total variation between
// the renormalized shared supports. Evidence only, never a proof.
struct ConvergenceStep {
  int n_from = 0;
  int n_to = 0;
  bool comparable = false;
  int elements = 0;
  double distance = 0;
};

// Consecutive distributions over the same length compare directly on their
// shared support; a length-(n+1) entry is first projected onto length n by
// truncating the last character of each canonical and re-canonicalizing
// (aggregating weights). Anything else is a gap in the profile.
std::vector<ConvergenceStep> convergence_check(const DistributionSequence& seq,
                                               ConvergenceMode mode);

// Frequency-based complexity estimate -log2(probability), in bits, relative
// to the model's additive constant (reported as "+O(1)", never absolute).
// Absent strings yield no estimate: unobserved means unobserved, not
// infinitely complex. The reduced variant uses the class weight (the mean
// member frequency).
std::optional<double> estimate_k(const Distribution& d, std::string_view s);
std::optional<double> estimate_k(const ReducedDistribution& d, std::string_view s);

}  // namespace natdist
