#pragma once

// Experiment runner: sweep a rule space, extract fixed-length strings from
// the raw outputs, and build normalized frequency distributions.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "natdist/errors.hpp"
#include "natdist/rng.hpp"
#include "natdist/rulespace.hpp"

namespace natdist {

enum class ModelKind { Tm, Eca };

struct ModelSpec {
  ModelKind kind = ModelKind::Tm;
  int symbols = 2;  // TM only
  int states = 2;   // TM only

  bool operator==(const ModelSpec&) const = default;
};

std::uint64_t model_space_size(const ModelSpec& model);
std::string model_name(const ModelSpec& model);  // "tm(2,2)", "eca"

enum class ExtractionMode { AllSubstrings, ExactLength, CenterWindow, Prefix };

enum class StopRule { FixedSteps, UniformRandomStop };

// Which of the two initial conditions to run. `Both` is the experiment
// protocol; the single-background variants exist for diagnostics such as the
// background-symmetry check.
enum class InitialConditions { Both, BackgroundZero, BackgroundOne };

struct ExperimentSpec {
  ModelSpec model;
  int n = 0;                                  // target string length
  std::uint64_t steps = 0;                    // run budget t (default 10n)
  std::optional<std::uint64_t> sample_size;   // nullopt = whole rule space
  ExtractionMode extraction = ExtractionMode::AllSubstrings;
  StopRule stop_rule = StopRule::FixedSteps;
  InitialConditions initial = InitialConditions::Both;
  std::uint64_t seed = kDefaultSeed;

  bool operator==(const ExperimentSpec&) const = default;
};

// The experiment defaults: steps = 10n, every rule, all-substrings
// extraction; TMs stop at exactly t steps, CAs at a seeded uniformly random
// step in [n, t].
ExperimentSpec default_spec(const ModelSpec& model, int n, std::uint64_t seed = kDefaultSeed);

std::uint64_t default_steps(int n);

// Throws ConfigError on violated preconditions (n < 1, steps < n,
// sample_size > space, bad model dimensions).
void validate_spec(const ExperimentSpec& spec);

// Multiset of extracted strings. An ordered map keeps every downstream
// traversal deterministic.
using Counts = std::map<std::string, std::uint64_t>;

// Appends the length-n strings extracted from one raw output.
void extract_strings(Counts& counts, std::string_view output, int n, ExtractionMode mode);

// Runs the experiment over the (sampled) rule space. Each sampled rule runs
// once per initial condition; stop steps for random-stop runs come from the
// per-rule substream (seed, kStreamStopSteps, rule index), so the result is
// independent of worker count and execution order. An empty result (no rule
// produced a length-n string) is returned as an empty multiset.
Counts sample_outputs(const ExperimentSpec& spec, int workers = 1);

// Pointwise sum; associative and commutative. Throws ConfigError when the
// parts mix string lengths.
Counts merge_counts(std::span<const Counts> parts);

// Sorted rule indices the experiment will run (whole space, or a seeded
// uniform without-replacement sample).
std::vector<std::uint64_t> sampled_indices(const ExperimentSpec& spec);

// Normalized frequency map over length-n strings. Probabilities are counts
// over the total; zero-count strings are absent.
struct Distribution {
  int n = 0;
  std::map<std::string, double> p;
  std::map<std::string, std::uint64_t> counts;
  std::uint64_t total = 0;
  std::optional<ExperimentSpec> spec;  // provenance when built by the pipeline
};

// Throws EmptySampleError on an empty multiset, ConfigError on mixed lengths.
Distribution build_distribution(const Counts& counts, int n);

// sample_outputs + build_distribution + provenance attached.
Distribution experiment_distribution(const ExperimentSpec& spec, int workers = 1);

// A labeled value with its fractional rank (1 = largest value; ties share
// the mean of the positions they span).
struct Ranked {
  std::string label;
  double value = 0;
  double rank = 0;
};

// Descending by value, ties presented in arithmetical label order.
std::vector<Ranked> rank_descending(std::vector<std::pair<std::string, double>> items);

std::vector<Ranked> rank_strings(const Distribution& d);

}  // namespace natdist
