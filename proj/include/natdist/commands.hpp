#pragma once

// Command implementations behind the CLI front end; the binary itself only
// parses flags and maps exceptions to exit codes.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "natdist/analysis.hpp"
#include "natdist/io.hpp"

namespace natdist::cli {

// Exit codes: 0 success, 1 usage/config, 2 I/O, 3 capacity.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitCapacity = 3;

struct EnumerateOptions {
  ModelSpec model;
  bool count_only = false;
  std::optional<std::uint64_t> index;
};

void run_enumerate(const EnumerateOptions& options, std::ostream& out);

struct DistributionOptions {
  ModelSpec model;
  int n_min = 0;
  int n_max = 0;  // 0: same as n_min
  SequenceOptions sequence;
  bool replication_schedule = false;  // sample sizes n*341 (TM(2,2)) / n*21 (ECA)
  int workers = 1;
  std::filesystem::path out_dir;
};

// Writes raw_nNN.json and reduced_nNN.json per n into out_dir.
void run_distribution(const DistributionOptions& options, std::ostream& log);

struct CompareOptions {
  std::filesystem::path a;
  std::filesystem::path b;
  Tail tail = Tail::OneSided;
  std::uint64_t seed = kDefaultSeed;
  std::filesystem::path report_path;
  std::optional<std::filesystem::path> plot_dir;
  std::optional<std::filesystem::path> convergence_path;  // profile of sequence a
};

void run_compare(const CompareOptions& options, std::ostream& log);

struct NaturalnessOptions {
  std::filesystem::path candidate;
  std::filesystem::path reference;
  double c = 0.01;
  double weight_floor = 0;
  Tail tail = Tail::OneSided;
  std::uint64_t seed = kDefaultSeed;
  std::optional<std::filesystem::path> evidence_path;
};

// Prints the verdict word; the verdict is data, so this succeeds for every
// outcome.
void run_naturalness(const NaturalnessOptions& options, std::ostream& out);

struct SignificanceTableOptions {
  int m_min = 2;
  int m_max = 8;
  Tail tail = Tail::OneSided;
  PermMethod method = PermMethod::Auto;
  std::uint64_t seed = kDefaultSeed;
  double grid_step = 0.05;
  std::filesystem::path out_path;
};

void run_significance_table(const SignificanceTableOptions& options, std::ostream& log);

// Loads reduced_n*.json files from a directory (or one reduced file).
DistributionSequence load_sequence(const std::filesystem::path& dir_or_file);

// Sample size of the historical replication schedule for length n, clamped
// to the rule space.
std::uint64_t replication_schedule_sample_size(const ModelSpec& model, int n);

}  // namespace natdist::cli
