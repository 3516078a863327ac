#pragma once

// Persistence: versioned JSON distribution files (bit-exact round trip) and
// the CSV report formats. All writes are atomic (temp file + rename).

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "natdist/analysis.hpp"
#include "natdist/sampling.hpp"
#include "natdist/symmetry.hpp"

namespace natdist {

// Shortest round-trip decimal representation (std::to_chars).
std::string format_double(double v);

std::string to_string(ExtractionMode m);
std::string to_string(StopRule r);
std::string to_string(InitialConditions i);
ExtractionMode extraction_from_string(std::string_view s);
StopRule stop_rule_from_string(std::string_view s);
InitialConditions initial_from_string(std::string_view s);

void atomic_write_text(const std::filesystem::path& path, std::string_view content);
std::string read_text(const std::filesystem::path& path);

std::string distribution_to_json(const Distribution& d);
Distribution distribution_from_json(std::string_view text);
std::string reduced_to_json(const ReducedDistribution& d);
ReducedDistribution reduced_from_json(std::string_view text);

void save_distribution(const std::filesystem::path& path, const Distribution& d);
Distribution load_distribution(const std::filesystem::path& path);
void save_reduced(const std::filesystem::path& path, const ReducedDistribution& d);
ReducedDistribution load_reduced(const std::filesystem::path& path);

// CSV emission. Leading '#' lines carry the run metadata; the column row
// follows. Columns:
//   report:      n,elements,spearman,p_value,tail,method,verdict,pearson
//   convergence: n,order_distance,value_distance
//   naturalness: n,elements,spearman,p_value,preserved_fraction,comparable,
//                under_powered,passes
//   plot data:   class,weight_a,weight_b,rank_a,rank_b
//   tables:      m,tail,method,rho,p_value
std::string report_to_csv(const CorrelationReport& report);
std::string convergence_to_csv(const std::vector<ConvergenceStep>& order_profile,
                               const std::vector<ConvergenceStep>& value_profile);
std::string naturalness_to_csv(const NaturalnessReport& report);
std::string plot_data_to_csv(const ReducedDistribution& a, const ReducedDistribution& b);
std::string significance_table_to_csv(const std::vector<SignificanceTableRow>& rows, Tail tail,
                                      PermMethod method, std::uint64_t seed);

}  // namespace natdist
