// natdist: exhaustive small-rule-space simulation, output frequency
// distributions, symmetry reduction, and rank-correlation reports.

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "natdist/commands.hpp"
#include "natdist/version.hpp"

namespace {

using namespace natdist;

struct ModelFlags {
  std::string model = "tm";
  int symbols = 2;
  int states = 2;

  ModelSpec resolve() const {
    ModelSpec spec;
    if (model == "tm") {
      spec.kind = ModelKind::Tm;
      spec.symbols = symbols;
      spec.states = states;
    } else if (model == "eca") {
      spec.kind = ModelKind::Eca;
    } else {
      throw ConfigError("unknown model: " + model + " (expected tm or eca)");
    }
    return spec;
  }
};

void add_model_flags(CLI::App* cmd, ModelFlags& flags) {
  cmd->add_option("--model", flags.model, "Model: tm or eca")->default_val("tm");
  cmd->add_option("--symbols", flags.symbols, "Tape symbols (tm)")->default_val(2);
  cmd->add_option("--states", flags.states, "Head states (tm)")->default_val(2);
}

Tail parse_tail(const std::string& s) {
  if (s == "one-sided") return Tail::OneSided;
  if (s == "two-sided") return Tail::TwoSided;
  throw ConfigError("unknown tail: " + s);
}

PermMethod parse_method(const std::string& s) {
  if (s == "auto") return PermMethod::Auto;
  if (s == "exact") return PermMethod::Exact;
  if (s == "monte-carlo") return PermMethod::MonteCarlo;
  throw ConfigError("unknown method: " + s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(kToolName) + " " + kToolVersion +
               ": output frequency distributions of small machines"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI/TOML config file");
  // Subcommand sections in config files ([distribution] etc.) apply only to
  // subcommands marked configurable.

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "Count or print rules of a model space")->configurable();
  ModelFlags enum_model;
  add_model_flags(enumerate, enum_model);
  bool enum_count = false;
  std::uint64_t enum_index = 0;
  auto* enum_count_flag = enumerate->add_flag("--count", enum_count, "Print the space size");
  auto* enum_index_opt =
      enumerate->add_option("--index", enum_index, "Print the rule table at this index");
  enum_index_opt->excludes(enum_count_flag);

  // distribution
  auto* distribution =
      app.add_subcommand("distribution", "Run experiments and write distribution files")->configurable();
  ModelFlags dist_model;
  add_model_flags(distribution, dist_model);
  int dist_n = 0, dist_n_min = 0, dist_n_max = 0;
  distribution->add_option("--n", dist_n, "Single string length");
  distribution->add_option("--n-min", dist_n_min, "First string length of a sequence");
  distribution->add_option("--n-max", dist_n_max, "Last string length of a sequence");
  std::uint64_t dist_steps = 0;
  distribution->add_option("--steps", dist_steps, "Run budget t (default 10*n)");
  std::string dist_sample = "all";
  distribution->add_option("--sample-size", dist_sample, "Rule sample size or 'all'")
      ->default_val("all");
  bool dist_schedule = false;
  distribution->add_flag("--replication-schedule", dist_schedule,
                         "Replication sample schedule (341*n / 21*n)");
  std::string dist_extraction = "all-substrings";
  distribution
      ->add_option("--extraction", dist_extraction,
                   "all-substrings | exact-length | center-window | prefix")
      ->default_val("all-substrings");
  std::string dist_stop;
  distribution->add_option("--stop-rule", dist_stop,
                           "fixed-steps | uniform-random-stop (default per model)");
  std::string dist_initial = "both";
  distribution->add_option("--initial", dist_initial, "both | background-0 | background-1")
      ->default_val("both");
  std::uint64_t dist_seed = kDefaultSeed;
  distribution->add_option("--seed", dist_seed, "RNG seed")->default_val(kDefaultSeed);
  int dist_workers = 1;
  distribution->add_option("--workers", dist_workers, "Worker threads (never changes output)")
      ->default_val(1);
  std::string dist_out;
  distribution->add_option("--out-dir", dist_out, "Output directory")->required();

  // compare
  auto* compare = app.add_subcommand("compare", "Rank-correlation report between two sequences")->configurable();
  std::string cmp_a, cmp_b, cmp_report, cmp_plots, cmp_convergence;
  compare->add_option("--a", cmp_a, "Sequence directory or reduced file")->required();
  compare->add_option("--b", cmp_b, "Sequence directory or reduced file")->required();
  compare->add_option("--report", cmp_report, "Report CSV path")->required();
  compare->add_option("--plot-dir", cmp_plots, "Per-n matched-weight plot data directory");
  compare->add_option("--convergence", cmp_convergence,
                      "Also write the convergence profile of sequence a");
  std::string cmp_tail = "one-sided";
  compare->add_option("--tail", cmp_tail, "one-sided | two-sided")->default_val("one-sided");
  std::uint64_t cmp_seed = kDefaultSeed;
  compare->add_option("--seed", cmp_seed, "RNG seed for significance rows")
      ->default_val(kDefaultSeed);

  // naturalness
  auto* naturalness =
      app.add_subcommand("naturalness", "Order-preservation test against a reference sequence")->configurable();
  std::string nat_candidate, nat_reference, nat_evidence;
  naturalness->add_option("--candidate", nat_candidate, "Candidate sequence dir")->required();
  naturalness->add_option("--reference", nat_reference, "Reference sequence dir")->required();
  naturalness->add_option("--evidence", nat_evidence, "Per-n evidence CSV path");
  double nat_c = 0.01;
  naturalness->add_option("--c", nat_c, "Significance threshold")->default_val(0.01);
  double nat_floor = 0;
  naturalness->add_option("--weight-floor", nat_floor,
                          "Compare only classes above this weight in both sequences")
      ->default_val(0.0);
  std::string nat_tail = "one-sided";
  naturalness->add_option("--tail", nat_tail, "one-sided | two-sided")->default_val("one-sided");
  std::uint64_t nat_seed = kDefaultSeed;
  naturalness->add_option("--seed", nat_seed, "RNG seed")->default_val(kDefaultSeed);

  // significance-table
  auto* tables = app.add_subcommand("significance-table", "Emit p-value lookup tables as CSV")->configurable();
  int tab_m_min = 2, tab_m_max = 8;
  tables->add_option("--m-min", tab_m_min, "Smallest m")->default_val(2);
  tables->add_option("--m-max", tab_m_max, "Largest m")->default_val(8);
  std::string tab_tail = "one-sided";
  tables->add_option("--tail", tab_tail, "one-sided | two-sided")->default_val("one-sided");
  std::string tab_method = "auto";
  tables->add_option("--method", tab_method, "auto | exact | monte-carlo")->default_val("auto");
  double tab_grid = 0.05;
  tables->add_option("--grid-step", tab_grid, "rho grid step for Monte-Carlo tables")
      ->default_val(0.05);
  std::uint64_t tab_seed = kDefaultSeed;
  tables->add_option("--seed", tab_seed, "RNG seed (Monte-Carlo tables)")
      ->default_val(kDefaultSeed);
  std::string tab_out;
  tables->add_option("--out", tab_out, "Output CSV path")->required();

  try {
    app.parse(argc, argv);

    if (enumerate->parsed()) {
      cli::EnumerateOptions options;
      options.model = enum_model.resolve();
      options.count_only = enum_count;
      if (enum_index_opt->count() > 0) options.index = enum_index;
      cli::run_enumerate(options, std::cout);
    } else if (distribution->parsed()) {
      cli::DistributionOptions options;
      options.model = dist_model.resolve();
      if (dist_n > 0 && (dist_n_min > 0 || dist_n_max > 0)) {
        throw ConfigError("use either --n or --n-min/--n-max");
      }
      options.n_min = dist_n > 0 ? dist_n : dist_n_min;
      options.n_max = dist_n > 0 ? dist_n : dist_n_max;
      if (dist_steps > 0) options.sequence.steps = dist_steps;
      if (dist_sample != "all") {
        try {
          options.sequence.sample_size = std::stoull(dist_sample);
        } catch (const std::exception&) {
          throw ConfigError("--sample-size expects a count or 'all', got '" + dist_sample + "'");
        }
      }
      options.sequence.extraction = extraction_from_string(dist_extraction);
      if (!dist_stop.empty()) options.sequence.stop_rule = stop_rule_from_string(dist_stop);
      options.sequence.initial = initial_from_string(dist_initial);
      options.sequence.seed = dist_seed;
      options.replication_schedule = dist_schedule;
      options.workers = dist_workers;
      options.out_dir = dist_out;
      cli::run_distribution(options, std::cout);
    } else if (compare->parsed()) {
      cli::CompareOptions options;
      options.a = cmp_a;
      options.b = cmp_b;
      options.report_path = cmp_report;
      if (!cmp_plots.empty()) options.plot_dir = cmp_plots;
      if (!cmp_convergence.empty()) options.convergence_path = cmp_convergence;
      options.tail = parse_tail(cmp_tail);
      options.seed = cmp_seed;
      cli::run_compare(options, std::cout);
    } else if (naturalness->parsed()) {
      cli::NaturalnessOptions options;
      options.candidate = nat_candidate;
      options.reference = nat_reference;
      if (!nat_evidence.empty()) options.evidence_path = nat_evidence;
      options.c = nat_c;
      options.weight_floor = nat_floor;
      options.tail = parse_tail(nat_tail);
      options.seed = nat_seed;
      cli::run_naturalness(options, std::cout);
    } else if (tables->parsed()) {
      cli::SignificanceTableOptions options;
      options.m_min = tab_m_min;
      options.m_max = tab_m_max;
      options.tail = parse_tail(tab_tail);
      options.method = parse_method(tab_method);
      options.seed = tab_seed;
      options.grid_step = tab_grid;
      options.out_path = tab_out;
      cli::run_significance_table(options, std::cout);
    }
    return cli::kExitOk;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitUsage;
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitCapacity;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitIo;
  } catch (const EmptySampleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kExitUsage;
  }
}
