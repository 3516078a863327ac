#include "natdist/commands.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "natdist/version.hpp"

namespace natdist::cli {

namespace {

std::string file_tag(int n) {
  std::ostringstream out;
  out << std::setw(2) << std::setfill('0') << n;
  return out.str();
}

void print_tm_table(const TmProgram& p, std::ostream& out) {
  out << "index " << p.index << " (tm " << p.symbols << "x" << p.states << ")\n";
  for (int state = 1; state <= p.states; ++state) {
    for (int scanned = 0; scanned < p.symbols; ++scanned) {
      const TmAction& a = p.action(state, static_cast<Symbol>(scanned));
      out << "state " << state << ", read " << scanned << " -> write "
          << static_cast<int>(a.write) << ", move " << (a.move == Move::Left ? 'L' : 'R')
          << ", state " << a.next_state << "\n";
    }
  }
}

void print_eca_table(const EcaRule& rule, std::ostream& out) {
  out << "rule " << static_cast<int>(rule.number) << "\n";
  for (int code = 7; code >= 0; --code) {
    out << ((code >> 2) & 1) << ((code >> 1) & 1) << (code & 1) << " -> "
        << static_cast<int>(rule.next_cell((code >> 2) & 1, (code >> 1) & 1, code & 1)) << "\n";
  }
}

}  // namespace

void run_enumerate(const EnumerateOptions& options, std::ostream& out) {
  const std::uint64_t space = model_space_size(options.model);
  if (options.count_only) {
    out << space << "\n";
    return;
  }
  if (!options.index) {
    throw ConfigError("enumerate needs either --count or --index");
  }
  if (*options.index >= space) {
    throw ConfigError("index " + std::to_string(*options.index) + " outside the rule space (" +
                      std::to_string(space) + ")");
  }
  if (options.model.kind == ModelKind::Tm) {
    print_tm_table(decode_tm(*options.index, options.model.symbols, options.model.states), out);
  } else {
    print_eca_table(EcaRule{static_cast<std::uint8_t>(*options.index)}, out);
  }
}

std::uint64_t replication_schedule_sample_size(const ModelSpec& model, int n) {
  if (model.kind == ModelKind::Tm) {
    if (model.symbols != 2 || model.states != 2) {
      throw ConfigError("the replication schedule is defined for tm(2,2) only");
    }
    return std::min<std::uint64_t>(static_cast<std::uint64_t>(n) * 341,
                                   model_space_size(model));
  }
  return std::min<std::uint64_t>(static_cast<std::uint64_t>(n) * 21, model_space_size(model));
}

void run_distribution(const DistributionOptions& options, std::ostream& log) {
  const int n_min = options.n_min;
  const int n_max = options.n_max == 0 ? n_min : options.n_max;
  if (n_min < 1 || n_max < n_min) throw ConfigError("need 1 <= n-min <= n-max");
  if (options.out_dir.empty()) throw ConfigError("an output directory is required");

  std::error_code ec;
  std::filesystem::create_directories(options.out_dir, ec);
  if (ec) throw IoError("cannot create " + options.out_dir.string());

  for (int n = n_min; n <= n_max; ++n) {
    SequenceOptions seq = options.sequence;
    if (options.replication_schedule) {
      seq.sample_size = replication_schedule_sample_size(options.model, n);
    }
    const ExperimentSpec spec = make_spec(options.model, n, seq);
    const ExperimentRun run = run_experiment(spec, options.workers);
    const auto raw_path = options.out_dir / ("raw_n" + file_tag(n) + ".json");
    const auto reduced_path = options.out_dir / ("reduced_n" + file_tag(n) + ".json");
    save_distribution(raw_path, run.raw);
    save_reduced(reduced_path, run.reduced);
    log << model_name(options.model) << " n=" << n << ": " << run.raw.p.size() << " strings, "
        << run.reduced.entries.size() << " classes -> " << reduced_path.string() << "\n";
  }
}

DistributionSequence load_sequence(const std::filesystem::path& dir_or_file) {
  DistributionSequence seq;
  std::vector<std::filesystem::path> files;
  if (std::filesystem::is_directory(dir_or_file)) {
    for (const auto& entry : std::filesystem::directory_iterator(dir_or_file)) {
      const std::string name = entry.path().filename().string();
      if (name.starts_with("reduced_n") && name.ends_with(".json")) {
        files.push_back(entry.path());
      }
    }
    if (files.empty()) {
      throw IoError("no reduced_n*.json files in " + dir_or_file.string());
    }
    std::sort(files.begin(), files.end());
  } else if (std::filesystem::is_regular_file(dir_or_file)) {
    files.push_back(dir_or_file);
  } else {
    throw IoError("no such file or directory: " + dir_or_file.string());
  }
  for (const auto& path : files) {
    ReducedDistribution d = load_reduced(path);
    if (seq.per_n.count(d.n) != 0) {
      throw IoError("duplicate reduced distribution for n=" + std::to_string(d.n) + " in " +
                    dir_or_file.string());
    }
    if (d.spec) {
      const std::string label = model_name(d.spec->model);
      if (seq.model_label.empty()) {
        seq.model_label = label;
        seq.model = d.spec->model;
      } else if (seq.model_label != label) {
        throw IoError("mixed models in sequence " + dir_or_file.string());
      }
    }
    seq.per_n.emplace(d.n, std::move(d));
  }
  if (seq.model_label.empty()) seq.model_label = dir_or_file.filename().string();
  return seq;
}

void run_compare(const CompareOptions& options, std::ostream& log) {
  const DistributionSequence a = load_sequence(options.a);
  const DistributionSequence b = load_sequence(options.b);
  const CorrelationReport report = compare_models(a, b, options.tail, options.seed);
  if (options.report_path.empty()) throw ConfigError("a report path is required");
  atomic_write_text(options.report_path, report_to_csv(report));
  log << "report: " << options.report_path.string() << " (" << report.rows.size() << " rows)\n";

  if (options.plot_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*options.plot_dir, ec);
    if (ec) throw IoError("cannot create " + options.plot_dir->string());
    for (const ReportRow& row : report.rows) {
      if (!row.comparable) continue;
      const auto path = *options.plot_dir / ("plot_n" + file_tag(row.n) + ".csv");
      atomic_write_text(path,
                        plot_data_to_csv(a.per_n.at(row.n), b.per_n.at(row.n)));
    }
    log << "plot data: " << options.plot_dir->string() << "\n";
  }
  if (options.convergence_path) {
    atomic_write_text(*options.convergence_path,
                      convergence_to_csv(convergence_check(a, ConvergenceMode::Order),
                                         convergence_check(a, ConvergenceMode::Values)));
    log << "convergence profile (a): " << options.convergence_path->string() << "\n";
  }
}

void run_naturalness(const NaturalnessOptions& options, std::ostream& out) {
  const DistributionSequence candidate = load_sequence(options.candidate);
  const DistributionSequence reference = load_sequence(options.reference);
  const NaturalnessReport report = naturalness_test(candidate, reference, options.c,
                                                    options.tail, options.seed,
                                                    options.weight_floor);
  if (options.evidence_path) {
    atomic_write_text(*options.evidence_path, naturalness_to_csv(report));
  }
  out << to_string(report.verdict) << "\n";
}

void run_significance_table(const SignificanceTableOptions& options, std::ostream& log) {
  if (options.m_min < 2 || options.m_max < options.m_min) {
    throw ConfigError("need 2 <= m-min <= m-max");
  }
  if (options.out_path.empty()) throw ConfigError("an output path is required");
  std::ostringstream all;
  bool first = true;
  for (int m = options.m_min; m <= options.m_max; ++m) {
    PermMethod resolved = options.method;
    if (resolved == PermMethod::Auto) {
      resolved = (m <= kMaxExactPermutationM) ? PermMethod::Exact : PermMethod::MonteCarlo;
    }
    const auto rows = significance_table(m, options.tail, resolved, options.seed,
                                         options.grid_step);
    std::string csv = significance_table_to_csv(rows, options.tail, resolved, options.seed);
    if (!first) {
      csv.erase(0, csv.find('\n') + 1);  // keep a single meta line
      csv.erase(0, csv.find('\n') + 1);  // and a single header
    }
    all << csv;
    first = false;
  }
  atomic_write_text(options.out_path, all.str());
  log << "tables: " << options.out_path.string() << "\n";
}

}  // namespace natdist::cli
