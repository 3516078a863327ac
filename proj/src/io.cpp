#include "natdist/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "natdist/version.hpp"

namespace natdist {

using nlohmann::json;

std::string format_double(double v) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), v);
  return std::string(buffer, result.ptr);
}

std::string to_string(ExtractionMode m) {
  switch (m) {
    case ExtractionMode::AllSubstrings:
      return "all-substrings";
    case ExtractionMode::ExactLength:
      return "exact-length";
    case ExtractionMode::CenterWindow:
      return "center-window";
    case ExtractionMode::Prefix:
      return "prefix";
  }
  return "?";
}

std::string to_string(StopRule r) {
  return r == StopRule::FixedSteps ? "fixed-steps" : "uniform-random-stop";
}

std::string to_string(InitialConditions i) {
  switch (i) {
    case InitialConditions::Both:
      return "both";
    case InitialConditions::BackgroundZero:
      return "background-0";
    case InitialConditions::BackgroundOne:
      return "background-1";
  }
  return "?";
}

ExtractionMode extraction_from_string(std::string_view s) {
  if (s == "all-substrings") return ExtractionMode::AllSubstrings;
  if (s == "exact-length") return ExtractionMode::ExactLength;
  if (s == "center-window") return ExtractionMode::CenterWindow;
  if (s == "prefix") return ExtractionMode::Prefix;
  throw ConfigError("unknown extraction mode: " + std::string(s));
}

StopRule stop_rule_from_string(std::string_view s) {
  if (s == "fixed-steps") return StopRule::FixedSteps;
  if (s == "uniform-random-stop") return StopRule::UniformRandomStop;
  throw ConfigError("unknown stop rule: " + std::string(s));
}

InitialConditions initial_from_string(std::string_view s) {
  if (s == "both") return InitialConditions::Both;
  if (s == "background-0") return InitialConditions::BackgroundZero;
  if (s == "background-1") return InitialConditions::BackgroundOne;
  throw ConfigError("unknown initial conditions: " + std::string(s));
}

void atomic_write_text(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path temp = path;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + temp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("short write to " + temp.string());
  }
  std::error_code ec;
  std::filesystem::rename(temp, path, ec);
  if (ec) {
    std::filesystem::remove(temp, ec);
    throw IoError("cannot rename into place: " + path.string());
  }
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("read failure on " + path.string());
  return buffer.str();
}

namespace {

json spec_meta(const std::optional<ExperimentSpec>& spec) {
  json meta;
  if (!spec) return meta;
  meta["model"] = spec->model.kind == ModelKind::Tm ? "tm" : "eca";
  if (spec->model.kind == ModelKind::Tm) {
    meta["symbols"] = spec->model.symbols;
    meta["states"] = spec->model.states;
  }
  meta["steps"] = spec->steps;
  if (spec->sample_size) {
    meta["sample_size"] = *spec->sample_size;
  } else {
    meta["sample_size"] = "all";
  }
  meta["extraction"] = to_string(spec->extraction);
  meta["stop_rule"] = to_string(spec->stop_rule);
  meta["initial_conditions"] = to_string(spec->initial);
  meta["seed"] = spec->seed;
  return meta;
}

std::optional<ExperimentSpec> spec_from_meta(const json& meta, int n) {
  if (!meta.contains("model")) return std::nullopt;
  ExperimentSpec spec;
  const std::string model = meta.at("model").get<std::string>();
  if (model == "tm") {
    spec.model.kind = ModelKind::Tm;
    spec.model.symbols = meta.at("symbols").get<int>();
    spec.model.states = meta.at("states").get<int>();
  } else if (model == "eca") {
    spec.model.kind = ModelKind::Eca;
  } else {
    throw IoError("unknown model in distribution file: " + model);
  }
  spec.n = n;
  spec.steps = meta.at("steps").get<std::uint64_t>();
  if (meta.at("sample_size").is_number()) {
    spec.sample_size = meta.at("sample_size").get<std::uint64_t>();
  }
  spec.extraction = extraction_from_string(meta.at("extraction").get<std::string>());
  spec.stop_rule = stop_rule_from_string(meta.at("stop_rule").get<std::string>());
  spec.initial = initial_from_string(meta.at("initial_conditions").get<std::string>());
  spec.seed = meta.at("seed").get<std::uint64_t>();
  return spec;
}

json file_shell(int n, std::uint64_t total, bool reduced,
                const std::optional<ExperimentSpec>& spec) {
  json doc;
  doc["format"] = "natdist-distribution";
  doc["format_version"] = 1;
  json meta = spec_meta(spec);
  meta["tool"] = kToolName;
  meta["tool_version"] = kToolVersion;
  meta["n"] = n;
  meta["total_count"] = total;
  meta["reduced"] = reduced;
  doc["meta"] = meta;
  return doc;
}

void check_format(const json& doc) {
  if (!doc.is_object() || doc.value("format", "") != "natdist-distribution") {
    throw IoError("not a natdist distribution file");
  }
  if (doc.value("format_version", 0) != 1) {
    throw IoError("unsupported distribution file version");
  }
}

}  // namespace

std::string distribution_to_json(const Distribution& d) {
  json doc = file_shell(d.n, d.total, false, d.spec);
  // Descending probability, ties in arithmetical order.
  json entries = json::array();
  for (const Ranked& r : rank_strings(d)) {
    json e;
    e["s"] = r.label;
    e["count"] = d.counts.at(r.label);
    e["p"] = r.value;
    entries.push_back(std::move(e));
  }
  doc["entries"] = std::move(entries);
  return doc.dump(2) + "\n";
}

Distribution distribution_from_json(std::string_view text) {
  json doc = json::parse(text);
  check_format(doc);
  const json& meta = doc.at("meta");
  if (meta.value("reduced", false)) {
    throw IoError("file holds a reduced distribution; use the reduced loader");
  }
  Distribution d;
  d.n = meta.at("n").get<int>();
  d.total = meta.at("total_count").get<std::uint64_t>();
  d.spec = spec_from_meta(meta, d.n);
  for (const json& e : doc.at("entries")) {
    const std::string s = e.at("s").get<std::string>();
    d.counts[s] = e.at("count").get<std::uint64_t>();
    d.p[s] = e.at("p").get<double>();
  }
  return d;
}

std::string reduced_to_json(const ReducedDistribution& d) {
  json doc = file_shell(d.n, d.total_count, true, d.spec);
  json entries = json::array();
  for (const ReducedEntry& r : d.entries) {
    json e;
    e["s"] = r.canonical;
    e["orbit"] = r.orbit_size;
    e["count"] = r.count;
    e["weight"] = r.weight;
    e["p"] = r.p;
    entries.push_back(std::move(e));
  }
  doc["entries"] = std::move(entries);
  return doc.dump(2) + "\n";
}

ReducedDistribution reduced_from_json(std::string_view text) {
  json doc = json::parse(text);
  check_format(doc);
  const json& meta = doc.at("meta");
  if (!meta.value("reduced", false)) {
    throw IoError("file holds a raw distribution; use the raw loader");
  }
  ReducedDistribution d;
  d.n = meta.at("n").get<int>();
  d.total_count = meta.at("total_count").get<std::uint64_t>();
  d.spec = spec_from_meta(meta, d.n);
  for (const json& e : doc.at("entries")) {
    ReducedEntry entry;
    entry.canonical = e.at("s").get<std::string>();
    entry.orbit_size = e.at("orbit").get<int>();
    entry.count = e.at("count").get<std::uint64_t>();
    entry.weight = e.at("weight").get<double>();
    entry.p = e.at("p").get<double>();
    d.weight_total += entry.weight;
    d.entries.push_back(std::move(entry));
  }
  return d;
}

void save_distribution(const std::filesystem::path& path, const Distribution& d) {
  atomic_write_text(path, distribution_to_json(d));
}

Distribution load_distribution(const std::filesystem::path& path) {
  try {
    return distribution_from_json(read_text(path));
  } catch (const json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void save_reduced(const std::filesystem::path& path, const ReducedDistribution& d) {
  atomic_write_text(path, reduced_to_json(d));
}

ReducedDistribution load_reduced(const std::filesystem::path& path) {
  try {
    return reduced_from_json(read_text(path));
  } catch (const json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

std::string report_to_csv(const CorrelationReport& report) {
  std::ostringstream out;
  out << "# " << kToolName << " " << kToolVersion << " compare\n";
  out << "# a=" << report.label_a << " b=" << report.label_b << "\n";
  out << "# tail=" << to_string(report.tail) << " seed=" << report.seed << "\n";
  out << "n,elements,spearman,p_value,tail,method,verdict,pearson\n";
  for (const ReportRow& row : report.rows) {
    out << row.n << "," << row.elements << ",";
    if (row.comparable) {
      out << format_double(row.spearman_rho) << "," << format_double(row.significance.p_value)
          << "," << to_string(row.significance.tail) << "," << to_string(row.significance.method)
          << "," << to_string(row.significance.verdict) << "," << format_double(row.pearson_r);
    } else {
      out << ",,,,incomparable,";
    }
    out << "\n";
  }
  return out.str();
}

std::string convergence_to_csv(const std::vector<ConvergenceStep>& order_profile,
                               const std::vector<ConvergenceStep>& value_profile) {
  if (order_profile.size() != value_profile.size()) {
    throw ConfigError("order and value profiles cover different steps");
  }
  std::ostringstream out;
  out << "# " << kToolName << " " << kToolVersion << " convergence\n";
  out << "n,order_distance,value_distance\n";
  for (std::size_t i = 0; i < order_profile.size(); ++i) {
    const ConvergenceStep& o = order_profile[i];
    const ConvergenceStep& v = value_profile[i];
    out << o.n_to << ",";
    if (o.comparable) out << format_double(o.distance);
    out << ",";
    if (v.comparable) out << format_double(v.distance);
    out << "\n";
  }
  return out.str();
}

std::string naturalness_to_csv(const NaturalnessReport& report) {
  std::ostringstream out;
  out << "# " << kToolName << " " << kToolVersion << " naturalness\n";
  out << "# c=" << format_double(report.c) << " tail=" << to_string(report.tail)
      << " seed=" << report.seed << " verdict=" << to_string(report.verdict) << "\n";
  out << "n,elements,spearman,p_value,preserved_fraction,comparable,under_powered,passes\n";
  for (const auto& [n, v] : report.rows) {
    out << n << "," << v.elements << ",";
    if (v.comparable) {
      out << format_double(v.rho) << "," << format_double(v.p_value) << ","
          << format_double(v.preserved_fraction);
    } else {
      out << ",,";
    }
    out << "," << (v.comparable ? "yes" : "no") << "," << (v.under_powered ? "yes" : "no") << ","
        << (v.verdict ? "yes" : "no") << "\n";
  }
  return out.str();
}

std::string plot_data_to_csv(const ReducedDistribution& a, const ReducedDistribution& b) {
  const SharedSupport shared = intersect_support(a, b);
  std::vector<std::pair<std::string, double>> wa, wb;
  for (std::size_t i = 0; i < shared.labels.size(); ++i) {
    wa.emplace_back(shared.labels[i], shared.wa[i]);
    wb.emplace_back(shared.labels[i], shared.wb[i]);
  }
  std::map<std::string, double> rank_a, rank_b;
  for (const Ranked& r : rank_descending(std::move(wa))) rank_a[r.label] = r.rank;
  for (const Ranked& r : rank_descending(std::move(wb))) rank_b[r.label] = r.rank;

  std::ostringstream out;
  out << "class,weight_a,weight_b,rank_a,rank_b\n";
  for (std::size_t i = 0; i < shared.labels.size(); ++i) {
    const std::string& label = shared.labels[i];
    out << label << "," << format_double(shared.wa[i]) << "," << format_double(shared.wb[i])
        << "," << format_double(rank_a[label]) << "," << format_double(rank_b[label]) << "\n";
  }
  return out.str();
}

std::string significance_table_to_csv(const std::vector<SignificanceTableRow>& rows, Tail tail,
                                      PermMethod method, std::uint64_t seed) {
  std::ostringstream out;
  out << "# " << kToolName << " " << kToolVersion << " significance-table tail="
      << to_string(tail) << " method=" << to_string(method) << " seed=" << seed << "\n";
  out << "m,tail,method,rho,p_value\n";
  for (const SignificanceTableRow& row : rows) {
    out << row.m << "," << to_string(tail) << "," << to_string(method) << ","
        << format_double(row.rho) << "," << format_double(row.p) << "\n";
  }
  return out.str();
}

}  // namespace natdist
