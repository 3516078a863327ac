#include "natdist/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace natdist {

ExperimentSpec make_spec(const ModelSpec& model, int n, const SequenceOptions& options) {
  ExperimentSpec spec = default_spec(model, n, options.seed);
  if (options.steps) spec.steps = *options.steps;
  if (options.sample_size) spec.sample_size = options.sample_size;
  if (options.extraction) spec.extraction = *options.extraction;
  if (options.stop_rule) spec.stop_rule = *options.stop_rule;
  spec.initial = options.initial;
  return spec;
}

ExperimentRun run_experiment(const ExperimentSpec& spec, int workers) {
  ExperimentRun run;
  run.raw = experiment_distribution(spec, workers);
  run.reduced = reduce_distribution(run.raw);
  return run;
}

DistributionSequence build_sequence(const ModelSpec& model, int n_min, int n_max,
                                    const SequenceOptions& options, int workers) {
  if (n_min < 2) throw ConfigError("sequences start at n >= 2 (below that there are too few classes)");
  if (n_max < n_min) throw ConfigError("n_max must be >= n_min");
  DistributionSequence seq;
  seq.model = model;
  seq.model_label = model_name(model);
  for (int n = n_min; n <= n_max; ++n) {
    seq.per_n.emplace(n, run_experiment(make_spec(model, n, options), workers).reduced);
  }
  return seq;
}

SharedSupport intersect_support(const ReducedDistribution& a, const ReducedDistribution& b,
                                double floor) {
  std::map<std::string, double> wb;
  for (const ReducedEntry& e : b.entries) wb.emplace(e.canonical, e.weight);
  std::map<std::string, std::pair<double, double>> shared;
  for (const ReducedEntry& e : a.entries) {
    auto it = wb.find(e.canonical);
    if (it == wb.end()) continue;
    if (e.weight > floor && it->second > floor) {
      shared.emplace(e.canonical, std::make_pair(e.weight, it->second));
    }
  }
  SharedSupport out;
  out.labels.reserve(shared.size());
  for (const auto& [label, w] : shared) {
    out.labels.push_back(label);
    out.wa.push_back(w.first);
    out.wb.push_back(w.second);
  }
  return out;
}

namespace {

// Average-rank vector (descending value) for weights aligned with `labels`.
std::vector<double> ranks_of(const std::vector<std::string>& labels,
                             const std::vector<double>& weights) {
  std::vector<std::pair<std::string, double>> items;
  items.reserve(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) items.emplace_back(labels[i], weights[i]);
  std::map<std::string, double> by_label;
  for (const Ranked& r : rank_descending(std::move(items))) by_label[r.label] = r.rank;
  std::vector<double> ranks;
  ranks.reserve(labels.size());
  for (const std::string& label : labels) ranks.push_back(by_label[label]);
  return ranks;
}

}  // namespace

CorrelationReport compare_models(const DistributionSequence& a, const DistributionSequence& b,
                                 Tail tail, std::uint64_t seed) {
  CorrelationReport report;
  report.label_a = a.model_label;
  report.label_b = b.model_label;
  report.tail = tail;
  report.seed = seed;
  for (const auto& [n, da] : a.per_n) {
    auto itb = b.per_n.find(n);
    if (itb == b.per_n.end()) continue;
    const ReducedDistribution& db = itb->second;

    ReportRow row;
    row.n = n;
    const SharedSupport shared = intersect_support(da, db);
    row.elements = static_cast<int>(shared.labels.size());
    if (row.elements >= 2) {
      try {
        row.spearman_rho =
            spearman(ranks_of(shared.labels, shared.wa), ranks_of(shared.labels, shared.wb));
        row.significance = significance(row.spearman_rho, row.elements, PermMethod::Auto, tail,
                                        Rng::substream(seed, kStreamReportRow,
                                                       static_cast<std::uint64_t>(n))
                                            .next());
        row.pearson_r = pearson(shared.wa, shared.wb);
        row.comparable = true;
      } catch (const UndefinedCorrelationError&) {
        row.comparable = false;  // degenerate weights; flagged, not fatal
      }
    }
    report.rows.push_back(row);
  }
  if (report.rows.empty()) throw ConfigError("the two sequences share no string length");
  return report;
}

MonotonyVerdict order_preserving(const ReducedDistribution& d1, const ReducedDistribution& d2,
                                 double c, Tail tail, std::uint64_t seed, double weight_floor) {
  MonotonyVerdict v;
  v.c = c;
  v.weight_floor = weight_floor;
  const SharedSupport shared = intersect_support(d1, d2, weight_floor);
  v.elements = static_cast<int>(shared.labels.size());
  if (v.elements < 2) return v;  // incomparable

  std::size_t agreeing = 0, pairs = 0;
  for (std::size_t i = 0; i < shared.labels.size(); ++i) {
    for (std::size_t j = i + 1; j < shared.labels.size(); ++j) {
      const double s1 = shared.wa[i] - shared.wa[j];
      const double s2 = shared.wb[i] - shared.wb[j];
      ++pairs;
      if ((s1 > 0 && s2 > 0) || (s1 < 0 && s2 < 0) || (s1 == 0 && s2 == 0)) ++agreeing;
    }
  }
  v.preserved_fraction = static_cast<double>(agreeing) / static_cast<double>(pairs);

  try {
    v.rho = spearman(ranks_of(shared.labels, shared.wa), ranks_of(shared.labels, shared.wb));
  } catch (const UndefinedCorrelationError&) {
    return v;  // all weights tied on one side: incomparable
  }
  v.comparable = true;
  v.under_powered = min_attainable_p(v.elements, PermMethod::Auto, tail) > c;
  v.p_value = significance(v.rho, v.elements, PermMethod::Auto, tail, seed).p_value;
  v.verdict = v.p_value <= c;
  return v;
}

std::string to_string(Naturalness v) {
  switch (v) {
    case Naturalness::Natural:
      return "natural";
    case Naturalness::Quasi:
      return "quasi";
    case Naturalness::NotNatural:
      return "not-natural";
  }
  return "?";
}

NaturalnessReport naturalness_test(const DistributionSequence& candidate,
                                   const DistributionSequence& reference, double c, Tail tail,
                                   std::uint64_t seed, double weight_floor) {
  NaturalnessReport report;
  report.c = c;
  report.tail = tail;
  report.seed = seed;
  bool any_usable = false;
  bool all_pass_c = true;
  bool all_pass_05 = true;
  for (const auto& [n, dc] : candidate.per_n) {
    auto itr = reference.per_n.find(n);
    if (itr == reference.per_n.end()) continue;
    const std::uint64_t row_seed =
        Rng::substream(seed, kStreamReportRow, static_cast<std::uint64_t>(n)).next();
    MonotonyVerdict v = order_preserving(dc, itr->second, c, tail, row_seed, weight_floor);
    report.rows.emplace_back(n, v);
    if (!v.comparable || v.under_powered) continue;
    any_usable = true;
    if (!v.verdict) all_pass_c = false;
    if (v.p_value > std::max(c, 0.05)) all_pass_05 = false;
  }
  if (report.rows.empty()) throw ConfigError("the two sequences share no string length");
  if (!any_usable) {
    report.verdict = Naturalness::NotNatural;
  } else if (all_pass_c) {
    report.verdict = Naturalness::Natural;
  } else if (all_pass_05) {
    report.verdict = Naturalness::Quasi;
  } else {
    report.verdict = Naturalness::NotNatural;
  }
  return report;
}

namespace {

int entry_length(const ReducedDistribution& d) {
  return d.entries.empty() ? 0 : static_cast<int>(d.entries.front().canonical.size());
}

// Marginalizes a reduced distribution one character down: each class maps to
// the class of its canonical's length-(L-1) prefix.
std::vector<std::pair<std::string, double>> project_down(const ReducedDistribution& d) {
  std::map<std::string, double> projected;
  for (const ReducedEntry& e : d.entries) {
    projected[canonical(std::string_view(e.canonical).substr(0, e.canonical.size() - 1))] +=
        e.weight;
  }
  return {projected.begin(), projected.end()};
}

std::vector<std::pair<std::string, double>> weights_of(const ReducedDistribution& d) {
  std::map<std::string, double> w;
  for (const ReducedEntry& e : d.entries) w.emplace(e.canonical, e.weight);
  return {w.begin(), w.end()};
}

}  // namespace

std::vector<ConvergenceStep> convergence_check(const DistributionSequence& seq,
                                               ConvergenceMode mode) {
  if (seq.per_n.size() < 2) throw ConfigError("convergence profiles need at least 2 entries");
  std::vector<ConvergenceStep> profile;
  for (auto it = seq.per_n.begin(); std::next(it) != seq.per_n.end(); ++it) {
    const auto& [n_from, from] = *it;
    const auto& [n_to, to] = *std::next(it);
    ConvergenceStep step;
    step.n_from = n_from;
    step.n_to = n_to;

    const int len_from = entry_length(from);
    const int len_to = entry_length(to);
    std::vector<std::pair<std::string, double>> lhs, rhs;
    if (len_from == len_to && len_from > 0) {
      lhs = weights_of(from);
      rhs = weights_of(to);
    } else if (len_from >= 1 && len_to == len_from + 1) {
      lhs = weights_of(from);
      rhs = project_down(to);
    } else {
      profile.push_back(step);  // gap
      continue;
    }

    // shared support
    std::map<std::string, double> rhs_map(rhs.begin(), rhs.end());
    std::vector<std::string> labels;
    std::vector<double> wa, wb;
    for (const auto& [label, w] : lhs) {
      auto found = rhs_map.find(label);
      if (found == rhs_map.end()) continue;
      labels.push_back(label);
      wa.push_back(w);
      wb.push_back(found->second);
    }
    step.elements = static_cast<int>(labels.size());
    if (step.elements < 2) {
      profile.push_back(step);  // gap
      continue;
    }
    if (mode == ConvergenceMode::Order) {
      try {
        step.distance = 1.0 - spearman(ranks_of(labels, wa), ranks_of(labels, wb));
        step.comparable = true;
      } catch (const UndefinedCorrelationError&) {
        // gap
      }
    } else {
      double ta = 0, tb = 0;
      for (std::size_t i = 0; i < labels.size(); ++i) {
        ta += wa[i];
        tb += wb[i];
      }
      double tv = 0;
      for (std::size_t i = 0; i < labels.size(); ++i) {
        tv += std::abs(wa[i] / ta - wb[i] / tb);
      }
      step.distance = tv / 2.0;
      step.comparable = true;
    }
    profile.push_back(step);
  }
  return profile;
}

std::optional<double> estimate_k(const Distribution& d, std::string_view s) {
  auto it = d.p.find(std::string(s));
  if (it == d.p.end()) return std::nullopt;
  return -std::log2(it->second);
}

std::optional<double> estimate_k(const ReducedDistribution& d, std::string_view s) {
  const ReducedEntry* e = d.find(canonical(s));
  if (e == nullptr) return std::nullopt;
  return -std::log2(e->weight);
}

}  // namespace natdist
