#include "natdist/sampling.hpp"

#include <algorithm>
#include <exception>
#include <set>
#include <thread>

namespace natdist {

std::uint64_t model_space_size(const ModelSpec& model) {
  if (model.kind == ModelKind::Tm) return tm_space_size(model.symbols, model.states);
  return kEcaRuleCount;
}

std::string model_name(const ModelSpec& model) {
  if (model.kind == ModelKind::Tm) {
    return "tm(" + std::to_string(model.symbols) + "," + std::to_string(model.states) + ")";
  }
  return "eca";
}

std::uint64_t default_steps(int n) { return 10ull * static_cast<std::uint64_t>(n); }

ExperimentSpec default_spec(const ModelSpec& model, int n, std::uint64_t seed) {
  ExperimentSpec spec;
  spec.model = model;
  spec.n = n;
  spec.steps = default_steps(n);
  spec.extraction = ExtractionMode::AllSubstrings;
  spec.stop_rule =
      model.kind == ModelKind::Eca ? StopRule::UniformRandomStop : StopRule::FixedSteps;
  spec.seed = seed;
  return spec;
}

void validate_spec(const ExperimentSpec& spec) {
  if (spec.n < 1) throw ConfigError("target string length n must be >= 1");
  if (spec.steps < static_cast<std::uint64_t>(spec.n)) {
    throw ConfigError("steps (" + std::to_string(spec.steps) + ") must be >= n (" +
                      std::to_string(spec.n) + ") for any length-n string to be extractable");
  }
  const std::uint64_t space = model_space_size(spec.model);  // validates dimensions
  if (spec.sample_size) {
    if (*spec.sample_size < 1) throw ConfigError("sample size must be >= 1");
    if (*spec.sample_size > space) {
      throw ConfigError("sample size exceeds the rule space (" + std::to_string(space) + ")");
    }
  }
  if (spec.model.kind == ModelKind::Tm && spec.model.symbols != 2) {
    // Output strings and the symmetry group are binary.
    throw ConfigError("sampling requires a binary tape alphabet (symbols = 2)");
  }
}

void extract_strings(Counts& counts, std::string_view output, int n, ExtractionMode mode) {
  const std::size_t len = output.size();
  const std::size_t un = static_cast<std::size_t>(n);
  if (len < un) return;
  switch (mode) {
    case ExtractionMode::AllSubstrings:
      for (std::size_t i = 0; i + un <= len; ++i) {
        ++counts[std::string(output.substr(i, un))];
      }
      break;
    case ExtractionMode::ExactLength:
      if (len == un) ++counts[std::string(output)];
      break;
    case ExtractionMode::CenterWindow:
      ++counts[std::string(output.substr((len - un) / 2, un))];
      break;
    case ExtractionMode::Prefix:
      ++counts[std::string(output.substr(0, un))];
      break;
  }
}

std::vector<std::uint64_t> sampled_indices(const ExperimentSpec& spec) {
  const std::uint64_t space = model_space_size(spec.model);
  if (!spec.sample_size || *spec.sample_size >= space) {
    if (space > (1ull << 28)) {
      throw CapacityError("full sweep over " + std::to_string(space) +
                          " rules is not materializable; set a sample size");
    }
    std::vector<std::uint64_t> all(static_cast<std::size_t>(space));
    for (std::uint64_t i = 0; i < space; ++i) all[static_cast<std::size_t>(i)] = i;
    return all;
  }
  // Floyd's without-replacement sample of k indices from [0, space).
  const std::uint64_t k = *spec.sample_size;
  Rng rng = Rng::substream(spec.seed, kStreamSampleIndices, 0);
  std::set<std::uint64_t> chosen;
  for (std::uint64_t j = space - k; j < space; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    if (!chosen.insert(t).second) chosen.insert(j);
  }
  return std::vector<std::uint64_t>(chosen.begin(), chosen.end());
}

namespace {

// Runs one rule under one initial condition and extracts strings.
// polarity 0: background 0 (TM) / seed 1 on background 0 (ECA);
// polarity 1: background 1 (TM) / seed 0 on background 1 (ECA).
void run_one(const ExperimentSpec& spec, std::uint64_t index, int polarity,
             std::uint64_t stop_step, Counts& counts) {
  const Symbol background = static_cast<Symbol>(polarity);
  std::string output;
  if (spec.model.kind == ModelKind::Tm) {
    const TmProgram program = decode_tm(index, spec.model.symbols, spec.model.states);
    output = run_tm(program, background, stop_step).output;
  } else {
    const EcaRule rule{static_cast<std::uint8_t>(index)};
    output = run_eca_final(rule, background, stop_step).to_string();
  }
  extract_strings(counts, output, spec.n, spec.extraction);
}

void run_index(const ExperimentSpec& spec, std::uint64_t index, Counts& counts) {
  // Stop steps are drawn in a fixed order (polarity 0 first) from the
  // per-rule substream, whether or not both polarities actually run.
  std::uint64_t stop[2] = {spec.steps, spec.steps};
  if (spec.stop_rule == StopRule::UniformRandomStop) {
    Rng rng = Rng::substream(spec.seed, kStreamStopSteps, index);
    const std::uint64_t range = spec.steps - static_cast<std::uint64_t>(spec.n) + 1;
    stop[0] = static_cast<std::uint64_t>(spec.n) + rng.below(range);
    stop[1] = static_cast<std::uint64_t>(spec.n) + rng.below(range);
  }
  if (spec.initial != InitialConditions::BackgroundOne) run_one(spec, index, 0, stop[0], counts);
  if (spec.initial != InitialConditions::BackgroundZero) run_one(spec, index, 1, stop[1], counts);
}

}  // namespace

Counts sample_outputs(const ExperimentSpec& spec, int workers) {
  validate_spec(spec);
  const std::vector<std::uint64_t> indices = sampled_indices(spec);
  if (indices.empty()) return {};

  const std::size_t count = indices.size();
  const std::size_t parts =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(workers, 1)));
  if (parts <= 1) {
    Counts counts;
    for (std::uint64_t index : indices) run_index(spec, index, counts);
    return counts;
  }

  std::vector<Counts> partials(parts);
  std::vector<std::exception_ptr> failures(parts);
  std::vector<std::thread> pool;
  pool.reserve(parts);
  for (std::size_t w = 0; w < parts; ++w) {
    pool.emplace_back([&, w] {
      try {
        const std::size_t begin = count * w / parts;
        const std::size_t end = count * (w + 1) / parts;
        for (std::size_t i = begin; i < end; ++i) run_index(spec, indices[i], partials[w]);
      } catch (...) {
        failures[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }
  return merge_counts(partials);
}

Counts merge_counts(std::span<const Counts> parts) {
  Counts merged;
  std::size_t length = 0;
  for (const Counts& part : parts) {
    for (const auto& [s, c] : part) {
      if (length == 0) length = s.size();
      if (s.size() != length) {
        throw ConfigError("cannot merge counts over mixed string lengths");
      }
      merged[s] += c;
    }
  }
  return merged;
}

Distribution build_distribution(const Counts& counts, int n) {
  if (counts.empty()) {
    throw EmptySampleError("no length-" + std::to_string(n) + " strings were produced");
  }
  Distribution d;
  d.n = n;
  for (const auto& [s, c] : counts) {
    if (static_cast<int>(s.size()) != n) {
      throw ConfigError("count key '" + s + "' does not have length " + std::to_string(n));
    }
    d.total += c;
  }
  for (const auto& [s, c] : counts) {
    d.counts[s] = c;
    d.p[s] = static_cast<double>(c) / static_cast<double>(d.total);
  }
  return d;
}

Distribution experiment_distribution(const ExperimentSpec& spec, int workers) {
  Distribution d = build_distribution(sample_outputs(spec, workers), spec.n);
  d.spec = spec;
  return d;
}

std::vector<Ranked> rank_descending(std::vector<std::pair<std::string, double>> items) {
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::vector<Ranked> out(items.size());
  std::size_t i = 0;
  while (i < items.size()) {
    std::size_t j = i;
    while (j < items.size() && items[j].second == items[i].second) ++j;
    const double rank = static_cast<double>(i + 1 + j) / 2.0;  // mean of positions i+1..j
    for (std::size_t k = i; k < j; ++k) {
      out[k] = Ranked{items[k].first, items[k].second, rank};
    }
    i = j;
  }
  return out;
}

std::vector<Ranked> rank_strings(const Distribution& d) {
  std::vector<std::pair<std::string, double>> items(d.p.begin(), d.p.end());
  return rank_descending(std::move(items));
}

}  // namespace natdist
