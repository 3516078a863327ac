#include "natdist/sampling.hpp"

#include <algorithm>

#include "doctest.h"

using namespace natdist;

namespace {

// "write 1, move right, stay in state 1" for both scanned symbols is index
// 15 in TM(2,1): both slots carry action code 1*(2*1) + 1*1 + 0 = 3.
const std::uint64_t kRightWriterIndex = 15;

Counts right_writer_counts(int n, std::uint64_t steps, InitialConditions initial) {
  Counts counts;
  const TmProgram p = decode_tm(kRightWriterIndex, 2, 1);
  for (Symbol bg : {Symbol{0}, Symbol{1}}) {
    if (initial == InitialConditions::BackgroundZero && bg == 1) continue;
    if (initial == InitialConditions::BackgroundOne && bg == 0) continue;
    extract_strings(counts, run_tm(p, bg, steps).output, n, ExtractionMode::AllSubstrings);
  }
  return counts;
}

}  // namespace

TEST_SUITE("sampling") {
  TEST_CASE("defaults follow the experiment protocol") {
    const ExperimentSpec tm = default_spec(ModelSpec{ModelKind::Tm, 2, 2}, 8);
    CHECK(tm.steps == 80);
    CHECK(tm.extraction == ExtractionMode::AllSubstrings);
    CHECK(tm.stop_rule == StopRule::FixedSteps);
    CHECK(!tm.sample_size.has_value());
    CHECK(tm.initial == InitialConditions::Both);

    const ExperimentSpec eca = default_spec(ModelSpec{ModelKind::Eca}, 8);
    CHECK(eca.stop_rule == StopRule::UniformRandomStop);
    CHECK(model_space_size(eca.model) == 256);
    CHECK(model_name(eca.model) == "eca");
    CHECK(model_name(tm.model) == "tm(2,2)");
  }

  TEST_CASE("spec validation names the broken constraint") {
    ExperimentSpec spec = default_spec(ModelSpec{ModelKind::Tm, 2, 2}, 4);
    spec.steps = 3;  // < n
    CHECK_THROWS_AS(validate_spec(spec), ConfigError);
    spec = default_spec(ModelSpec{ModelKind::Tm, 2, 2}, 0);
    CHECK_THROWS_AS(validate_spec(spec), ConfigError);
    spec = default_spec(ModelSpec{ModelKind::Eca}, 4);
    spec.sample_size = 257;  // > 256 rules
    CHECK_THROWS_AS(validate_spec(spec), ConfigError);
  }

  TEST_CASE("the right-writing machine yields the worked-out counts") {
    const Counts bg0 = right_writer_counts(2, 20, InitialConditions::BackgroundZero);
    CHECK(bg0 == Counts{{"11", 19}, {"10", 1}});

    const Counts bg1 = right_writer_counts(2, 20, InitialConditions::BackgroundOne);
    CHECK(bg1 == Counts{{"11", 20}});

    const Counts both = right_writer_counts(2, 20, InitialConditions::Both);
    CHECK(both == Counts{{"11", 39}, {"10", 1}});
  }

  TEST_CASE("extraction policies pick the advertised windows") {
    Counts c;
    extract_strings(c, "0110", 3, ExtractionMode::AllSubstrings);
    CHECK(c == Counts{{"011", 1}, {"110", 1}});

    c.clear();
    extract_strings(c, "01", 3, ExtractionMode::AllSubstrings);
    CHECK(c.empty());  // output shorter than n

    c.clear();
    extract_strings(c, "0110", 4, ExtractionMode::ExactLength);
    extract_strings(c, "01101", 4, ExtractionMode::ExactLength);
    CHECK(c == Counts{{"0110", 1}});

    c.clear();
    extract_strings(c, "0011100", 3, ExtractionMode::CenterWindow);
    CHECK(c == Counts{{"111", 1}});

    c.clear();
    extract_strings(c, "0011100", 3, ExtractionMode::Prefix);
    CHECK(c == Counts{{"001", 1}});
  }

  TEST_CASE("build_distribution normalizes and validates") {
    const Distribution d = build_distribution(Counts{{"11", 39}, {"10", 1}}, 2);
    CHECK(d.total == 40);
    CHECK(d.p.at("11") == doctest::Approx(0.975).epsilon(1e-15));
    CHECK(d.p.at("10") == doctest::Approx(0.025).epsilon(1e-15));

    const Distribution single = build_distribution(Counts{{"00", 1}}, 2);
    CHECK(single.p.at("00") == 1.0);

    const Distribution three = build_distribution(Counts{{"00", 2}, {"01", 1}, {"10", 1}}, 2);
    CHECK(three.p.at("00") == 0.5);
    CHECK(three.p.at("01") == 0.25);
    CHECK(three.p.at("10") == 0.25);

    CHECK_THROWS_AS(build_distribution(Counts{}, 2), EmptySampleError);
    CHECK_THROWS_AS(build_distribution(Counts{{"00", 1}, {"000", 1}}, 2), ConfigError);
  }

  TEST_CASE("distributions sum to one within 1e-12") {
    const ExperimentSpec spec = default_spec(ModelSpec{ModelKind::Tm, 2, 2}, 4);
    const Distribution d = experiment_distribution(spec);
    double sum = 0;
    for (const auto& [s, p] : d.p) {
      CHECK(s.size() == 4);
      CHECK(p > 0);
      sum += p;
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }

  TEST_CASE("merge_counts is pointwise with an identity element") {
    const Counts a{{"a0", 1}, {"b1", 2}};
    const Counts b{{"b1", 3}};
    const Counts empty;
    std::vector<Counts> parts{a, empty};
    CHECK(merge_counts(parts) == a);
    parts = {a, b};
    CHECK(merge_counts(parts) == Counts{{"a0", 1}, {"b1", 5}});

    const Counts c{{"c0", 7}};
    std::vector<std::vector<Counts>> orders{{a, b, c}, {c, b, a}, {b, a, c}};
    const Counts merged = merge_counts(orders[0]);
    for (const auto& order : orders) CHECK(merge_counts(order) == merged);

    std::vector<Counts> mixed{a, Counts{{"abc", 1}}};
    CHECK_THROWS_AS(merge_counts(mixed), ConfigError);
  }

  TEST_CASE("total extracted strings are conserved across machines") {
    const ExperimentSpec spec = default_spec(ModelSpec{ModelKind::Tm, 2, 1}, 3);
    const Counts counts = sample_outputs(spec);
    std::uint64_t total = 0;
    for (const auto& [s, c] : counts) total += c;

    std::uint64_t per_machine_sum = 0;
    for (std::uint64_t i = 0; i < 16; ++i) {
      const TmProgram p = decode_tm(i, 2, 1);
      for (Symbol bg : {Symbol{0}, Symbol{1}}) {
        const std::string out = run_tm(p, bg, spec.steps).output;
        if (out.size() >= 3) per_machine_sum += out.size() - 3 + 1;
      }
    }
    CHECK(total == per_machine_sum);
  }

  TEST_CASE("sampled_indices covers the space or draws without replacement") {
    ExperimentSpec spec = default_spec(ModelSpec{ModelKind::Tm, 2, 1}, 2);
    std::vector<std::uint64_t> all = sampled_indices(spec);
    REQUIRE(all.size() == 16);
    for (std::uint64_t i = 0; i < 16; ++i) CHECK(all[i] == i);

    spec.sample_size = 5;
    const std::vector<std::uint64_t> five = sampled_indices(spec);
    REQUIRE(five.size() == 5);
    CHECK(std::is_sorted(five.begin(), five.end()));
    CHECK(std::adjacent_find(five.begin(), five.end()) == five.end());
    for (std::uint64_t v : five) CHECK(v < 16);
    CHECK(five == sampled_indices(spec));  // same seed, same sample

    spec.seed = 777;
    ExperimentSpec other = spec;
    other.seed = 778;
    CHECK(sampled_indices(spec) != sampled_indices(other));
  }

  TEST_CASE("worker count never changes the sampled multiset") {
    ExperimentSpec tm = default_spec(ModelSpec{ModelKind::Tm, 2, 2}, 3);
    CHECK(sample_outputs(tm, 1) == sample_outputs(tm, 4));

    ExperimentSpec eca = default_spec(ModelSpec{ModelKind::Eca}, 3);
    REQUIRE(eca.stop_rule == StopRule::UniformRandomStop);
    CHECK(sample_outputs(eca, 1) == sample_outputs(eca, 8));
  }

  TEST_CASE("complementing the background-0 distribution gives background-1") {
    ExperimentSpec spec = default_spec(ModelSpec{ModelKind::Tm, 2, 2}, 2);
    spec.initial = InitialConditions::BackgroundZero;
    const Counts bg0 = sample_outputs(spec);
    spec.initial = InitialConditions::BackgroundOne;
    const Counts bg1 = sample_outputs(spec);

    Counts complemented;
    for (const auto& [s, c] : bg0) {
      std::string flipped = s;
      for (char& ch : flipped) ch = (ch == '0') ? '1' : '0';
      complemented[flipped] = c;
    }
    CHECK(complemented == bg1);
  }

  TEST_CASE("eca random stops land in [n, steps] and depend only on the seed") {
    ExperimentSpec spec = default_spec(ModelSpec{ModelKind::Eca}, 4);
    const Counts first = sample_outputs(spec);
    CHECK(first == sample_outputs(spec));
    ExperimentSpec other = spec;
    other.seed = spec.seed + 1;
    // 256 rules with fresh stop draws: some count must move.
    CHECK(first != sample_outputs(other));
  }

  TEST_CASE("an experiment that can produce nothing signals an empty sample") {
    // Light-cone rows have odd lengths, so exact-length n=4 never matches.
    ExperimentSpec spec = default_spec(ModelSpec{ModelKind::Eca}, 4);
    spec.extraction = ExtractionMode::ExactLength;
    CHECK(sample_outputs(spec).empty());
    CHECK_THROWS_AS(experiment_distribution(spec), EmptySampleError);
  }

  TEST_CASE("ranking uses descending probability with averaged ties") {
    Distribution d;
    d.n = 1;
    d.p = {{"a", 0.5}, {"b", 0.3}, {"c", 0.2}};
    std::vector<Ranked> r = rank_strings(d);
    REQUIRE(r.size() == 3);
    CHECK(r[0].label == "a");
    CHECK(r[0].rank == 1.0);
    CHECK(r[1].rank == 2.0);
    CHECK(r[2].rank == 3.0);

    d.p = {{"a", 0.4}, {"b", 0.4}, {"c", 0.2}};
    r = rank_strings(d);
    CHECK(r[0].rank == 1.5);
    CHECK(r[1].rank == 1.5);
    CHECK(r[2].rank == 3.0);
    CHECK(r[0].label == "a");  // arithmetical presentation order inside ties
    CHECK(r[1].label == "b");

    d.p = {{"z", 1.0}};
    r = rank_strings(d);
    REQUIRE(r.size() == 1);
    CHECK(r[0].rank == 1.0);

    // ranks sum to m(m+1)/2
    d.p = {{"a", 0.25}, {"b", 0.25}, {"c", 0.25}, {"d", 0.25}};
    double sum = 0;
    for (const Ranked& item : rank_strings(d)) sum += item.rank;
    CHECK(sum == 10.0);
  }
}
