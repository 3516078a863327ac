#include "natdist/commands.hpp"

#include <filesystem>
#include <sstream>

#include "doctest.h"

using namespace natdist;

namespace {

std::filesystem::path temp_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("natdist_cmd_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

cli::DistributionOptions tm_options(const std::filesystem::path& out, int n_min, int n_max) {
  cli::DistributionOptions options;
  options.model = ModelSpec{ModelKind::Tm, 2, 2};
  options.n_min = n_min;
  options.n_max = n_max;
  options.out_dir = out;
  return options;
}

}  // namespace

TEST_SUITE("commands") {
  TEST_CASE("enumerate prints counts and tables") {
    std::ostringstream out;
    cli::EnumerateOptions options;
    options.model = ModelSpec{ModelKind::Tm, 2, 2};
    options.count_only = true;
    cli::run_enumerate(options, out);
    CHECK(out.str() == "4096\n");

    out.str("");
    options.model = ModelSpec{ModelKind::Eca};
    cli::run_enumerate(options, out);
    CHECK(out.str() == "256\n");

    out.str("");
    options.model = ModelSpec{ModelKind::Tm, 2, 2};
    options.count_only = false;
    options.index = 0;
    cli::run_enumerate(options, out);
    const std::string table = out.str();
    CHECK(table.find("index 0 (tm 2x2)") != std::string::npos);
    CHECK(table.find("state 1, read 0 -> write 0, move L, state 1") != std::string::npos);
    CHECK(table.find("state 2, read 1 -> write 0, move L, state 1") != std::string::npos);

    out.str("");
    options.model = ModelSpec{ModelKind::Eca};
    options.index = 110;
    cli::run_enumerate(options, out);
    CHECK(out.str().find("rule 110") != std::string::npos);
    CHECK(out.str().find("110 -> 1") != std::string::npos);
    CHECK(out.str().find("111 -> 0") != std::string::npos);

    options.index = 600;
    CHECK_THROWS_AS(cli::run_enumerate(options, out), ConfigError);
    options.index.reset();
    options.count_only = false;
    CHECK_THROWS_AS(cli::run_enumerate(options, out), ConfigError);
  }

  TEST_CASE("the replication schedule matches the published sample sizes") {
    CHECK(cli::replication_schedule_sample_size(ModelSpec{ModelKind::Tm, 2, 2}, 12) == 4092);
    CHECK(cli::replication_schedule_sample_size(ModelSpec{ModelKind::Eca}, 12) == 252);
    CHECK(cli::replication_schedule_sample_size(ModelSpec{ModelKind::Eca}, 13) == 256);  // clamp
    CHECK_THROWS_AS(cli::replication_schedule_sample_size(ModelSpec{ModelKind::Tm, 2, 3}, 4),
                    ConfigError);
  }

  TEST_CASE("distribution writes raw and reduced files per n") {
    const auto dir = temp_dir("dist");
    std::ostringstream log;
    cli::run_distribution(tm_options(dir / "tm", 4, 4), log);
    CHECK(std::filesystem::exists(dir / "tm" / "raw_n04.json"));
    CHECK(std::filesystem::exists(dir / "tm" / "reduced_n04.json"));

    const ReducedDistribution reduced = load_reduced(dir / "tm" / "reduced_n04.json");
    CHECK(reduced.n == 4);
    CHECK(reduced.entries.size() <= 6);  // class_count(4)
    REQUIRE(reduced.spec.has_value());
    CHECK(reduced.spec->seed == kDefaultSeed);
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("a repeated run is byte-identical") {
    const auto dir = temp_dir("idempotent");
    std::ostringstream log;
    cli::run_distribution(tm_options(dir / "a", 3, 3), log);
    const std::string first_raw = read_text(dir / "a" / "raw_n03.json");
    const std::string first_reduced = read_text(dir / "a" / "reduced_n03.json");
    cli::run_distribution(tm_options(dir / "a", 3, 3), log);
    CHECK(read_text(dir / "a" / "raw_n03.json") == first_raw);
    CHECK(read_text(dir / "a" / "reduced_n03.json") == first_reduced);
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("worker count changes nothing in the files") {
    const auto dir = temp_dir("workers");
    std::ostringstream log;
    cli::DistributionOptions one = tm_options(dir / "w1", 4, 4);
    one.workers = 1;
    cli::DistributionOptions eight = tm_options(dir / "w8", 4, 4);
    eight.workers = 8;
    cli::run_distribution(one, log);
    cli::run_distribution(eight, log);
    CHECK(read_text(dir / "w1" / "raw_n04.json") == read_text(dir / "w8" / "raw_n04.json"));
    CHECK(read_text(dir / "w1" / "reduced_n04.json") ==
          read_text(dir / "w8" / "reduced_n04.json"));
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("invalid configurations are usage errors that name the constraint") {
    const auto dir = temp_dir("badcfg");
    std::ostringstream log;
    cli::DistributionOptions options = tm_options(dir / "x", 4, 4);
    options.sequence.steps = 3;  // < n
    try {
      cli::run_distribution(options, log);
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find("steps") != std::string::npos);
    }
    CHECK(!std::filesystem::exists(dir / "x" / "raw_n04.json"));
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("compare: self-comparison, report and plot data") {
    const auto dir = temp_dir("compare");
    std::ostringstream log;
    cli::run_distribution(tm_options(dir / "tm", 2, 4), log);

    cli::CompareOptions options;
    options.a = dir / "tm";
    options.b = dir / "tm";
    options.report_path = dir / "report.csv";
    options.plot_dir = dir / "plots";
    options.convergence_path = dir / "convergence.csv";
    cli::run_compare(options, log);

    const std::string report = read_text(dir / "report.csv");
    CHECK(report.find("n,elements,spearman,p_value,tail,method,verdict,pearson\n") !=
          std::string::npos);
    CHECK(report.find("2,2,1,") != std::string::npos);  // rho = 1 on the n=2 row
    CHECK(report.find("4,") != std::string::npos);
    CHECK(std::filesystem::exists(dir / "plots" / "plot_n03.csv"));
    CHECK(read_text(dir / "plots" / "plot_n02.csv")
              .starts_with("class,weight_a,weight_b,rank_a,rank_b\n"));
    CHECK(read_text(dir / "convergence.csv").find("n,order_distance,value_distance\n") !=
          std::string::npos);
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("compare fails cleanly on a missing input, writing nothing") {
    const auto dir = temp_dir("missing");
    cli::CompareOptions options;
    options.a = dir / "nowhere";
    options.b = dir / "nowhere";
    options.report_path = dir / "report.csv";
    std::ostringstream log;
    CHECK_THROWS_AS(cli::run_compare(options, log), IoError);
    CHECK(!std::filesystem::exists(dir / "report.csv"));
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("naturalness prints a verdict and writes evidence") {
    const auto dir = temp_dir("naturalness");
    std::ostringstream log;
    cli::run_distribution(tm_options(dir / "tm", 3, 5), log);

    cli::NaturalnessOptions options;
    options.candidate = dir / "tm";
    options.reference = dir / "tm";
    options.evidence_path = dir / "evidence.csv";
    std::ostringstream out;
    cli::run_naturalness(options, out);
    CHECK(out.str() == "natural\n");
    CHECK(read_text(dir / "evidence.csv").find("verdict=natural") != std::string::npos);
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("significance tables cover the requested m range") {
    const auto dir = temp_dir("tables");
    cli::SignificanceTableOptions options;
    options.m_min = 2;
    options.m_max = 4;
    options.out_path = dir / "tables.csv";
    std::ostringstream log;
    cli::run_significance_table(options, log);
    const std::string csv = read_text(dir / "tables.csv");
    CHECK(csv.starts_with("# natdist"));
    CHECK(csv.find("seed=42") != std::string::npos);
    CHECK(csv.find("m,tail,method,rho,p_value\n") != std::string::npos);
    CHECK(csv.find("\n2,one-sided,exact-permutation,1,0.5\n") != std::string::npos);
    CHECK(csv.find("\n3,") != std::string::npos);
    CHECK(csv.find("\n4,") != std::string::npos);
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("sequence loading rejects duplicates and mixed models") {
    const auto dir = temp_dir("loading");
    std::ostringstream log;
    cli::run_distribution(tm_options(dir / "tm", 3, 3), log);

    cli::DistributionOptions eca = tm_options(dir / "tm", 4, 4);
    eca.model = ModelSpec{ModelKind::Eca};
    cli::run_distribution(eca, log);  // mixed model into the same directory
    CHECK_THROWS_AS(cli::load_sequence(dir / "tm"), IoError);
    CHECK_THROWS_AS(cli::load_sequence(dir / "empty_nowhere"), IoError);
    std::filesystem::remove_all(dir);
  }
}
