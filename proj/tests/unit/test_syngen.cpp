#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>

#include "error.hpp"
#include "pipeline.hpp"
#include "sensitivity.hpp"
#include "study.hpp"
#include "syngen.hpp"
#include "temp_dir.hpp"
#include "text.hpp"

using namespace fss;
using fss::testing::TempDir;

namespace {

std::string read_tables(const std::filesystem::path& dir) {
  std::string all;
  for (const char* t : {"researchers", "publications", "authorship", "taxonomy", "latent_truth"}) {
    all += read_file(dir / (std::string(t) + ".csv"));
  }
  return all;
}

// Paired t statistic of a - b.
double paired_t(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> d;
  for (std::size_t i = 0; i < a.size(); ++i) d.push_back(a[i] - b[i]);
  const double n = static_cast<double>(d.size());
  const double mean = std::accumulate(d.begin(), d.end(), 0.0) / n;
  double ss = 0;
  for (const double x : d) ss += (x - mean) * (x - mean);
  return mean / std::sqrt(ss / (n - 1) / n);
}

}  // namespace

TEST_CASE("same seed gives byte-identical corpora") {
  GeneratorConfig config;
  config.seed = 42;
  TempDir a, b;
  write_generated(generate(config), a.path(), FileFormat::csv);
  write_generated(generate(config), b.path(), FileFormat::csv);
  CHECK(read_tables(a.path()) == read_tables(b.path()));

  config.seed = 43;
  TempDir c;
  write_generated(generate(config), c.path(), FileFormat::csv);
  CHECK(read_tables(a.path()) != read_tables(c.path()));
}

TEST_CASE("staff counts follow the configured range") {
  GeneratorConfig config;
  config.n_sds = 3;
  config.staff_min = config.staff_max = 10;
  const auto g = generate(config);
  CHECK(g.corpus.researchers().size() == 30);
  CHECK(g.corpus.taxonomy().size() == 3);
  CHECK(g.latent.size() == 30);

  config.staff_min = 5;
  config.staff_max = 8;
  const auto ranged = generate(config);
  CHECK(ranged.corpus.researchers().size() >= 15);
  CHECK(ranged.corpus.researchers().size() <= 24);
}

TEST_CASE("latent sidecar and positional share") {
  GeneratorConfig config;
  config.n_sds = 10;
  config.positional_share = 0.3;
  const auto g = generate(config);
  int positional = 0;
  for (const auto& t : g.corpus.taxonomy()) positional += t.positional_weighting ? 1 : 0;
  CHECK(positional == 3);
  TempDir dir;
  write_generated(g, dir.path(), FileFormat::json);
  const auto sidecar = read_csv(dir / "latent_truth.csv");
  CHECK(sidecar.header == std::vector<std::string>{"researcher_id", "latent_rate"});
  CHECK(sidecar.rows.size() == g.corpus.researchers().size());
  const std::vector<std::filesystem::path> paths{dir.path()};
  CHECK(load_corpus(paths, FileFormat::json, g.corpus.observation_date_label()) == g.corpus);
}

TEST_CASE("invalid generator settings are rejected") {
  GeneratorConfig config;
  config.staff_min = 10;
  config.staff_max = 5;
  CHECK_THROWS_AS(generate(config), UsageError);
  config = {};
  config.pub_rate = 0;
  CHECK_THROWS_AS(config.validate(), UsageError);
  config = {};
  config.noise = -0.1;
  CHECK_THROWS_AS(config.validate(), UsageError);

  CHECK(parse_generator_config(R"({"seed": 7, "years": "2001-2004", "noise": 0})").seed == 7);
  CHECK(parse_generator_config(R"({"years": "2001-2004"})").years == Window{2001, 2004});
  CHECK_THROWS_AS(parse_generator_config(R"({"sedd": 7})"), UsageError);
  CHECK_THROWS_AS(parse_generator_config(R"({"seed": "x"})"), UsageError);
}

TEST_CASE("without noise every annual ranking is the same") {
  GeneratorConfig config;
  config.noise = 0;
  config.stochastic_counts = false;
  config.quality_link = 0;
  config.multi_category_share = 0;
  config.positional_share = 0;
  config.roster_coauthor_share = 0;
  TempDir dir;
  write_generated(generate(config), dir / "corpus", FileFormat::csv);
  RunConfig run;
  run.inputs = {(dir / "corpus").string()};
  const Evaluation eval(run);
  REQUIRE(eval.eligible_sds().size() == 5);

  const auto first = eval.rank(Window{2003, 2003});
  bool any_productive = false;
  for (int year = 2004; year <= 2008; ++year) {
    const auto set = eval.rank(Window{year, year});
    REQUIRE(set.tables.size() == first.tables.size());
    for (std::size_t t = 0; t < set.tables.size(); ++t) {
      REQUIRE(set.tables[t].entries.size() == first.tables[t].entries.size());
      for (std::size_t k = 0; k < set.tables[t].entries.size(); ++k) {
        CHECK(set.tables[t].entries[k].researcher_id == first.tables[t].entries[k].researcher_id);
        CHECK(set.tables[t].entries[k].quartile_class == first.tables[t].entries[k].quartile_class);
        any_productive = any_productive || set.tables[t].entries[k].quartile_class > 0;
      }
    }
  }
  CHECK(any_productive);
}

TEST_CASE("more yearly noise means more annual class churn") {
  const std::vector<double> levels{0.1, 0.5, 1.5};
  std::vector<double> mean_delta1;
  for (const double noise : levels) {
    double sum = 0;
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
      GeneratorConfig config;
      config.seed = seed;
      config.noise = noise;
      sum += fss::testing::run_study(config).deltas.at(0);
    }
    mean_delta1.push_back(sum / 8);
  }
  CHECK(mean_delta1[0] < mean_delta1[1]);
  CHECK(mean_delta1[1] < mean_delta1[2]);
}

TEST_CASE("longer contiguous windows change class less, significantly over 20 seeds") {
  std::vector<double> d1, d2, d3;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    GeneratorConfig config;
    config.seed = seed;
    const auto r = fss::testing::run_study(config);
    REQUIRE(r.deltas.size() == 3);
    d1.push_back(r.deltas[0]);
    d2.push_back(r.deltas[1]);
    d3.push_back(r.deltas[2]);
  }
  // One-sided 1% critical value of Student's t with 19 degrees of freedom.
  constexpr double kCritical = 2.539;
  CHECK(paired_t(d1, d2) > kCritical);
  CHECK(paired_t(d2, d3) > kCritical);
}
