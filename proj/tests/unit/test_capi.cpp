#include <catch2/catch_amalgamated.hpp>

#include <fss/fss.h>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "temp_dir.hpp"

using Catch::Approx;
using fss::testing::TempDir;
using nlohmann::json;

namespace {

const std::string kSmall = std::string(FSS_TEST_DATA_DIR) + "/small";
const std::string kFixture = std::string(FSS_TEST_DATA_DIR) + "/fixture";

// Takes ownership of a library-allocated string.
std::string take(char* s) {
  std::string out = s ? s : "";
  fss_string_free(s);
  return out;
}

struct Loaded {
  fss_corpus* corpus = nullptr;
  fss_baselines* baselines = nullptr;
  Loaded() {
    const char* paths[] = {kSmall.c_str()};
    REQUIRE(fss_corpus_load(paths, 1, "csv", "2010-12-31", &corpus) == FSS_OK);
    REQUIRE(fss_baselines_build(corpus, &baselines) == FSS_OK);
  }
  ~Loaded() {
    fss_baselines_free(baselines);
    fss_corpus_free(corpus);
  }
};

}  // namespace

TEST_CASE("version string") { CHECK(std::string(fss_version()) == "1.0.0"); }

TEST_CASE("corpus handle and counts") {
  Loaded l;
  size_t r = 0, p = 0, a = 0, s = 0;
  REQUIRE(fss_corpus_counts(l.corpus, &r, &p, &a, &s) == FSS_OK);
  CHECK(r == 2);
  CHECK(p == 3);
  CHECK(a == 6);
  CHECK(s == 2);

  char* staff = nullptr;
  REQUIRE(fss_stable_staff(l.corpus, 2005, 2008, &staff) == FSS_OK);
  CHECK(json::parse(take(staff)) == json::array({"R1", "R2"}));
  REQUIRE(fss_stable_staff(l.corpus, 2004, 2008, &staff) == FSS_OK);
  CHECK(json::parse(take(staff)) == json::array({"R1"}));

  char* eligible = nullptr;
  REQUIRE(fss_eligible_sds(l.corpus, 2005, 2008, 0.5, 1, &eligible) == FSS_OK);
  CHECK(json::parse(take(eligible)) == json::array({"BIO/10", "MAT/05"}));
}

TEST_CASE("scores on the small fixture") {
  Loaded l;
  double v = 0;
  REQUIRE(fss_baseline_median(l.baselines, "BIOCHEM", 2006, &v) == FSS_OK);
  CHECK(v == 4.0);
  CHECK(fss_baseline_median(l.baselines, "MATH", 2007, &v) == FSS_ERR_UNDEFINED);

  REQUIRE(fss_standardized_score(l.corpus, l.baselines, "P3", &v) == FSS_OK);
  CHECK(v == 1.0);
  CHECK(fss_standardized_score(l.corpus, l.baselines, "P2", &v) == FSS_ERR_UNDEFINED);
  CHECK(fss_standardized_score(l.corpus, l.baselines, "nope", &v) == FSS_ERR_INVALID_ARGUMENT);

  // R1: P1 (1.0 at 1/2) + P3 (1.0 at 1/3); positional scheme falls back below four authors.
  REQUIRE(fss_score(l.corpus, l.baselines, "R1", 2003, 2008, &v) == FSS_OK);
  CHECK(v == Approx(5.0 / 6.0).margin(1e-15));
  REQUIRE(fss_score(l.corpus, l.baselines, "R2", 2003, 2008, &v) == FSS_OK);
  CHECK(v == Approx(1.0 / 3.0).margin(1e-15));
  CHECK(fss_score(l.corpus, l.baselines, "R1", 2009, 2003, &v) == FSS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("baselines save and load") {
  Loaded l;
  TempDir dir;
  const auto path = (dir / "b.csv").string();
  REQUIRE(fss_baselines_save(l.baselines, path.c_str()) == FSS_OK);
  fss_baselines* again = nullptr;
  REQUIRE(fss_baselines_load(path.c_str(), &again) == FSS_OK);
  double v = 0;
  REQUIRE(fss_baseline_median(again, "CELLBIO", 2008, &v) == FSS_OK);
  CHECK(v == 9.0);
  fss_baselines_free(again);
  CHECK(fss_baselines_load((dir / "missing.csv").string().c_str(), &again) == FSS_ERR_DATA);
}

TEST_CASE("weights and statistics") {
  const char* inst[] = {"U1", "U2", "U3", "U4", "U5", "U6"};
  double w[6];
  REQUIRE(fss_author_weights(inst, 6, FSS_WEIGHTS_POSITIONAL, w) == FSS_OK);
  CHECK(w[0] == 0.30);
  CHECK(w[2] == Approx(0.05).margin(1e-15));
  REQUIRE(fss_author_weights(inst, 6, FSS_WEIGHTS_UNIFORM, w) == FSS_OK);
  CHECK(w[5] == Approx(1.0 / 6).margin(1e-15));
  CHECK(fss_author_weights(inst, 0, FSS_WEIGHTS_UNIFORM, w) == FSS_ERR_INVALID_ARGUMENT);

  const double x[] = {1, 2, 2, 4};
  const double y[] = {1, 3, 2, 4};
  const double flat[] = {1, 1, 1, 1};
  double rho = 0;
  REQUIRE(fss_spearman(x, y, 4, &rho) == FSS_OK);
  CHECK(rho == Approx(3.0 / std::sqrt(10.0)).margin(1e-12));
  CHECK(fss_spearman(x, flat, 4, &rho) == FSS_ERR_UNDEFINED);

  const double series[] = {0, 4, 0, 4};
  double slope = 0, intercept = 0;
  REQUIRE(fss_trend_fit(series, 4, &slope, &intercept) == FSS_OK);
  CHECK(slope == Approx(0.8).margin(1e-15));
  CHECK(intercept == Approx(0.8).margin(1e-15));
}

TEST_CASE("data errors carry a machine-readable issue list") {
  TempDir dir;
  for (const char* t : {"researchers", "publications", "taxonomy"}) {
    std::ifstream in(kSmall + "/" + t + ".csv");
    std::ofstream(dir / (std::string(t) + ".csv")) << in.rdbuf();
  }
  std::ofstream(dir / "authorship.csv") << "pub_id,position,researcher_id,institution_id\n"
                                           "P1,1,R1,U1\nP2,1,R2,U2\nP3,1,R1,U1\nX9,1,R2,U2\n";
  const std::string path = dir.path().string();
  const char* paths[] = {path.c_str()};
  fss_corpus* corpus = nullptr;
  CHECK(fss_corpus_load(paths, 1, "csv", nullptr, &corpus) == FSS_ERR_DATA);
  CHECK(corpus == nullptr);
  CHECK(std::string(fss_last_error()).find("X9") != std::string::npos);
  const auto issues = json::parse(fss_last_error_json());
  REQUIRE(issues.is_array());
  bool found = false;
  for (const auto& i : issues) found = found || (i.at("key") == "X9" && i.at("kind") == "dangling_reference");
  CHECK(found);

  CHECK(fss_corpus_load(paths, 1, "xml", nullptr, &corpus) == FSS_ERR_INVALID_ARGUMENT);
  CHECK(fss_corpus_load(nullptr, 0, "csv", nullptr, &corpus) == FSS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("corpus write round trip") {
  Loaded l;
  TempDir dir;
  const auto out = dir.path().string();
  REQUIRE(fss_corpus_write(l.corpus, out.c_str(), "json") == FSS_OK);
  const char* paths[] = {out.c_str()};
  fss_corpus* again = nullptr;
  REQUIRE(fss_corpus_load(paths, 1, "json", nullptr, &again) == FSS_OK);
  size_t r = 0, p = 0, a = 0, s = 0;
  fss_corpus_counts(again, &r, &p, &a, &s);
  CHECK(p == 3);
  fss_corpus_free(again);
}

TEST_CASE("runs through the C interface") {
  TempDir dir;
  const json config{{"inputs", {kFixture}}, {"output_dir", (dir / "out").string()},
                    {"report_formats", {"json", "text"}}};
  char* report = nullptr;
  REQUIRE(fss_run_rank(config.dump().c_str(), &report) == FSS_OK);
  CHECK(json::parse(take(report)).at("files").size() == 12);
  REQUIRE(fss_run_analyze(config.dump().c_str(), nullptr) == FSS_OK);
  char* text = nullptr;
  REQUIRE(fss_render_report((dir / "out" / "analysis.json").string().c_str(), &text) == FSS_OK);
  CHECK(take(text).find("Spearman") != std::string::npos);

  CHECK(fss_run_rank("{\"bogus\": 1}", nullptr) == FSS_ERR_INVALID_ARGUMENT);
  CHECK(fss_run_rank("not json", nullptr) == FSS_ERR_INVALID_ARGUMENT);

  const auto gen_dir = (dir / "gen").string();
  REQUIRE(fss_generate(R"({"seed": 3, "n_sds": 2, "staff_min": 10, "staff_max": 10})", gen_dir.c_str(),
                       "csv") == FSS_OK);
  const char* paths[] = {gen_dir.c_str()};
  fss_corpus* corpus = nullptr;
  REQUIRE(fss_corpus_load(paths, 1, "csv", nullptr, &corpus) == FSS_OK);
  size_t r = 0, p = 0, a = 0, s = 0;
  fss_corpus_counts(corpus, &r, &p, &a, &s);
  CHECK(r == 20);
  CHECK(s == 2);
  fss_corpus_free(corpus);
}
