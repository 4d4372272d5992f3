#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>

#include "error.hpp"
#include "pipeline.hpp"
#include "sensitivity.hpp"
#include "temp_dir.hpp"
#include "text.hpp"

using namespace fss;
using nlohmann::json;
using fss::testing::TempDir;

namespace {

const std::filesystem::path kFixture = std::filesystem::path(FSS_TEST_DATA_DIR) / "fixture";
const std::filesystem::path kGolden = std::filesystem::path(FSS_TEST_GOLDEN_DIR) / "fixture";

RunConfig fixture_config(const TempDir& dir) {
  RunConfig c;
  c.inputs = {kFixture.string()};
  c.output_dir = (dir / "out").string();
  return c;
}

std::map<std::string, std::string> snapshot(const std::filesystem::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : std::filesystem::recursive_directory_iterator(dir)) {
    if (e.is_regular_file()) out[std::filesystem::relative(e.path(), dir).string()] = read_file(e.path());
  }
  return out;
}

// Classes per researcher from one golden ranking file.
std::map<std::string, int> golden_classes(const std::string& sds, const std::string& label) {
  const auto t = read_csv(kGolden / "rankings" / (sds + "_" + label + ".csv"));
  std::map<std::string, int> out;
  for (const auto& row : t.rows) out[row[3]] = std::stoi(row[6]);
  return out;
}

}  // namespace

TEST_CASE("run config parsing is strict and omits the thread count when recorded") {
  const auto c = parse_run_config(
      R"({"inputs": ["a", "b"], "anchor_year": 2010, "max_length": 3, "threads": 4,
          "delta_lengths": [1, 3], "report_formats": ["json", "text"]})");
  CHECK(c.inputs == std::vector<std::string>{"a", "b"});
  CHECK(c.reference_window() == Window{2008, 2010});
  CHECK(c.threads == 4);
  CHECK(c.wants("text"));
  CHECK_FALSE(c.wants("csv"));
  const auto recorded = json::parse(run_config_json(c));
  CHECK_FALSE(recorded.contains("threads"));
  CHECK(recorded.at("anchor_year") == 2010);
  CHECK(parse_run_config(run_config_json(c)).delta_lengths == c.delta_lengths);

  CHECK_THROWS_AS(parse_run_config(R"({"anchr_year": 2008})"), UsageError);
  CHECK_THROWS_AS(parse_run_config(R"({"max_length": "six"})"), UsageError);
  CHECK_THROWS_AS(parse_run_config(R"({"max_length": 0})"), UsageError);
  CHECK_THROWS_AS(parse_run_config(R"({"min_members": 0})"), UsageError);
  CHECK_THROWS_AS(parse_run_config(R"({"percentile_convention": "other"})"), UsageError);
  CHECK_THROWS_AS(parse_run_config(R"({"report_formats": ["pdf"]})"), UsageError);
}

TEST_CASE("evaluation population on the fixture") {
  TempDir dir;
  const Evaluation eval(fixture_config(dir));
  // GAMMA has five members; A11 joins in 2005 and is outside the stable staff.
  CHECK(eval.eligible_sds() == std::vector<std::string>{"ALPHA", "BETA"});
  CHECK(eval.evaluated_researchers() == 20);
  CHECK(eval.baseline_source() == BaselineSource::corpus);
  CHECK(eval.input_sha256().size() == 64);
  const auto set = eval.rank(Window{2003, 2008});
  REQUIRE(set.tables.size() == 2);
  CHECK(set.tables[0].sds_id == "ALPHA");
  for (const auto& e : set.tables[0].entries) CHECK(e.researcher_id != "A11");

  // Every table holds exactly the SDS's stable staff over the reference window.
  const auto staff = stable_staff(eval.corpus(), Window{2003, 2008});
  for (const auto& window : build_scenarios(2008, 6)) {
    for (const auto& table : eval.rank(window).tables) {
      std::vector<std::string> expected, got;
      for (const auto& id : staff) {
        if (eval.corpus().researchers()[*eval.corpus().find_researcher(id)].sds_id == table.sds_id) {
          expected.push_back(id);
        }
      }
      for (const auto& e : table.entries) got.push_back(e.researcher_id);
      std::sort(got.begin(), got.end());
      CHECK(got == expected);
    }
  }
}

TEST_CASE("rank writes one file per SDS and window matching the golden output") {
  TempDir dir;
  const auto config = fixture_config(dir);
  const auto report = json::parse(run_rank(config));
  CHECK(report.at("report") == "rank");
  CHECK(report.at("tool").at("name") == "fss");
  CHECK(report.at("files").size() == 12);
  CHECK(report.at("scenarios").size() == 6);
  CHECK(report.at("warnings").empty());
  CHECK(report.at("run_config") == json::parse(run_config_json(config)));
  CHECK(report.at("inputs").at("sha256").get<std::string>().size() == 64);

  const auto produced = snapshot(dir / "out" / "rankings");
  const auto golden = snapshot(kGolden / "rankings");
  CHECK(produced.size() == 12);
  CHECK(produced == golden);
  CHECK(nlohmann::ordered_json::parse(read_file(dir / "out" / "rank_report.json")).dump() ==
        nlohmann::ordered_json::parse(run_rank(config)).dump());
}

TEST_CASE("analysis plot data matches the golden output and agrees with the rankings") {
  TempDir dir;
  const auto report = json::parse(run_analyze(fixture_config(dir)));
  CHECK(read_file(dir / "out" / "plot_scenarios.csv") == read_file(kGolden / "plot_scenarios.csv"));
  CHECK(read_file(dir / "out" / "plot_trends.csv") == read_file(kGolden / "plot_trends.csv"));

  // Recompute the first chain pair by a flat loop over the golden files.
  std::set<std::string> always_zero;
  const auto chain = build_scenarios(2008, 6);
  std::map<std::string, int> zero_count;
  for (const auto& w : chain) {
    for (const char* sds : {"ALPHA", "BETA"}) {
      for (const auto& [id, c] : golden_classes(sds, w.label())) zero_count[id] += c == 0;
    }
  }
  for (const auto& [id, n] : zero_count) {
    if (n == 6) always_zero.insert(id);
  }
  double sum = 0;
  int compared = 0;
  for (const char* sds : {"ALPHA", "BETA"}) {
    const auto a = golden_classes(sds, "2008");
    const auto b = golden_classes(sds, "2007-2008");
    for (const auto& [id, c] : a) {
      if (always_zero.contains(id)) continue;
      sum += std::abs(c - b.at(id));
      ++compared;
    }
  }
  const auto& first = report.at("comparison_chain").at("pairs").at(0);
  CHECK(first.at("n_compared") == compared);
  CHECK(first.at("overall").at("mean_abs_class_diff").get<double>() ==
        Catch::Approx(sum / compared).margin(1e-12));
  CHECK(report.at("excluded_always_inactive") == always_zero.size());
  CHECK(report.at("transitions").at("status") == "ok");
  CHECK(report.at("deltas").at("series").size() == 3);
}

TEST_CASE("a single-window run marks the analyses not applicable") {
  TempDir dir;
  auto config = fixture_config(dir);
  config.anchor_year = 2008;
  config.max_length = 1;
  const auto report = json::parse(run_analyze(config));
  CHECK(report.at("comparison_chain").at("status") == "not applicable");
  CHECK_FALSE(report.at("comparison_chain").at("reason").get<std::string>().empty());
  CHECK(report.at("transitions").at("status") == "not applicable");
  CHECK(report.at("deltas").at("status") == "not applicable");
  const auto text = render_text_report(read_file(dir / "out" / "analysis.json"));
  CHECK(text.find("not applicable") != std::string::npos);
}

TEST_CASE("no eligible SDS is a successful run with a warning") {
  TempDir dir;
  auto config = fixture_config(dir);
  config.min_members = 50;
  const auto report = json::parse(run_rank(config));
  CHECK(report.at("files").empty());
  REQUIRE(report.at("warnings").size() == 1);
  const auto analysis = json::parse(run_analyze(config));
  CHECK(analysis.at("comparison_chain").at("status") == "not applicable");
}

TEST_CASE("exported baselines re-imported give the same rankings") {
  TempDir dir;
  auto config = fixture_config(dir);
  config.export_baselines = true;
  run_rank(config);
  const auto first = snapshot(dir / "out" / "rankings");

  TempDir dir2;
  auto imported = fixture_config(dir2);
  imported.baselines_in = (dir / "out" / "baselines.csv").string();
  const auto report = json::parse(run_rank(imported));
  CHECK(report.at("baseline_source") == "imported");
  CHECK(snapshot(dir2 / "out" / "rankings") == first);

  TempDir dir3;
  auto reference = fixture_config(dir3);
  reference.reference_publications = (kFixture / "publications.csv").string();
  CHECK(json::parse(run_rank(reference)).at("baseline_source") == "reference");
  CHECK(snapshot(dir3 / "out" / "rankings") == first);
}

TEST_CASE("reports do not depend on the thread count") {
  TempDir dir;
  auto config = fixture_config(dir);
  config.report_formats = {"json", "csv", "text"};
  std::vector<std::map<std::string, std::string>> runs;
  for (const int threads : {1, 3, 1}) {
    std::filesystem::remove_all(dir / "out");
    config.threads = threads;
    run_rank(config);
    run_analyze(config);
    runs.push_back(snapshot(dir / "out"));
  }
  CHECK(runs[0] == runs[1]);
  CHECK(runs[0] == runs[2]);
  CHECK(runs[0].contains("analysis.txt"));
}

TEST_CASE("bad inputs surface as data errors") {
  TempDir dir;
  auto config = fixture_config(dir);
  config.inputs = {(dir / "missing").string()};
  CHECK_THROWS_AS(run_rank(config), DataError);
  CHECK_THROWS_AS(render_text_report("{}"), DataError);
}

TEST_CASE("file stems are file-system safe") {
  CHECK(file_stem_for("BIO/10") != "BIO/10");
  CHECK(file_stem_for("BIO/10").find('/') == std::string::npos);
  CHECK(file_stem_for("MAT-05") == "MAT-05");
}
