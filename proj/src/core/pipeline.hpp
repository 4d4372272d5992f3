#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "corpus.hpp"
#include "normalize.hpp"
#include "scoring.hpp"
#include "sensitivity.hpp"
#include "window.hpp"

namespace fss {

inline constexpr std::string_view kToolVersion = "1.0.0";

// Everything that defines a run. All fields except `threads` are recorded
// verbatim in every report; the thread count cannot change any output.
struct RunConfig {
  std::vector<std::string> inputs;
  std::string format = "csv";
  std::string reference_publications;  // optional: baselines from this set instead
  std::string baselines_in;            // optional: import baselines CSV
  std::string observation_date;        // free-form label
  int anchor_year = 2008;
  int max_length = 6;
  std::string percentile_convention = "midrank";
  std::string category_weights = "equal";
  double min_active_share = 0.5;
  int min_members = 10;
  int transition_length = 3;
  std::vector<int> delta_lengths{1, 2, 3};
  std::string output_dir = "out";
  std::vector<std::string> report_formats{"json", "csv"};
  bool export_baselines = false;
  int threads = 1;

  Window reference_window() const { return Window{anchor_year - max_length + 1, anchor_year}; }
  bool wants(std::string_view report_format) const;
};

// Throws UsageError on unknown keys, wrong types or invalid values.
RunConfig parse_run_config(std::string_view json_text);
// The recorded form (no thread count), as pretty-printed JSON.
std::string run_config_json(const RunConfig& config);

// A loaded corpus with everything needed to rank any window: baselines,
// eligible SDSs and their fixed populations (stable staff over the
// reference window).
class Evaluation {
 public:
  explicit Evaluation(const RunConfig& config);

  const RunConfig& config() const noexcept { return config_; }
  const Corpus& corpus() const noexcept { return corpus_; }
  const BaselineTable& baselines() const noexcept { return baselines_; }
  BaselineSource baseline_source() const noexcept { return baseline_source_; }
  const std::string& input_sha256() const noexcept { return input_sha256_; }
  const std::vector<std::string>& input_files() const noexcept { return input_files_; }
  const std::vector<std::string>& eligible_sds() const noexcept { return eligible_; }
  std::size_t evaluated_researchers() const noexcept;

  RankingSet rank(const Window& window) const;
  // Summed over the evaluated population for one window.
  FssScore diagnostics(const Window& window) const;

 private:
  RunConfig config_;
  Corpus corpus_;
  BaselineTable baselines_;
  BaselineSource baseline_source_ = BaselineSource::corpus;
  std::string input_sha256_;
  std::vector<std::string> input_files_;
  std::vector<std::string> eligible_;
  std::vector<std::vector<std::size_t>> population_;  // researcher indices per eligible SDS
  std::unique_ptr<Scorer> scorer_;
};

// Ranks every eligible SDS over every window of the scenario chain, writes
// one CSV per (SDS, window) under <output_dir>/rankings/ and a
// rank_report.json. Returns the report text.
std::string run_rank(const RunConfig& config);

// Runs the comparison chain, the transition analysis and the contiguous
// window deltas; writes analysis.json plus plot-data CSVs. Returns the
// report text.
std::string run_analyze(const RunConfig& config);

// Human-readable tables from an analysis.json document.
std::string render_text_report(std::string_view analysis_json);

// File-system safe form of an SDS id.
std::string file_stem_for(std::string_view sds_id);

}  // namespace fss
