#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "corpus.hpp"
#include "rank.hpp"
#include "window.hpp"

namespace fss {

// Rankings of every evaluated SDS for one window, sorted by sds_id.
struct RankingSet {
  Window window;
  std::vector<RankingTable> tables;
};

// Growing windows that all end at `anchor_end`: lengths 1, 2, ..., max_length.
std::vector<Window> build_scenarios(int anchor_end, int max_length);

// Consecutive non-overlapping sub-windows of `length` years covering `full`.
// Throws UsageError unless `length` divides the full window length.
std::vector<Window> partition_windows(const Window& full, int length);

// Average (1-based) ranks; tied values share the mean of their positions.
std::vector<double> mid_ranks(std::span<const double> values);

// Tie-corrected Spearman rho: Pearson correlation of the mid-rank vectors.
// Throws UsageError for unequal lengths or fewer than two points and
// UndefinedError when either vector is constant.
double spearman(std::span<const double> x, std::span<const double> y);

using ResearcherSet = std::unordered_set<std::string>;

// Researchers whose class is 0 in every set of the chain.
ResearcherSet always_inactive(std::span<const RankingSet> chain);

struct ClassAgreement {
  std::size_t n = 0;
  double mean_abs_class_diff = 0.0;
  std::optional<double> spearman_rho;  // nullopt when undefined
};

struct ScenarioComparison {
  Window window_a;
  Window window_b;
  std::map<std::string, ClassAgreement> by_uda;
  ClassAgreement overall;  // pooled over every compared researcher
  std::size_t n_compared = 0;
};

// Per UDA: mean |class_a - class_b| and Spearman rho of the paired classes,
// skipping `excluded` researchers. Throws DataError when the two sets do not
// rank the same researchers in the same SDSs.
ScenarioComparison compare_adjacent(const RankingSet& a, const RankingSet& b,
                                    std::span<const TaxonomyEntry> taxonomy,
                                    const ResearcherSet& excluded = {});

struct TransitionCounts {
  std::size_t n = 0;
  std::size_t decreasing = 0;
  std::size_t increasing = 0;
  double decreasing_pct = 0.0;
  double increasing_pct = 0.0;
  double total_pct = 0.0;
};

struct TransitionReport {
  Window first;
  Window second;
  Window full;
  std::map<std::string, TransitionCounts> by_uda;
  TransitionCounts overall;
};

// Top-class (4) movements between two consecutive windows that the full
// window hides: decreasing = 4 then <4, increasing = <4 then 4, both only
// counted when the full-window class is 4. Percentages are of all compared
// researchers.
TransitionReport transitions(const RankingSet& first, const RankingSet& second,
                             const RankingSet& full, std::span<const TaxonomyEntry> taxonomy,
                             const ResearcherSet& excluded = {});

struct DeltaStat {
  std::size_t researchers = 0;
  std::size_t pairs = 0;  // consecutive sub-window pairs per researcher
  double delta = 0.0;     // mean |class change| over researchers and pairs
};

struct DeltaSeries {
  int length = 0;
  std::vector<Window> windows;
  std::map<std::string, DeltaStat> by_uda;
  DeltaStat overall;
};

struct DeltaReport {
  Window full;
  std::vector<DeltaSeries> series;  // in the order of `lengths`
};

// For each length k, partitions `full` into k-year windows and averages the
// absolute class change between consecutive ones. `sets` must contain a
// ranking set for every sub-window (order irrelevant).
DeltaReport contiguous_deltas(const Window& full, std::span<const int> lengths,
                              std::span<const RankingSet> sets,
                              std::span<const TaxonomyEntry> taxonomy,
                              const ResearcherSet& excluded = {});

struct TrendFit {
  double slope = 0.0;      // class units per period
  double intercept = 0.0;  // fitted class at period index 0
};

// Ordinary least squares over (index, value), index starting at 0.
TrendFit trend_fit(std::span<const double> series);

}  // namespace fss
