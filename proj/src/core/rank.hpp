#pragma once

#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "window.hpp"

namespace fss {

struct RankingEntry {
  std::string researcher_id;
  double fss = 0.0;
  double percentile = 0.0;  // [0, 100)
  int quartile_class = 0;   // 4 = top quartile ... 1 = bottom; 0 = unproductive

  friend bool operator==(const RankingEntry&, const RankingEntry&) = default;
};

// One SDS ranked over one window, by descending fss (ties by researcher id).
struct RankingTable {
  std::string sds_id;
  Window window;
  std::vector<RankingEntry> entries;

  friend bool operator==(const RankingTable&, const RankingTable&) = default;
};

struct ScoredResearcher {
  std::string researcher_id;
  double fss = 0.0;
};

// Class from a mid-rank percentile; fss == 0 always maps to class 0.
int quartile_class(double percentile, double fss) noexcept;

// Mid-rank percentile 100 * (below + 0.5 * ties) / N over the whole
// population, unproductive researchers included. Throws UsageError on an
// empty population, duplicate ids, or negative/non-finite scores.
RankingTable rank_sds(std::string sds_id, const Window& window,
                      std::vector<ScoredResearcher> population);

// Throws UsageError when a member of `population` has no score.
RankingTable rank_sds(std::string sds_id, const Window& window,
                      std::span<const std::string> population,
                      const std::unordered_map<std::string, double>& scores);

// Header sds_id,window_start,window_end,researcher_id,fss,percentile,class.
std::string rankings_to_csv(std::span<const RankingTable> tables);

}  // namespace fss
