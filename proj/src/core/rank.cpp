#include "rank.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <unordered_set>

#include "error.hpp"
#include "text.hpp"

namespace fss {

int quartile_class(double percentile, double fss) noexcept {
  if (fss == 0.0) return 0;
  if (percentile >= 75.0) return 4;
  if (percentile >= 50.0) return 3;
  if (percentile >= 25.0) return 2;
  return 1;
}

RankingTable rank_sds(std::string sds_id, const Window& window,
                      std::vector<ScoredResearcher> population) {
  if (population.empty()) throw UsageError("cannot rank an empty population for " + sds_id);
  std::unordered_set<std::string_view> ids;
  for (const auto& member : population) {
    if (!std::isfinite(member.fss) || member.fss < 0.0) {
      throw UsageError("invalid fss for " + member.researcher_id);
    }
    if (!ids.insert(member.researcher_id).second) {
      throw UsageError("researcher " + member.researcher_id + " listed twice in " + sds_id);
    }
  }

  std::sort(population.begin(), population.end(), [](const auto& a, const auto& b) {
    if (a.fss != b.fss) return a.fss > b.fss;
    return a.researcher_id < b.researcher_id;
  });

  const double n = static_cast<double>(population.size());
  RankingTable table{std::move(sds_id), window, {}};
  table.entries.reserve(population.size());
  // Descending order: everything after a tie group scores strictly lower.
  std::size_t group_begin = 0;
  while (group_begin < population.size()) {
    std::size_t group_end = group_begin + 1;
    while (group_end < population.size() &&
           population[group_end].fss == population[group_begin].fss) {
      ++group_end;
    }
    const auto lower = population.size() - group_end;
    const auto ties = group_end - group_begin - 1;
    const double percentile =
        100.0 * (static_cast<double>(lower) + 0.5 * static_cast<double>(ties)) / n;
    for (auto i = group_begin; i < group_end; ++i) {
      auto& member = population[i];
      table.entries.push_back(RankingEntry{std::move(member.researcher_id), member.fss,
                                           percentile, quartile_class(percentile, member.fss)});
    }
    group_begin = group_end;
  }
  return table;
}

RankingTable rank_sds(std::string sds_id, const Window& window,
                      std::span<const std::string> population,
                      const std::unordered_map<std::string, double>& scores) {
  std::vector<ScoredResearcher> scored;
  scored.reserve(population.size());
  for (const auto& id : population) {
    const auto it = scores.find(id);
    if (it == scores.end()) throw UsageError("no score for researcher " + id);
    scored.push_back(ScoredResearcher{id, it->second});
  }
  return rank_sds(std::move(sds_id), window, std::move(scored));
}

std::string rankings_to_csv(std::span<const RankingTable> tables) {
  std::ostringstream out;
  out << "sds_id,window_start,window_end,researcher_id,fss,percentile,class\n";
  for (const auto& table : tables) {
    for (const auto& e : table.entries) {
      const std::string row[] = {table.sds_id,
                                 std::to_string(table.window.start),
                                 std::to_string(table.window.end),
                                 e.researcher_id,
                                 format_double(e.fss),
                                 format_double(e.percentile),
                                 std::to_string(e.quartile_class)};
      write_csv_row(out, row);
    }
  }
  return std::move(out).str();
}

}  // namespace fss
