#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corpus.hpp"

namespace fss {

struct BaselineCell {
  double median = 0.0;     // always > 0
  std::size_t count = 0;   // cited publications contributing to the median

  friend bool operator==(const BaselineCell&, const BaselineCell&) = default;
};

// Citation median per (subject category, publication year). Only cited
// publications enter a cell, so a cell whose publications are all uncited is
// absent rather than zero.
class BaselineTable {
 public:
  using Key = std::pair<std::string, int>;
  struct KeyLess {
    using is_transparent = void;
    template <typename A, typename B>
    bool operator()(const A& a, const B& b) const {
      const std::string_view ca(a.first), cb(b.first);
      return ca < cb || (ca == cb && a.second < b.second);
    }
  };
  using CellMap = std::map<Key, BaselineCell, KeyLess>;

  std::optional<BaselineCell> find(std::string_view category, int year) const;
  // Throws UsageError if median <= 0 or count == 0.
  void set(std::string category, int year, BaselineCell cell);

  const CellMap& cells() const noexcept { return cells_; }
  std::size_t size() const noexcept { return cells_.size(); }

  friend bool operator==(const BaselineTable&, const BaselineTable&) = default;

 private:
  CellMap cells_;
};

// Where a run's baselines came from; recorded in reports.
enum class BaselineSource { corpus, reference, imported };
std::string_view baseline_source_name(BaselineSource source);

// Median with the even-count convention of averaging the two central values.
// Precondition: non-empty.
double median(std::vector<std::int64_t> values);

BaselineTable build_baselines(std::span<const Publication> publications);
BaselineTable build_baselines(const Corpus& corpus);

// How a multi-category publication averages its per-category standardized
// values. Empty = equal weights; otherwise weights[k] applies to the k-th
// listed category (the last weight repeats for longer lists). Weights are
// renormalized over the categories that have a baseline.
struct CategoryWeights {
  std::vector<double> by_position;

  double weight(std::size_t position) const;
  std::string label() const;  // "equal" or "w0;w1;..."
  static CategoryWeights parse(std::string_view text);
};

// c / Me for a single-category publication; the weighted mean of c / Me_j
// over categories with a baseline otherwise. nullopt when no listed category
// has a baseline for the publication year.
std::optional<double> standardized_score(const Publication& pub, const BaselineTable& baselines,
                                         const CategoryWeights& weights = {});

// CSV with header category,year,median,count.
std::string baselines_to_csv(const BaselineTable& baselines);
BaselineTable baselines_from_csv(const std::filesystem::path& path);

}  // namespace fss
