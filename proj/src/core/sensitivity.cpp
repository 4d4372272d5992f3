#include "sensitivity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "error.hpp"

namespace fss {
namespace {

std::unordered_map<std::string, std::string> uda_lookup(std::span<const TaxonomyEntry> taxonomy) {
  std::unordered_map<std::string, std::string> out;
  for (const auto& e : taxonomy) out.emplace(e.sds_id, e.uda_id);
  return out;
}

// Class vectors of the same researchers across several ranking sets.
struct Aligned {
  std::vector<std::string> uda;             // per researcher
  std::vector<std::vector<int>> classes;    // per researcher, one per set
};

Aligned align(std::span<const RankingSet* const> sets, std::span<const TaxonomyEntry> taxonomy,
              const ResearcherSet& excluded) {
  Aligned out;
  if (sets.empty()) return out;
  const auto udas = uda_lookup(taxonomy);
  const auto& base = *sets.front();
  for (const auto* other : sets) {
    if (other->tables.size() != base.tables.size()) {
      throw DataError(Issue{"population_mismatch", "", 0, "", other->window.label(),
                            "ranking sets cover different SDSs"});
    }
  }
  for (std::size_t t = 0; t < base.tables.size(); ++t) {
    const auto& table = base.tables[t];
    const auto uda = udas.find(table.sds_id);
    if (uda == udas.end()) {
      throw DataError(Issue{"dangling_reference", "", 0, "sds_id", table.sds_id,
                            "SDS not in taxonomy"});
    }
    std::vector<std::unordered_map<std::string_view, int>> lookup(sets.size());
    for (std::size_t s = 1; s < sets.size(); ++s) {
      const auto& other = sets[s]->tables[t];
      if (other.sds_id != table.sds_id || other.entries.size() != table.entries.size()) {
        throw DataError(Issue{"population_mismatch", "", 0, "sds_id", table.sds_id,
                              "ranking sets for " + base.window.label() + " and " +
                                  sets[s]->window.label() + " differ for this SDS"});
      }
      for (const auto& e : other.entries) lookup[s].emplace(e.researcher_id, e.quartile_class);
    }
    for (const auto& e : table.entries) {
      std::vector<int> classes{e.quartile_class};
      for (std::size_t s = 1; s < sets.size(); ++s) {
        const auto it = lookup[s].find(e.researcher_id);
        if (it == lookup[s].end()) {
          throw DataError(Issue{"population_mismatch", "", 0, "researcher_id", e.researcher_id,
                                "researcher missing from ranking for " +
                                    sets[s]->window.label()});
        }
        classes.push_back(it->second);
      }
      if (excluded.contains(e.researcher_id)) continue;
      out.uda.push_back(uda->second);
      out.classes.push_back(std::move(classes));
    }
  }
  return out;
}

ClassAgreement agreement(const std::vector<double>& a, const std::vector<double>& b) {
  ClassAgreement out;
  out.n = a.size();
  if (out.n == 0) return out;
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  out.mean_abs_class_diff = sum / static_cast<double>(out.n);
  if (out.n >= 2) {
    try {
      out.spearman_rho = spearman(a, b);
    } catch (const UndefinedError&) {
      out.spearman_rho.reset();
    }
  }
  return out;
}

void finish(TransitionCounts& c) {
  if (c.n == 0) return;
  const double n = static_cast<double>(c.n);
  c.decreasing_pct = 100.0 * static_cast<double>(c.decreasing) / n;
  c.increasing_pct = 100.0 * static_cast<double>(c.increasing) / n;
  c.total_pct = 100.0 * static_cast<double>(c.decreasing + c.increasing) / n;
}

}  // namespace

std::vector<Window> build_scenarios(int anchor_end, int max_length) {
  if (max_length < 1) throw UsageError("max window length must be at least 1");
  std::vector<Window> out;
  for (int length = 1; length <= max_length; ++length) {
    out.push_back(Window{anchor_end - length + 1, anchor_end});
  }
  return out;
}

std::vector<Window> partition_windows(const Window& full, int length) {
  if (!full.valid()) throw UsageError("invalid window " + full.label());
  if (length < 1 || full.length() % length != 0) {
    throw UsageError("length " + std::to_string(length) + " does not divide window " +
                     full.label());
  }
  std::vector<Window> out;
  for (int start = full.start; start <= full.end; start += length) {
    out.push_back(Window{start, start + length - 1});
  }
  return out;
}

std::vector<double> mid_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // Positions i+1 .. j share their mean rank.
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (auto k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw UsageError("spearman: vectors differ in length");
  if (x.size() < 2) throw UsageError("spearman: need at least two observations");
  const auto rx = mid_ranks(x);
  const auto ry = mid_ranks(y);
  // Mid-ranks always average to (n + 1) / 2.
  const double mean = 0.5 * static_cast<double>(x.size() + 1);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw UndefinedError("spearman: constant vector");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

ResearcherSet always_inactive(std::span<const RankingSet> chain) {
  std::unordered_map<std::string, std::size_t> zero_count;
  for (const auto& set : chain) {
    for (const auto& table : set.tables) {
      for (const auto& e : table.entries) {
        if (e.quartile_class == 0) ++zero_count[e.researcher_id];
      }
    }
  }
  ResearcherSet out;
  for (const auto& [id, count] : zero_count) {
    if (count == chain.size()) out.insert(id);
  }
  return out;
}

ScenarioComparison compare_adjacent(const RankingSet& a, const RankingSet& b,
                                    std::span<const TaxonomyEntry> taxonomy,
                                    const ResearcherSet& excluded) {
  const RankingSet* sets[] = {&a, &b};
  const auto aligned = align(sets, taxonomy, excluded);

  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> per_uda;
  std::vector<double> all_a, all_b;
  for (std::size_t i = 0; i < aligned.uda.size(); ++i) {
    const double ca = aligned.classes[i][0];
    const double cb = aligned.classes[i][1];
    auto& [va, vb] = per_uda[aligned.uda[i]];
    va.push_back(ca);
    vb.push_back(cb);
    all_a.push_back(ca);
    all_b.push_back(cb);
  }

  ScenarioComparison out;
  out.window_a = a.window;
  out.window_b = b.window;
  for (const auto& [uda, vectors] : per_uda) {
    out.by_uda.emplace(uda, agreement(vectors.first, vectors.second));
  }
  out.overall = agreement(all_a, all_b);
  out.n_compared = all_a.size();
  return out;
}

TransitionReport transitions(const RankingSet& first, const RankingSet& second,
                             const RankingSet& full, std::span<const TaxonomyEntry> taxonomy,
                             const ResearcherSet& excluded) {
  const RankingSet* sets[] = {&first, &second, &full};
  const auto aligned = align(sets, taxonomy, excluded);

  TransitionReport out;
  out.first = first.window;
  out.second = second.window;
  out.full = full.window;
  for (std::size_t i = 0; i < aligned.uda.size(); ++i) {
    const auto& c = aligned.classes[i];
    auto& counts = out.by_uda[aligned.uda[i]];
    ++counts.n;
    ++out.overall.n;
    if (c[2] != 4) continue;
    if (c[0] == 4 && c[1] < 4) {
      ++counts.decreasing;
      ++out.overall.decreasing;
    } else if (c[0] < 4 && c[1] == 4) {
      ++counts.increasing;
      ++out.overall.increasing;
    }
  }
  for (auto& [uda, counts] : out.by_uda) finish(counts);
  finish(out.overall);
  return out;
}

DeltaReport contiguous_deltas(const Window& full, std::span<const int> lengths,
                              std::span<const RankingSet> sets,
                              std::span<const TaxonomyEntry> taxonomy,
                              const ResearcherSet& excluded) {
  DeltaReport report;
  report.full = full;
  for (const int length : lengths) {
    DeltaSeries series;
    series.length = length;
    series.windows = partition_windows(full, length);
    std::vector<const RankingSet*> ordered;
    for (const auto& w : series.windows) {
      const auto it = std::find_if(sets.begin(), sets.end(),
                                   [&](const RankingSet& s) { return s.window == w; });
      if (it == sets.end()) {
        throw UsageError("no rankings for sub-window " + w.label());
      }
      ordered.push_back(&*it);
    }
    const auto aligned = align(ordered, taxonomy, excluded);
    const std::size_t pairs = ordered.size() - 1;

    std::map<std::string, std::pair<double, std::size_t>> per_uda;  // sum, researchers
    double total = 0.0;
    for (std::size_t i = 0; i < aligned.uda.size(); ++i) {
      const auto& c = aligned.classes[i];
      double sum = 0.0;
      for (std::size_t k = 0; k < pairs; ++k) sum += std::abs(c[k + 1] - c[k]);
      auto& [uda_sum, uda_n] = per_uda[aligned.uda[i]];
      uda_sum += sum;
      ++uda_n;
      total += sum;
    }
    auto make = [pairs](double sum, std::size_t n) {
      DeltaStat stat{n, pairs, 0.0};
      if (n > 0 && pairs > 0) stat.delta = sum / static_cast<double>(n * pairs);
      return stat;
    };
    for (const auto& [uda, acc] : per_uda) series.by_uda.emplace(uda, make(acc.first, acc.second));
    series.overall = make(total, aligned.uda.size());
    report.series.push_back(std::move(series));
  }
  return report;
}

TrendFit trend_fit(std::span<const double> series) {
  if (series.size() < 2) throw UsageError("trend fit needs at least two points");
  const double n = static_cast<double>(series.size());
  const double mean_x = 0.5 * (n - 1.0);
  double mean_y = 0.0;
  for (const double v : series) mean_y += v;
  mean_y /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double dx = static_cast<double>(i) - mean_x;
    sxy += dx * (series[i] - mean_y);
    sxx += dx * dx;
  }
  const double slope = sxy / sxx;
  return TrendFit{slope, mean_y - slope * mean_x};
}

}  // namespace fss
