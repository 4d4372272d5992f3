#pragma once

// Reference implementations used only by tests. They deliberately avoid the
// library's code paths: flat loops over raw tables, explicit sorting, and the
// textbook tie-corrected Spearman formula instead of Pearson-on-ranks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "corpus.hpp"
#include "window.hpp"

namespace fss::oracle {

inline std::optional<double> sorted_median(std::vector<std::int64_t> v) {
  if (v.empty()) return std::nullopt;
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  if (n % 2 == 1) return static_cast<double>(v[n / 2]);
  return (static_cast<double>(v[n / 2 - 1]) + static_cast<double>(v[n / 2])) / 2.0;
}

// Median of positive citation counts of every publication in `pubs` that
// lists `category` and appeared in `year`.
inline std::optional<double> cell_median(const std::vector<Publication>& pubs,
                                         const std::string& category, int year) {
  std::vector<std::int64_t> cited;
  for (const auto& p : pubs) {
    if (p.year != year || p.citation_count == 0) continue;
    if (std::find(p.subject_categories.begin(), p.subject_categories.end(), category) !=
        p.subject_categories.end()) {
      cited.push_back(p.citation_count);
    }
  }
  return sorted_median(cited);
}

// Whole-byline credit shares from institutions, written out rule by rule.
inline std::vector<double> byline_weights(const std::vector<std::string>& inst, bool positional) {
  const std::size_t s = inst.size();
  std::vector<double> w(s, 1.0 / static_cast<double>(s));
  if (!positional || s < 4) return w;
  if (inst.front() == inst.back()) {
    std::fill(w.begin(), w.end(), 0.20 / static_cast<double>(s - 2));
    w.front() = 0.40;
    w.back() = 0.40;
    return w;
  }
  const std::set<std::string> head{inst[0], inst[1]};
  const bool disjoint = !head.contains(inst[s - 2]) && !head.contains(inst[s - 1]);
  if (s >= 5 && disjoint) {
    std::fill(w.begin(), w.end(), 0.10 / static_cast<double>(s - 4));
    w[0] = w[s - 1] = 0.30;
    w[1] = w[s - 2] = 0.15;
  }
  return w;
}

// FSS by brute force: scan every authorship row, recompute each median from
// scratch.
inline double brute_force_fss(const CorpusData& data, const std::string& researcher_id,
                              const Window& w) {
  std::map<std::string, std::string> sds_of;
  for (const auto& r : data.researchers) sds_of[r.id] = r.sds_id;
  bool positional = false;
  for (const auto& t : data.taxonomy) {
    if (t.sds_id == sds_of.at(researcher_id)) positional = t.positional_weighting;
  }
  double total = 0.0;
  for (const auto& entry : data.authorship) {
    if (!entry.researcher_id || *entry.researcher_id != researcher_id) continue;
    const Publication* pub = nullptr;
    for (const auto& p : data.publications) {
      if (p.id == entry.pub_id) pub = &p;
    }
    if (pub->year < w.start || pub->year > w.end) continue;

    std::vector<std::pair<int, std::string>> byline;
    for (const auto& other : data.authorship) {
      if (other.pub_id == entry.pub_id) byline.emplace_back(other.position, other.institution_id);
    }
    std::sort(byline.begin(), byline.end());
    std::vector<std::string> inst;
    for (const auto& [pos, i] : byline) inst.push_back(i);
    const double weight =
        byline_weights(inst, positional)[static_cast<std::size_t>(entry.position - 1)];

    double sum = 0.0;
    int defined = 0;
    for (const auto& c : pub->subject_categories) {
      const auto me = cell_median(data.publications, c, pub->year);
      if (!me) continue;
      sum += static_cast<double>(pub->citation_count) / *me;
      ++defined;
    }
    if (defined == 0) continue;
    total += (sum / defined) * weight;
  }
  return total;
}

// 1-based average ranks by counting.
inline std::vector<double> average_ranks(const std::vector<double>& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double below = 0, equal = 0;
    for (const double x : v) {
      if (x < v[i]) ++below;
      if (x == v[i]) ++equal;
    }
    r[i] = below + (equal + 1.0) / 2.0;
  }
  return r;
}

// Classic tie-corrected Spearman:
//   rho = (Sx + Sy - sum d^2) / (2 sqrt(Sx Sy)),  Sx = (n^3 - n)/12 - sum (t^3 - t)/12
inline std::optional<double> spearman_ties(const std::vector<double>& x,
                                           const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  auto tie_sum = [](const std::vector<double>& v) {
    std::map<double, double> counts;
    for (const double a : v) counts[a] += 1;
    double s = 0;
    for (const auto& [value, t] : counts) s += (t * t * t - t) / 12.0;
    return s;
  };
  const double sx = (n * n * n - n) / 12.0 - tie_sum(x);
  const double sy = (n * n * n - n) / 12.0 - tie_sum(y);
  if (sx == 0 || sy == 0) return std::nullopt;
  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  double d2 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) d2 += (rx[i] - ry[i]) * (rx[i] - ry[i]);
  return (sx + sy - d2) / (2.0 * std::sqrt(sx * sy));
}

}  // namespace fss::oracle
