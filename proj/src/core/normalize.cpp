#include "normalize.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "error.hpp"
#include "text.hpp"

namespace fss {

std::optional<BaselineCell> BaselineTable::find(std::string_view category, int year) const {
  const auto it = cells_.find(std::pair<std::string_view, int>(category, year));
  if (it == cells_.end()) return std::nullopt;
  return it->second;
}

void BaselineTable::set(std::string category, int year, BaselineCell cell) {
  if (!(cell.median > 0.0) || !std::isfinite(cell.median)) {
    throw UsageError("baseline median must be positive for " + category + "/" +
                     std::to_string(year));
  }
  if (cell.count == 0) {
    throw UsageError("baseline count must be positive for " + category + "/" +
                     std::to_string(year));
  }
  cells_.insert_or_assign(Key{std::move(category), year}, cell);
}

std::string_view baseline_source_name(BaselineSource source) {
  switch (source) {
    case BaselineSource::corpus: return "corpus";
    case BaselineSource::reference: return "reference";
    case BaselineSource::imported: return "imported";
  }
  return "corpus";
}

double median(std::vector<std::int64_t> values) {
  if (values.empty()) throw UsageError("median of an empty set");
  const auto n = values.size();
  const auto mid = values.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(values.begin(), mid, values.end());
  const double upper = static_cast<double>(*mid);
  if (n % 2 == 1) return upper;
  const double lower = static_cast<double>(*std::max_element(values.begin(), mid));
  return 0.5 * (lower + upper);
}

BaselineTable build_baselines(std::span<const Publication> publications) {
  std::map<BaselineTable::Key, std::vector<std::int64_t>, BaselineTable::KeyLess> cited;
  for (const auto& pub : publications) {
    if (pub.citation_count <= 0) continue;
    for (const auto& category : pub.subject_categories) {
      cited[BaselineTable::Key{category, pub.year}].push_back(pub.citation_count);
    }
  }
  BaselineTable table;
  for (auto& [key, counts] : cited) {
    const auto n = counts.size();
    table.set(key.first, key.second, BaselineCell{median(std::move(counts)), n});
  }
  return table;
}

BaselineTable build_baselines(const Corpus& corpus) {
  return build_baselines(std::span<const Publication>(corpus.publications()));
}

double CategoryWeights::weight(std::size_t position) const {
  if (by_position.empty()) return 1.0;
  return by_position[std::min(position, by_position.size() - 1)];
}

std::string CategoryWeights::label() const {
  if (by_position.empty()) return "equal";
  std::string out;
  for (std::size_t i = 0; i < by_position.size(); ++i) {
    if (i != 0) out.push_back(';');
    out += format_double(by_position[i]);
  }
  return out;
}

CategoryWeights CategoryWeights::parse(std::string_view text) {
  text = trim(text);
  if (text.empty() || text == "equal") return {};
  CategoryWeights weights;
  for (const auto& part : split(text, ';')) {
    const auto token = trim(part);
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size() || !(value > 0.0) ||
        !std::isfinite(value)) {
      throw UsageError("category weights must be 'equal' or positive numbers separated by ';'");
    }
    weights.by_position.push_back(value);
  }
  return weights;
}

std::optional<double> standardized_score(const Publication& pub, const BaselineTable& baselines,
                                         const CategoryWeights& weights) {
  const double citations = static_cast<double>(pub.citation_count);
  double weighted = 0.0;
  double total_weight = 0.0;
  for (std::size_t k = 0; k < pub.subject_categories.size(); ++k) {
    const auto cell = baselines.find(pub.subject_categories[k], pub.year);
    if (!cell) continue;
    const double w = weights.weight(k);
    weighted += w * (citations / cell->median);
    total_weight += w;
  }
  if (total_weight == 0.0) return std::nullopt;
  return weighted / total_weight;
}

std::string baselines_to_csv(const BaselineTable& baselines) {
  std::ostringstream out;
  out << "category,year,median,count\n";
  for (const auto& [key, cell] : baselines.cells()) {
    const std::string row[] = {key.first, std::to_string(key.second), format_double(cell.median),
                               std::to_string(cell.count)};
    write_csv_row(out, row);
  }
  return std::move(out).str();
}

BaselineTable baselines_from_csv(const std::filesystem::path& path) {
  const auto csv = read_csv(path);
  const std::vector<std::string> expected = {"category", "year", "median", "count"};
  if (csv.header != expected) {
    throw DataError(Issue{"schema", csv.file, 1, "", "",
                          "expected header category,year,median,count"});
  }
  std::vector<Issue> issues;
  BaselineTable table;
  for (std::size_t r = 0; r < csv.rows.size(); ++r) {
    const auto& row = csv.rows[r];
    if (row.size() != 4) {
      issues.push_back(Issue{"schema", csv.file, csv.lines[r], "", "", "expected 4 fields"});
      continue;
    }
    int year = 0;
    double med = 0.0;
    std::size_t count = 0;
    const auto y = trim(row[1]);
    const auto m = trim(row[2]);
    const auto c = trim(row[3]);
    const bool ok_year = std::from_chars(y.data(), y.data() + y.size(), year).ptr == y.data() + y.size() && !y.empty();
    const bool ok_median = std::from_chars(m.data(), m.data() + m.size(), med).ptr == m.data() + m.size() && !m.empty();
    const bool ok_count = std::from_chars(c.data(), c.data() + c.size(), count).ptr == c.data() + c.size() && !c.empty();
    if (row[0].empty() || !ok_year || !ok_median || !ok_count || !(med > 0.0) || count == 0) {
      issues.push_back(Issue{"invalid_value", csv.file, csv.lines[r], "", row[0],
                             "baseline rows need a category, integer year, positive median "
                             "and positive count"});
      continue;
    }
    if (table.find(row[0], year)) {
      issues.push_back(Issue{"duplicate_key", csv.file, csv.lines[r], "category",
                             row[0] + "/" + std::to_string(year), "duplicate baseline cell"});
      continue;
    }
    table.set(row[0], year, BaselineCell{med, count});
  }
  if (!issues.empty()) throw DataError(std::move(issues));
  return table;
}

}  // namespace fss
