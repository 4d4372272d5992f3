#include "scoring.hpp"

#include <optional>

#include "error.hpp"

namespace fss {
namespace {

constexpr double kSameEndsShare = 0.40;
constexpr double kSameEndsRest = 0.20;
constexpr double kDistinctEndsOuter = 0.30;
constexpr double kDistinctEndsInner = 0.15;
constexpr double kDistinctEndsRest = 0.10;

template <typename InstitutionAt>
WeightRule classify(std::size_t s, WeightScheme scheme, InstitutionAt&& inst) {
  if (scheme == WeightScheme::uniform) return WeightRule::uniform;
  if (s < 4) return WeightRule::fallback;
  const auto& first = inst(0);
  const auto& second = inst(1);
  const auto& penultimate = inst(s - 2);
  const auto& last = inst(s - 1);
  if (first == last) return WeightRule::same_institution_ends;
  // With s == 4 the 10% remainder would have nobody to go to.
  if (s >= 5 && first != penultimate && second != penultimate && second != last) {
    return WeightRule::distinct_ends;
  }
  return WeightRule::fallback;
}

// `index` is 0-based.
double weight_at(WeightRule rule, std::size_t s, std::size_t index) {
  const double n = static_cast<double>(s);
  switch (rule) {
    case WeightRule::same_institution_ends:
      if (index == 0 || index == s - 1) return kSameEndsShare;
      return kSameEndsRest / (n - 2.0);
    case WeightRule::distinct_ends:
      if (index == 0 || index == s - 1) return kDistinctEndsOuter;
      if (index == 1 || index == s - 2) return kDistinctEndsInner;
      return kDistinctEndsRest / (n - 4.0);
    case WeightRule::uniform:
    case WeightRule::fallback:
      break;
  }
  return 1.0 / n;
}

WeightRule classify_byline(std::span<const AuthorshipEntry> byline, WeightScheme scheme) {
  return classify(byline.size(), scheme,
                  [&](std::size_t i) -> const std::string& { return byline[i].institution_id; });
}

}  // namespace

std::string_view weight_rule_name(WeightRule rule) {
  switch (rule) {
    case WeightRule::uniform: return "uniform";
    case WeightRule::same_institution_ends: return "same_institution_ends";
    case WeightRule::distinct_ends: return "distinct_ends";
    case WeightRule::fallback: return "fallback";
  }
  return "uniform";
}

WeightRule weight_rule(std::span<const std::string> institutions, WeightScheme scheme) {
  if (institutions.empty()) throw UsageError("empty byline");
  return classify(institutions.size(), scheme,
                  [&](std::size_t i) -> const std::string& { return institutions[i]; });
}

WeightRule weight_rule(std::span<const AuthorshipEntry> byline, WeightScheme scheme) {
  if (byline.empty()) throw UsageError("empty byline");
  return classify_byline(byline, scheme);
}

double author_weight(std::span<const AuthorshipEntry> byline, std::size_t position,
                     WeightScheme scheme) {
  if (position < 1 || position > byline.size()) {
    throw UsageError("byline position " + std::to_string(position) + " out of range 1.." +
                     std::to_string(byline.size()));
  }
  return weight_at(classify_byline(byline, scheme), byline.size(), position - 1);
}

std::vector<double> author_weights(std::span<const std::string> institutions,
                                   WeightScheme scheme) {
  const auto rule = weight_rule(institutions, scheme);
  std::vector<double> out(institutions.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = weight_at(rule, out.size(), i);
  return out;
}

std::vector<double> author_weights(std::span<const AuthorshipEntry> byline, WeightScheme scheme) {
  const auto rule = weight_rule(byline, scheme);
  std::vector<double> out(byline.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = weight_at(rule, out.size(), i);
  return out;
}

FssScore fss_score(const Corpus& corpus, std::size_t researcher, const Window& window,
                   const BaselineTable& baselines, const CategoryWeights& weights) {
  const auto scheme = scheme_for(corpus.sds_of(researcher));
  FssScore score;
  for (const auto& authored : corpus.authored_by(researcher)) {
    const auto& pub = corpus.publications()[authored.publication];
    if (!window.contains(pub.year)) continue;
    ++score.publications;
    const auto byline = corpus.byline(authored.publication);
    const auto rule = classify_byline(byline, scheme);
    if (rule == WeightRule::fallback) ++score.positional_fallback;
    const auto standardized = standardized_score(pub, baselines, weights);
    if (!standardized) {
      ++score.undefined_baseline;
      continue;
    }
    score.value += *standardized * weight_at(rule, byline.size(), authored.byline_index);
  }
  return score;
}

Scorer::Scorer(const Corpus& corpus, const BaselineTable& baselines,
               const CategoryWeights& weights)
    : corpus_(&corpus) {
  const auto& pubs = corpus.publications();
  std::vector<std::optional<double>> standardized(pubs.size());
  for (std::size_t p = 0; p < pubs.size(); ++p) {
    standardized[p] = standardized_score(pubs[p], baselines, weights);
  }
  const auto n = corpus.researchers().size();
  offsets_.reserve(n + 1);
  for (std::size_t r = 0; r < n; ++r) {
    offsets_.push_back(contributions_.size());
    const auto scheme = scheme_for(corpus.sds_of(r));
    for (const auto& authored : corpus.authored_by(r)) {
      const auto byline = corpus.byline(authored.publication);
      const auto rule = classify_byline(byline, scheme);
      const auto& s = standardized[authored.publication];
      const double value = s ? *s * weight_at(rule, byline.size(), authored.byline_index) : 0.0;
      contributions_.push_back(Contribution{pubs[authored.publication].year, value, !s,
                                            rule == WeightRule::fallback});
    }
  }
  offsets_.push_back(contributions_.size());
}

FssScore Scorer::score(std::size_t researcher, const Window& window) const {
  FssScore score;
  for (auto i = offsets_.at(researcher); i < offsets_.at(researcher + 1); ++i) {
    const auto& c = contributions_[i];
    if (!window.contains(c.year)) continue;
    ++score.publications;
    if (c.undefined_baseline) ++score.undefined_baseline;
    if (c.positional_fallback) ++score.positional_fallback;
    score.value += c.value;
  }
  return score;
}

FssScore Scorer::score(std::string_view researcher_id, const Window& window) const {
  const auto index = corpus_->find_researcher(researcher_id);
  if (!index) throw UsageError("unknown researcher '" + std::string(researcher_id) + "'");
  return score(*index, window);
}

}  // namespace fss
