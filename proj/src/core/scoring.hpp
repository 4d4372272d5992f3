#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "corpus.hpp"
#include "normalize.hpp"
#include "window.hpp"

namespace fss {

enum class WeightScheme { uniform, positional };

// Which credit split was applied to a byline.
enum class WeightRule {
  uniform,                // 1/s for everyone (uniform scheme)
  same_institution_ends,  // first and last share an institution: 40/40, rest share 20
  distinct_ends,          // first two and last two all differ: 30/15 ... 15/30, rest share 10
  fallback,               // positional scheme but neither pattern applies: 1/s
};

std::string_view weight_rule_name(WeightRule rule);

// Classifies a byline from its institutions (in byline order).
WeightRule weight_rule(std::span<const std::string> institutions, WeightScheme scheme);
WeightRule weight_rule(std::span<const AuthorshipEntry> byline, WeightScheme scheme);

// Credit share of the author at 1-based `position`. O(1) in byline length.
double author_weight(std::span<const AuthorshipEntry> byline, std::size_t position,
                     WeightScheme scheme);

// Credit shares for the whole byline; they sum to 1.
std::vector<double> author_weights(std::span<const std::string> institutions, WeightScheme scheme);
std::vector<double> author_weights(std::span<const AuthorshipEntry> byline, WeightScheme scheme);

struct FssScore {
  double value = 0.0;
  std::size_t publications = 0;         // authored publications inside the window
  std::size_t undefined_baseline = 0;   // of those, scored 0 for lack of any baseline
  std::size_t positional_fallback = 0;  // of those, positional scheme fell back to 1/s
};

inline WeightScheme scheme_for(const TaxonomyEntry& sds) {
  return sds.positional_weighting ? WeightScheme::positional : WeightScheme::uniform;
}

// Direct evaluation: sum over the researcher's publications in the window of
// standardized score times author weight.
FssScore fss_score(const Corpus& corpus, std::size_t researcher, const Window& window,
                   const BaselineTable& baselines, const CategoryWeights& weights = {});

// Precomputes every researcher's per-publication contributions once so that
// many windows can be scored cheaply. Read-only after construction.
class Scorer {
 public:
  Scorer(const Corpus& corpus, const BaselineTable& baselines, const CategoryWeights& weights = {});

  FssScore score(std::size_t researcher, const Window& window) const;
  // Throws UsageError for an unknown id.
  FssScore score(std::string_view researcher_id, const Window& window) const;

  const Corpus& corpus() const noexcept { return *corpus_; }

 private:
  struct Contribution {
    int year;
    double value;
    bool undefined_baseline;
    bool positional_fallback;
  };

  const Corpus* corpus_;
  std::vector<std::size_t> offsets_;
  std::vector<Contribution> contributions_;
};

}  // namespace fss
