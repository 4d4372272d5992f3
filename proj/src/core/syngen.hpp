#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corpus.hpp"
#include "window.hpp"

namespace fss {

// Parameters of the synthetic population. Each researcher gets a hidden
// latent productivity multiplier (log-normal); yearly publication counts are
// Poisson around pub_rate * latent * noise, where the yearly noise factor is
// Gamma distributed with mean 1 and standard deviation `noise`. Citations
// are negative binomial (gamma-Poisson) around a per-category mean.
struct GeneratorConfig {
  std::uint64_t seed = 42;
  int n_sds = 5;
  int n_uda = 9;  // SDSs are spread round-robin over min(n_uda, n_sds) areas
  int staff_min = 50;
  int staff_max = 50;
  Window years{2003, 2008};
  int n_universities = 60;

  double latent_sigma = 0.8;          // log-sd of the latent productivity multiplier
  double inactive_share = 0.05;       // researchers who never publish
  double non_stable_share = 0.1;      // researchers who join or leave inside `years`
  double pub_rate = 1.2;              // mean publications per researcher-year at multiplier 1
  double citation_mean = 8.0;         // mean citations per publication
  double citation_dispersion = 1.0;   // negative binomial size; smaller = more skew
  double quality_link = 0.5;          // citation mean scales with latent^quality_link
  double category_spread = 0.5;       // log-sd of per-category citation intensity
  double coauthor_mean = 4.0;         // mean byline length
  double roster_coauthor_share = 0.1; // chance a co-author slot goes to an SDS colleague
  double intramural_share = 0.5;      // chance an external co-author shares the lead's university
  double positional_share = 0.3;      // fraction of SDSs using positional weights
  double multi_category_share = 0.2;  // publications listed in two categories
  double noise = 0.5;                 // yearly noise knob, >= 0
  bool stochastic_counts = true;      // false: every count is its rounded expectation

  // Throws UsageError on out-of-range values.
  void validate() const;
};

struct LatentTruth {
  std::string researcher_id;
  double latent_rate = 0.0;
};

struct GeneratedCorpus {
  Corpus corpus;
  std::vector<LatentTruth> latent;
};

// Keys mirror the field names; "years" is a "2003-2008" style string.
// Throws UsageError on unknown keys or wrong types.
GeneratorConfig parse_generator_config(std::string_view json_text);

GeneratedCorpus generate(const GeneratorConfig& config);

// Writes the four corpus tables plus latent_truth.csv.
void write_generated(const GeneratedCorpus& generated, const std::filesystem::path& dir,
                     FileFormat format);

}  // namespace fss
