#include "syngen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include <json.hpp>

#include "error.hpp"
#include "text.hpp"

namespace fss {
namespace {

std::string padded(const char* prefix, std::size_t value, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%0*zu", prefix, width, value);
  return buf;
}

class Sampler {
 public:
  Sampler(std::uint64_t seed, bool stochastic) : rng_(seed), stochastic_(stochastic) {}

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }
  bool chance(double p) { return uniform() < p; }
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }
  int between(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  double lognormal(double sigma) {
    if (sigma == 0.0) return 1.0;
    return std::lognormal_distribution<double>(0.0, sigma)(rng_);
  }
  // Mean 1, standard deviation `sd`.
  double unit_gamma(double sd) {
    if (sd == 0.0) return 1.0;
    const double shape = 1.0 / (sd * sd);
    return std::gamma_distribution<double>(shape, 1.0 / shape)(rng_);
  }
  std::int64_t poisson(double mean) {
    if (!stochastic_) return std::llround(mean);
    if (mean <= 0.0) return 0;
    return std::poisson_distribution<std::int64_t>(mean)(rng_);
  }
  // Gamma-Poisson mixture with the given mean and size parameter.
  std::int64_t negative_binomial(double mean, double size) {
    if (!stochastic_) return std::llround(mean);
    if (mean <= 0.0) return 0;
    const double rate = std::gamma_distribution<double>(size, mean / size)(rng_);
    return poisson(rate);
  }

 private:
  std::mt19937_64 rng_;
  bool stochastic_;
};

void require(bool ok, const char* what) {
  if (!ok) throw UsageError(std::string("invalid generator config: ") + what);
}

bool share(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

void GeneratorConfig::validate() const {
  require(n_sds >= 1, "n_sds must be >= 1");
  require(n_uda >= 1, "n_uda must be >= 1");
  require(staff_min >= 1 && staff_max >= staff_min, "staff range must satisfy 1 <= min <= max");
  require(years.valid(), "years must be a valid window");
  require(n_universities >= 1, "n_universities must be >= 1");
  require(latent_sigma >= 0.0, "latent_sigma must be >= 0");
  require(pub_rate > 0.0, "pub_rate must be positive");
  require(citation_mean > 0.0, "citation_mean must be positive");
  require(citation_dispersion > 0.0, "citation_dispersion must be positive");
  require(quality_link >= 0.0, "quality_link must be >= 0");
  require(category_spread >= 0.0, "category_spread must be >= 0");
  require(coauthor_mean >= 1.0, "coauthor_mean must be >= 1");
  require(noise >= 0.0, "noise must be >= 0");
  require(share(inactive_share) && share(non_stable_share) && share(roster_coauthor_share) &&
              share(intramural_share) && share(positional_share) &&
              share(multi_category_share),
          "shares must lie in [0, 1]");
}

GeneratorConfig parse_generator_config(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(std::string("generator config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw UsageError("generator config must be a JSON object");
  GeneratorConfig c;
  auto integer = [](const nlohmann::json& v, const std::string& key) {
    if (!v.is_number_integer()) throw UsageError("generator '" + key + "': expected an integer");
    return v.get<int>();
  };
  auto number = [](const nlohmann::json& v, const std::string& key) {
    if (!v.is_number()) throw UsageError("generator '" + key + "': expected a number");
    return v.get<double>();
  };
  for (const auto& [key, v] : doc.items()) {
    if (key == "seed") {
      if (!v.is_number_unsigned() && !v.is_number_integer()) {
        throw UsageError("generator 'seed': expected a non-negative integer");
      }
      if (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0) {
        throw UsageError("generator 'seed': expected a non-negative integer");
      }
      c.seed = v.get<std::uint64_t>();
    } else if (key == "n_sds") c.n_sds = integer(v, key);
    else if (key == "n_uda") c.n_uda = integer(v, key);
    else if (key == "staff_min") c.staff_min = integer(v, key);
    else if (key == "staff_max") c.staff_max = integer(v, key);
    else if (key == "years") {
      if (!v.is_string()) throw UsageError("generator 'years': expected a string like 2003-2008");
      c.years = parse_window(v.get<std::string>());
    } else if (key == "n_universities") c.n_universities = integer(v, key);
    else if (key == "latent_sigma") c.latent_sigma = number(v, key);
    else if (key == "inactive_share") c.inactive_share = number(v, key);
    else if (key == "non_stable_share") c.non_stable_share = number(v, key);
    else if (key == "pub_rate") c.pub_rate = number(v, key);
    else if (key == "citation_mean") c.citation_mean = number(v, key);
    else if (key == "citation_dispersion") c.citation_dispersion = number(v, key);
    else if (key == "quality_link") c.quality_link = number(v, key);
    else if (key == "category_spread") c.category_spread = number(v, key);
    else if (key == "coauthor_mean") c.coauthor_mean = number(v, key);
    else if (key == "roster_coauthor_share") c.roster_coauthor_share = number(v, key);
    else if (key == "intramural_share") c.intramural_share = number(v, key);
    else if (key == "positional_share") c.positional_share = number(v, key);
    else if (key == "multi_category_share") c.multi_category_share = number(v, key);
    else if (key == "noise") c.noise = number(v, key);
    else if (key == "stochastic_counts") {
      if (!v.is_boolean()) throw UsageError("generator 'stochastic_counts': expected true or false");
      c.stochastic_counts = v.get<bool>();
    } else {
      throw UsageError("generator config: unknown key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

GeneratedCorpus generate(const GeneratorConfig& config) {
  config.validate();
  Sampler rng(config.seed, config.stochastic_counts);
  CorpusData data;
  data.observation_date_label = "synthetic seed " + std::to_string(config.seed);

  const int n_uda = std::min(config.n_uda, config.n_sds);
  const auto n_positional =
      static_cast<int>(std::lround(config.positional_share * config.n_sds));
  const std::size_t n_categories = static_cast<std::size_t>(config.n_sds) + 5;

  std::vector<double> category_intensity(n_categories);
  for (auto& c : category_intensity) c = rng.lognormal(config.category_spread);

  for (int s = 0; s < config.n_sds; ++s) {
    data.taxonomy.push_back(TaxonomyEntry{padded("SDS", s + 1, 3),
                                          padded("UDA", (s % n_uda) + 1, 2), s < n_positional});
  }

  struct Person {
    std::size_t sds;
    std::size_t university;
    double latent;
    int from;
    int to;
  };
  std::vector<Person> people;
  std::vector<std::vector<std::size_t>> members(config.n_sds);
  std::vector<LatentTruth> latent;
  for (int s = 0; s < config.n_sds; ++s) {
    const int staff = rng.between(config.staff_min, config.staff_max);
    for (int k = 0; k < staff; ++k) {
      Person p;
      p.sds = static_cast<std::size_t>(s);
      p.university = rng.index(static_cast<std::size_t>(config.n_universities));
      p.latent = rng.chance(config.inactive_share) ? 0.0 : rng.lognormal(config.latent_sigma);
      p.from = config.years.start - rng.between(0, 15);
      p.to = config.years.end + rng.between(0, 10);
      if (rng.chance(config.non_stable_share)) {
        const int cut = rng.between(config.years.start + 1, std::max(config.years.start + 1, config.years.end));
        if (rng.chance(0.5)) p.from = cut; else p.to = cut - 1;
      }
      const auto id = padded("R", people.size() + 1, 6);
      data.researchers.push_back(
          Researcher{id, data.taxonomy[p.sds].sds_id, padded("U", p.university + 1, 3), p.from, p.to});
      latent.push_back(LatentTruth{id, p.latent});
      members[p.sds].push_back(people.size());
      people.push_back(p);
    }
  }

  std::size_t pub_counter = 0;
  for (int year = config.years.start; year <= config.years.end; ++year) {
    for (std::size_t r = 0; r < people.size(); ++r) {
      const auto& lead = people[r];
      if (year < lead.from || year > lead.to || lead.latent == 0.0) continue;
      const double expected = config.pub_rate * lead.latent * rng.unit_gamma(config.noise);
      const auto count = rng.poisson(expected);
      const double quality = std::pow(lead.latent, config.quality_link);
      for (std::int64_t k = 0; k < count; ++k) {
        Publication pub;
        pub.id = padded("P", ++pub_counter, 7);
        pub.year = year;
        const std::size_t home = lead.sds;
        pub.subject_categories.push_back(padded("C", home + 1, 3));
        double intensity = category_intensity[home];
        if (rng.chance(config.multi_category_share)) {
          auto extra = rng.index(n_categories);
          if (extra == home) extra = (extra + 1) % n_categories;
          pub.subject_categories.push_back(padded("C", extra + 1, 3));
          intensity = 0.5 * (intensity + category_intensity[extra]);
        }
        pub.citation_count = rng.negative_binomial(config.citation_mean * intensity * quality,
                                                   config.citation_dispersion);

        const auto byline_length = std::max<std::int64_t>(1, 1 + rng.poisson(config.coauthor_mean - 1.0));
        const auto s = static_cast<std::size_t>(byline_length);
        const std::size_t lead_slot = rng.index(s);
        std::vector<std::size_t> on_byline{r};
        for (std::size_t slot = 0; slot < s; ++slot) {
          AuthorshipEntry entry{pub.id, static_cast<int>(slot + 1), std::nullopt, {}};
          if (slot == lead_slot) {
            entry.researcher_id = data.researchers[r].id;
            entry.institution_id = data.researchers[r].university_id;
          } else if (rng.chance(config.roster_coauthor_share)) {
            const auto& pool = members[lead.sds];
            const auto pick = pool[rng.index(pool.size())];
            const auto& colleague = people[pick];
            const bool usable = year >= colleague.from && year <= colleague.to &&
                                std::find(on_byline.begin(), on_byline.end(), pick) == on_byline.end();
            if (usable) {
              on_byline.push_back(pick);
              entry.researcher_id = data.researchers[pick].id;
              entry.institution_id = data.researchers[pick].university_id;
            }
          }
          if (entry.institution_id.empty()) {
            entry.institution_id = rng.chance(config.intramural_share)
                                       ? data.researchers[r].university_id
                                       : padded("X", rng.index(500) + 1, 3);
          }
          data.authorship.push_back(std::move(entry));
        }
        data.publications.push_back(std::move(pub));
      }
    }
  }

  return GeneratedCorpus{Corpus::build(std::move(data)), std::move(latent)};
}

void write_generated(const GeneratedCorpus& generated, const std::filesystem::path& dir,
                     FileFormat format) {
  write_corpus(generated.corpus, dir, format);
  std::ostringstream out;
  out << "researcher_id,latent_rate\n";
  for (const auto& t : generated.latent) {
    const std::string row[] = {t.researcher_id, format_double(t.latent_rate)};
    write_csv_row(out, row);
  }
  write_file(dir / "latent_truth.csv", out.str());
}

}  // namespace fss
