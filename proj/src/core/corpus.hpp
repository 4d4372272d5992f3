#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "window.hpp"

namespace fss {

struct Researcher {
  std::string id;
  std::string sds_id;
  std::string university_id;
  int active_from = 0;
  int active_to = 0;

  bool active_throughout(const Window& w) const noexcept {
    return active_from <= w.start && active_to >= w.end;
  }
  friend bool operator==(const Researcher&, const Researcher&) = default;
};

struct Publication {
  std::string id;
  int year = 0;
  std::int64_t citation_count = 0;  // snapshot at the observation date
  std::vector<std::string> subject_categories;

  friend bool operator==(const Publication&, const Publication&) = default;
};

// One byline slot. Co-authors outside the evaluated staff have no researcher_id.
struct AuthorshipEntry {
  std::string pub_id;
  int position = 0;  // 1-based
  std::optional<std::string> researcher_id;
  std::string institution_id;

  friend bool operator==(const AuthorshipEntry&, const AuthorshipEntry&) = default;
};

struct TaxonomyEntry {
  std::string sds_id;
  std::string uda_id;
  bool positional_weighting = false;

  friend bool operator==(const TaxonomyEntry&, const TaxonomyEntry&) = default;
};

struct CorpusData {
  std::vector<Researcher> researchers;
  std::vector<Publication> publications;
  std::vector<AuthorshipEntry> authorship;
  std::vector<TaxonomyEntry> taxonomy;
  std::string observation_date_label;

  friend bool operator==(const CorpusData&, const CorpusData&) = default;
};

// A researcher's slot on one byline.
struct Authored {
  std::size_t publication;   // index into Corpus::publications()
  std::size_t byline_index;  // 0-based index into Corpus::byline(publication)
};

enum class FileFormat { csv, json };

FileFormat parse_format(std::string_view text);
std::string_view format_name(FileFormat format);

// Validated, cross-linked, read-only view over researchers, publications,
// bylines and the field taxonomy. Authorship entries are stored grouped by
// publication (in publication order) and sorted by position.
class Corpus {
 public:
  // Checks every invariant and throws DataError listing all violations.
  static Corpus build(CorpusData data);

  const std::vector<Researcher>& researchers() const noexcept { return data_.researchers; }
  const std::vector<Publication>& publications() const noexcept { return data_.publications; }
  const std::vector<AuthorshipEntry>& authorship() const noexcept { return data_.authorship; }
  const std::vector<TaxonomyEntry>& taxonomy() const noexcept { return data_.taxonomy; }
  const std::string& observation_date_label() const noexcept { return data_.observation_date_label; }

  std::optional<std::size_t> find_researcher(std::string_view id) const;
  std::optional<std::size_t> find_publication(std::string_view id) const;
  std::optional<std::size_t> find_sds(std::string_view sds_id) const;

  std::span<const AuthorshipEntry> byline(std::size_t publication) const;
  std::span<const Authored> authored_by(std::size_t researcher) const;
  const TaxonomyEntry& sds_of(std::size_t researcher) const;

  friend bool operator==(const Corpus& a, const Corpus& b) { return a.data_ == b.data_; }

 private:
  Corpus() = default;
  friend struct CorpusBuilder;

  CorpusData data_;
  std::unordered_map<std::string, std::size_t> researcher_index_;
  std::unordered_map<std::string, std::size_t> publication_index_;
  std::unordered_map<std::string, std::size_t> sds_index_;
  std::vector<std::size_t> byline_offset_;  // publications().size() + 1 entries
  std::vector<std::size_t> authored_offset_;
  std::vector<Authored> authored_;
  std::vector<std::size_t> researcher_sds_;
};

// Resolves `paths` (table files or directories holding them) to the four
// table files in the order researchers, publications, authorship, taxonomy.
std::vector<std::filesystem::path> resolve_table_files(
    std::span<const std::filesystem::path> paths, FileFormat format);

// `paths` may name the four table files (identified by file stem:
// researchers, publications, authorship, taxonomy) or directories holding them.
Corpus load_corpus(std::span<const std::filesystem::path> paths, FileFormat format,
                   std::string observation_date_label = {});

// Reads a publications table on its own, e.g. a national reference set used
// only for citation baselines.
std::vector<Publication> load_publications(const std::filesystem::path& path, FileFormat format);

void write_corpus(const Corpus& corpus, const std::filesystem::path& dir, FileFormat format);

// Researchers in role for the whole window, sorted by id.
std::vector<std::string> stable_staff(const Corpus& corpus, const Window& window);

// SDSs with at least `min_members` stable staff of whom at least
// `min_active_share` published something in the window. Sorted by id.
std::vector<std::string> filter_eligible_sds(const Corpus& corpus, const Window& window,
                                             double min_active_share = 0.5,
                                             int min_members = 10);

}  // namespace fss
