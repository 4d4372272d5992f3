#include "corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "error.hpp"
#include "text.hpp"

namespace fss {
namespace {

constexpr std::size_t kMaxIssues = 1000;

// Where each table row came from, so build-time issues can name file and line.
struct TableOrigin {
  std::string file;
  std::vector<std::size_t> lines;

  std::size_t line(std::size_t index) const {
    return index < lines.size() ? lines[index] : index + 1;
  }
};

struct Provenance {
  TableOrigin researchers{"researchers", {}};
  TableOrigin publications{"publications", {}};
  TableOrigin authorship{"authorship", {}};
  TableOrigin taxonomy{"taxonomy", {}};
};

class IssueSink {
 public:
  void add(Issue issue) {
    if (issues_.size() < kMaxIssues) issues_.push_back(std::move(issue));
  }
  bool empty() const noexcept { return issues_.empty(); }
  std::vector<Issue>& issues() noexcept { return issues_; }

 private:
  std::vector<Issue> issues_;
};

// A table reduced to string cells in the order of the requested columns.
struct RawTable {
  std::string file;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> lines;
};

std::string json_cell(const nlohmann::json& value) {
  if (value.is_null()) return {};
  if (value.is_string()) return value.get<std::string>();
  if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
  if (value.is_number_integer()) return std::to_string(value.get<std::int64_t>());
  if (value.is_array()) {
    std::string joined;
    for (std::size_t i = 0; i < value.size(); ++i) {
      if (i != 0) joined.push_back(';');
      joined += json_cell(value[i]);
    }
    return joined;
  }
  return value.dump();
}

RawTable read_table(const std::filesystem::path& path, FileFormat format,
                    std::span<const std::string_view> columns, IssueSink& sink) {
  RawTable table;
  table.file = path.string();
  if (format == FileFormat::csv) {
    CsvTable csv = read_csv(path);
    std::vector<std::size_t> index;
    bool complete = true;
    for (const auto column : columns) {
      const auto it = std::find(csv.header.begin(), csv.header.end(), column);
      if (it == csv.header.end()) {
        sink.add(Issue{"schema", table.file, 1, std::string(column), "", "missing column"});
        complete = false;
      } else {
        index.push_back(static_cast<std::size_t>(it - csv.header.begin()));
      }
    }
    if (!complete) return table;
    for (std::size_t r = 0; r < csv.rows.size(); ++r) {
      auto& row = csv.rows[r];
      if (row.size() != csv.header.size()) {
        sink.add(Issue{"schema", table.file, csv.lines[r], "", "",
                       "expected " + std::to_string(csv.header.size()) + " fields, found " +
                           std::to_string(row.size())});
        continue;
      }
      std::vector<std::string> cells;
      cells.reserve(index.size());
      for (const auto i : index) cells.push_back(std::move(row[i]));
      table.rows.push_back(std::move(cells));
      table.lines.push_back(csv.lines[r]);
    }
    return table;
  }

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    sink.add(Issue{"schema", table.file, 0, "", "", std::string("invalid JSON: ") + e.what()});
    return table;
  }
  if (!doc.is_array()) {
    sink.add(Issue{"schema", table.file, 0, "", "", "expected a JSON array of objects"});
    return table;
  }
  for (std::size_t r = 0; r < doc.size(); ++r) {
    const auto& obj = doc[r];
    if (!obj.is_object()) {
      sink.add(Issue{"schema", table.file, r + 1, "", "", "expected an object"});
      continue;
    }
    std::vector<std::string> cells;
    for (const auto column : columns) {
      const auto it = obj.find(std::string(column));
      if (it != obj.end() && it->is_array()) {
        for (const auto& element : *it) {
          if (element.is_string() && element.get_ref<const std::string&>().find(';') != std::string::npos) {
            sink.add(Issue{"invalid_value", table.file, r + 1, std::string(column),
                           element.get<std::string>(), "list element contains ';'"});
          }
        }
      }
      cells.push_back(it == obj.end() ? std::string{} : json_cell(*it));
    }
    table.rows.push_back(std::move(cells));
    table.lines.push_back(r + 1);
  }
  return table;
}

template <typename Int>
std::optional<Int> parse_int(std::string_view text) {
  text = trim(text);
  Int value{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  return value;
}

std::optional<bool> parse_bool(std::string_view text) {
  text = trim(text);
  if (text == "true") return true;
  if (text == "false") return false;
  return std::nullopt;
}

bool require_nonempty(const std::string& cell, const RawTable& t, std::size_t r,
                      std::string_view column, IssueSink& sink) {
  if (!trim(cell).empty()) return true;
  sink.add(Issue{"schema", t.file, t.lines[r], std::string(column), "", "empty value"});
  return false;
}

template <typename Int>
std::optional<Int> require_int(const std::string& cell, const RawTable& t, std::size_t r,
                               std::string_view column, IssueSink& sink) {
  auto value = parse_int<Int>(cell);
  if (!value) {
    sink.add(Issue{"schema", t.file, t.lines[r], std::string(column), "",
                   "not an integer: '" + cell + "'"});
  }
  return value;
}

constexpr std::string_view kResearcherColumns[] = {"researcher_id", "sds_id", "university_id",
                                                   "active_from", "active_to"};
constexpr std::string_view kPublicationColumns[] = {"pub_id", "year", "citation_count",
                                                    "subject_categories"};
constexpr std::string_view kAuthorshipColumns[] = {"pub_id", "position", "researcher_id",
                                                   "institution_id"};
constexpr std::string_view kTaxonomyColumns[] = {"sds_id", "uda_id", "positional_weighting"};

std::vector<Publication> parse_publications(const RawTable& t, IssueSink& sink) {
  std::vector<Publication> out;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    bool ok = require_nonempty(row[0], t, r, "pub_id", sink);
    auto year = require_int<int>(row[1], t, r, "year", sink);
    auto citations = require_int<std::int64_t>(row[2], t, r, "citation_count", sink);
    if (citations && *citations < 0) {
      sink.add(Issue{"invalid_value", t.file, t.lines[r], "citation_count", row[0],
                     "negative citation count"});
      ok = false;
    }
    std::vector<std::string> categories;
    if (!trim(row[3]).empty()) {
      for (auto& part : split(row[3], ';')) categories.emplace_back(trim(part));
    }
    if (!ok || !year || !citations) continue;
    out.push_back(Publication{std::string(trim(row[0])), *year, *citations, std::move(categories)});
  }
  return out;
}

}  // namespace

struct CorpusBuilder {
  static Corpus build(CorpusData data, const Provenance& origin, std::vector<Issue> prior);
};

FileFormat parse_format(std::string_view text) {
  if (text == "csv") return FileFormat::csv;
  if (text == "json") return FileFormat::json;
  throw UsageError("unknown format '" + std::string(text) + "' (expected csv or json)");
}

std::string_view format_name(FileFormat format) {
  return format == FileFormat::csv ? "csv" : "json";
}

// Corpus ---------------------------------------------------------------------

Corpus Corpus::build(CorpusData data) { return CorpusBuilder::build(std::move(data), {}, {}); }

Corpus CorpusBuilder::build(CorpusData data, const Provenance& origin, std::vector<Issue> prior) {
  IssueSink sink;
  for (auto& issue : prior) sink.add(std::move(issue));

  std::unordered_map<std::string, std::size_t> sds_index;
  for (std::size_t i = 0; i < data.taxonomy.size(); ++i) {
    const auto& e = data.taxonomy[i];
    const auto line = origin.taxonomy.line(i);
    if (e.sds_id.empty()) {
      sink.add(Issue{"schema", origin.taxonomy.file, line, "sds_id", "", "empty value"});
      continue;
    }
    if (e.uda_id.empty()) {
      sink.add(Issue{"schema", origin.taxonomy.file, line, "uda_id", e.sds_id, "empty value"});
    }
    if (!sds_index.emplace(e.sds_id, i).second) {
      sink.add(Issue{"duplicate_key", origin.taxonomy.file, line, "sds_id", e.sds_id,
                     "duplicate sds_id"});
    }
  }

  std::unordered_map<std::string, std::size_t> researcher_index;
  std::vector<std::size_t> researcher_sds(data.researchers.size(), 0);
  for (std::size_t i = 0; i < data.researchers.size(); ++i) {
    const auto& r = data.researchers[i];
    const auto line = origin.researchers.line(i);
    const auto& file = origin.researchers.file;
    if (r.id.empty()) {
      sink.add(Issue{"schema", file, line, "researcher_id", "", "empty value"});
      continue;
    }
    if (!researcher_index.emplace(r.id, i).second) {
      sink.add(Issue{"duplicate_key", file, line, "researcher_id", r.id, "duplicate researcher_id"});
    }
    if (const auto it = sds_index.find(r.sds_id); it == sds_index.end()) {
      sink.add(Issue{"dangling_reference", file, line, "sds_id", r.sds_id,
                     "sds_id not in taxonomy"});
    } else {
      researcher_sds[i] = it->second;
    }
    if (r.active_from > r.active_to) {
      sink.add(Issue{"invalid_value", file, line, "active_from", r.id,
                     "active_from is after active_to"});
    }
  }

  std::unordered_map<std::string, std::size_t> publication_index;
  for (std::size_t i = 0; i < data.publications.size(); ++i) {
    const auto& p = data.publications[i];
    const auto line = origin.publications.line(i);
    const auto& file = origin.publications.file;
    if (p.id.empty()) {
      sink.add(Issue{"schema", file, line, "pub_id", "", "empty value"});
      continue;
    }
    if (!publication_index.emplace(p.id, i).second) {
      sink.add(Issue{"duplicate_key", file, line, "pub_id", p.id, "duplicate pub_id"});
    }
    if (p.citation_count < 0) {
      sink.add(Issue{"invalid_value", file, line, "citation_count", p.id,
                     "negative citation count"});
    }
    if (p.subject_categories.empty()) {
      sink.add(Issue{"invalid_value", file, line, "subject_categories", p.id,
                     "no subject categories"});
    }
    std::set<std::string_view> seen;
    for (const auto& c : p.subject_categories) {
      if (c.empty()) {
        sink.add(Issue{"invalid_value", file, line, "subject_categories", p.id,
                       "empty subject category"});
      } else if (c.find(';') != std::string::npos) {
        sink.add(Issue{"invalid_value", file, line, "subject_categories", p.id,
                       "subject category contains ';'"});
      } else if (!seen.insert(c).second) {
        sink.add(Issue{"duplicate_key", file, line, "subject_categories", c,
                       "subject category listed twice"});
      }
    }
  }

  // Group bylines by publication, keeping each entry's original index for reporting.
  std::vector<std::vector<std::size_t>> bylines(data.publications.size());
  for (std::size_t i = 0; i < data.authorship.size(); ++i) {
    const auto& a = data.authorship[i];
    const auto line = origin.authorship.line(i);
    const auto& file = origin.authorship.file;
    const auto pub = publication_index.find(a.pub_id);
    if (pub == publication_index.end()) {
      sink.add(Issue{"dangling_reference", file, line, "pub_id", a.pub_id, "unknown pub_id"});
      continue;
    }
    if (a.researcher_id && !researcher_index.contains(*a.researcher_id)) {
      sink.add(Issue{"dangling_reference", file, line, "researcher_id", *a.researcher_id,
                     "unknown researcher_id"});
    }
    bylines[pub->second].push_back(i);
  }

  for (std::size_t p = 0; p < bylines.size(); ++p) {
    auto& entries = bylines[p];
    const auto& pub_id = data.publications[p].id;
    if (entries.empty()) {
      sink.add(Issue{"byline_gap", origin.publications.file, origin.publications.line(p),
                     "pub_id", pub_id, "publication has no authorship entries"});
      continue;
    }
    std::stable_sort(entries.begin(), entries.end(), [&](std::size_t x, std::size_t y) {
      return data.authorship[x].position < data.authorship[y].position;
    });
    std::unordered_set<std::string_view> roster;
    for (std::size_t k = 0; k < entries.size(); ++k) {
      const auto& a = data.authorship[entries[k]];
      const auto line = origin.authorship.line(entries[k]);
      const int expected = static_cast<int>(k) + 1;
      if (a.position != expected) {
        const bool duplicate = k > 0 && data.authorship[entries[k - 1]].position == a.position;
        sink.add(Issue{duplicate ? "duplicate_key" : "byline_gap", origin.authorship.file, line,
                       "position", pub_id,
                       duplicate ? "duplicate byline position " + std::to_string(a.position)
                                 : "byline positions must be 1.." +
                                       std::to_string(entries.size()) + ", found " +
                                       std::to_string(a.position)});
        break;
      }
      if (a.researcher_id && !roster.insert(*a.researcher_id).second) {
        sink.add(Issue{"duplicate_key", origin.authorship.file, line, "researcher_id",
                       *a.researcher_id, "researcher appears twice on byline of " + pub_id});
      }
    }
  }

  if (!sink.empty()) throw DataError(std::move(sink.issues()));

  Corpus corpus;
  std::vector<AuthorshipEntry> ordered;
  ordered.reserve(data.authorship.size());
  corpus.byline_offset_.reserve(bylines.size() + 1);
  for (const auto& entries : bylines) {
    corpus.byline_offset_.push_back(ordered.size());
    for (const auto i : entries) ordered.push_back(std::move(data.authorship[i]));
  }
  corpus.byline_offset_.push_back(ordered.size());
  data.authorship = std::move(ordered);

  std::vector<std::size_t> counts(data.researchers.size() + 1, 0);
  for (const auto& a : data.authorship) {
    if (a.researcher_id) ++counts[researcher_index.at(*a.researcher_id) + 1];
  }
  for (std::size_t i = 1; i < counts.size(); ++i) counts[i] += counts[i - 1];
  corpus.authored_offset_ = counts;
  corpus.authored_.resize(counts.back());
  for (std::size_t p = 0; p + 1 < corpus.byline_offset_.size(); ++p) {
    for (auto k = corpus.byline_offset_[p]; k < corpus.byline_offset_[p + 1]; ++k) {
      const auto& a = data.authorship[k];
      if (!a.researcher_id) continue;
      const auto r = researcher_index.at(*a.researcher_id);
      corpus.authored_[counts[r]++] = Authored{p, k - corpus.byline_offset_[p]};
    }
  }

  corpus.data_ = std::move(data);
  corpus.researcher_index_ = std::move(researcher_index);
  corpus.publication_index_ = std::move(publication_index);
  corpus.sds_index_ = std::move(sds_index);
  corpus.researcher_sds_ = std::move(researcher_sds);
  return corpus;
}

std::optional<std::size_t> Corpus::find_researcher(std::string_view id) const {
  const auto it = researcher_index_.find(std::string(id));
  if (it == researcher_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Corpus::find_publication(std::string_view id) const {
  const auto it = publication_index_.find(std::string(id));
  if (it == publication_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> Corpus::find_sds(std::string_view sds_id) const {
  const auto it = sds_index_.find(std::string(sds_id));
  if (it == sds_index_.end()) return std::nullopt;
  return it->second;
}

std::span<const AuthorshipEntry> Corpus::byline(std::size_t publication) const {
  const auto first = byline_offset_.at(publication);
  const auto last = byline_offset_.at(publication + 1);
  return std::span(data_.authorship).subspan(first, last - first);
}

std::span<const Authored> Corpus::authored_by(std::size_t researcher) const {
  const auto first = authored_offset_.at(researcher);
  const auto last = authored_offset_.at(researcher + 1);
  return std::span(authored_).subspan(first, last - first);
}

const TaxonomyEntry& Corpus::sds_of(std::size_t researcher) const {
  return data_.taxonomy[researcher_sds_.at(researcher)];
}

// Loading --------------------------------------------------------------------

namespace {

struct TablePaths {
  std::optional<std::filesystem::path> researchers, publications, authorship, taxonomy;
};

void assign_table(TablePaths& tables, const std::filesystem::path& path, IssueSink& sink) {
  const auto stem = path.stem().string();
  std::optional<std::filesystem::path>* slot = nullptr;
  if (stem == "researchers") slot = &tables.researchers;
  else if (stem == "publications") slot = &tables.publications;
  else if (stem == "authorship") slot = &tables.authorship;
  else if (stem == "taxonomy") slot = &tables.taxonomy;
  if (slot == nullptr) {
    sink.add(Issue{"schema", path.string(), 0, "", "",
                   "unrecognized table file (expected researchers, publications, authorship "
                   "or taxonomy)"});
    return;
  }
  if (*slot) {
    sink.add(Issue{"duplicate_key", path.string(), 0, "", stem, "table given more than once"});
    return;
  }
  *slot = path;
}

}  // namespace

std::vector<std::filesystem::path> resolve_table_files(
    std::span<const std::filesystem::path> paths, FileFormat format) {
  if (paths.empty()) throw UsageError("no input files given");
  IssueSink sink;
  TablePaths tables;
  const std::string ext = "." + std::string(format_name(format));
  for (const auto& path : paths) {
    if (std::filesystem::is_directory(path)) {
      for (const char* name : {"researchers", "publications", "authorship", "taxonomy"}) {
        const auto candidate = path / (std::string(name) + ext);
        if (std::filesystem::exists(candidate)) assign_table(tables, candidate, sink);
      }
    } else if (!std::filesystem::exists(path)) {
      sink.add(Issue{"io", path.string(), 0, "", "", "file does not exist"});
    } else {
      assign_table(tables, path, sink);
    }
  }
  const std::pair<const char*, const std::optional<std::filesystem::path>*> required[] = {
      {"researchers", &tables.researchers},
      {"publications", &tables.publications},
      {"authorship", &tables.authorship},
      {"taxonomy", &tables.taxonomy}};
  std::vector<std::filesystem::path> out;
  for (const auto& [name, slot] : required) {
    if (!*slot) {
      sink.add(Issue{"schema", "", 0, "", name, std::string("missing table: ") + name});
    } else {
      out.push_back(**slot);
    }
  }
  if (!sink.empty()) throw DataError(std::move(sink.issues()));
  return out;
}

Corpus load_corpus(std::span<const std::filesystem::path> paths, FileFormat format,
                   std::string observation_date_label) {
  const auto files = resolve_table_files(paths, format);
  IssueSink sink;
  struct {
    std::optional<std::filesystem::path> researchers, publications, authorship, taxonomy;
  } tables{files[0], files[1], files[2], files[3]};

  CorpusData data;
  data.observation_date_label = std::move(observation_date_label);
  Provenance origin;

  const auto tax = read_table(*tables.taxonomy, format, kTaxonomyColumns, sink);
  origin.taxonomy.file = tax.file;
  for (std::size_t r = 0; r < tax.rows.size(); ++r) {
    const auto& row = tax.rows[r];
    const auto flag = parse_bool(row[2]);
    if (!flag) {
      sink.add(Issue{"schema", tax.file, tax.lines[r], "positional_weighting", row[0],
                     "expected true or false, found '" + row[2] + "'"});
      continue;
    }
    data.taxonomy.push_back(
        TaxonomyEntry{std::string(trim(row[0])), std::string(trim(row[1])), *flag});
    origin.taxonomy.lines.push_back(tax.lines[r]);
  }

  const auto res = read_table(*tables.researchers, format, kResearcherColumns, sink);
  origin.researchers.file = res.file;
  for (std::size_t r = 0; r < res.rows.size(); ++r) {
    const auto& row = res.rows[r];
    bool ok = require_nonempty(row[0], res, r, "researcher_id", sink);
    ok = require_nonempty(row[1], res, r, "sds_id", sink) && ok;
    const auto from = require_int<int>(row[3], res, r, "active_from", sink);
    const auto to = require_int<int>(row[4], res, r, "active_to", sink);
    if (!ok || !from || !to) continue;
    data.researchers.push_back(Researcher{std::string(trim(row[0])), std::string(trim(row[1])),
                                          std::string(trim(row[2])), *from, *to});
    origin.researchers.lines.push_back(res.lines[r]);
  }

  const auto pubs = read_table(*tables.publications, format, kPublicationColumns, sink);
  origin.publications.file = pubs.file;
  {
    // parse_publications skips bad rows; keep line numbers aligned with survivors.
    for (std::size_t r = 0; r < pubs.rows.size(); ++r) {
      RawTable one{pubs.file, {pubs.rows[r]}, {pubs.lines[r]}};
      auto parsed = parse_publications(one, sink);
      if (parsed.empty()) continue;
      data.publications.push_back(std::move(parsed.front()));
      origin.publications.lines.push_back(pubs.lines[r]);
    }
  }

  const auto auth = read_table(*tables.authorship, format, kAuthorshipColumns, sink);
  origin.authorship.file = auth.file;
  for (std::size_t r = 0; r < auth.rows.size(); ++r) {
    const auto& row = auth.rows[r];
    bool ok = require_nonempty(row[0], auth, r, "pub_id", sink);
    const auto position = require_int<int>(row[1], auth, r, "position", sink);
    if (!ok || !position) continue;
    std::optional<std::string> researcher;
    if (!trim(row[2]).empty()) researcher = std::string(trim(row[2]));
    data.authorship.push_back(AuthorshipEntry{std::string(trim(row[0])), *position,
                                              std::move(researcher), std::string(trim(row[3]))});
    origin.authorship.lines.push_back(auth.lines[r]);
  }

  return CorpusBuilder::build(std::move(data), origin, std::move(sink.issues()));
}

std::vector<Publication> load_publications(const std::filesystem::path& path, FileFormat format) {
  IssueSink sink;
  const auto table = read_table(path, format, kPublicationColumns, sink);
  auto pubs = parse_publications(table, sink);
  std::unordered_set<std::string_view> ids;
  for (std::size_t i = 0; i < pubs.size(); ++i) {
    if (!ids.insert(pubs[i].id).second) {
      sink.add(Issue{"duplicate_key", table.file, 0, "pub_id", pubs[i].id, "duplicate pub_id"});
    }
    if (pubs[i].subject_categories.empty()) {
      sink.add(Issue{"invalid_value", table.file, 0, "subject_categories", pubs[i].id,
                     "no subject categories"});
    }
  }
  if (!sink.empty()) throw DataError(std::move(sink.issues()));
  return pubs;
}

// Writing --------------------------------------------------------------------

namespace {

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i != 0) out.push_back(sep);
    out += parts[i];
  }
  return out;
}

template <typename Row>
std::string render_csv(std::span<const std::string_view> columns, const std::vector<Row>& rows) {
  std::ostringstream out;
  std::vector<std::string> header(columns.begin(), columns.end());
  write_csv_row(out, header);
  for (const auto& row : rows) write_csv_row(out, row);
  return std::move(out).str();
}

}  // namespace

void write_corpus(const Corpus& corpus, const std::filesystem::path& dir, FileFormat format) {
  std::filesystem::create_directories(dir);
  if (format == FileFormat::json) {
    using nlohmann::ordered_json;
    ordered_json researchers = ordered_json::array();
    for (const auto& r : corpus.researchers()) {
      researchers.push_back({{"researcher_id", r.id}, {"sds_id", r.sds_id},
                             {"university_id", r.university_id}, {"active_from", r.active_from},
                             {"active_to", r.active_to}});
    }
    ordered_json publications = ordered_json::array();
    for (const auto& p : corpus.publications()) {
      publications.push_back({{"pub_id", p.id}, {"year", p.year},
                              {"citation_count", p.citation_count},
                              {"subject_categories", p.subject_categories}});
    }
    ordered_json authorship = ordered_json::array();
    for (const auto& a : corpus.authorship()) {
      ordered_json row = {{"pub_id", a.pub_id}, {"position", a.position}};
      row["researcher_id"] = a.researcher_id ? ordered_json(*a.researcher_id) : ordered_json();
      row["institution_id"] = a.institution_id;
      authorship.push_back(std::move(row));
    }
    ordered_json taxonomy = ordered_json::array();
    for (const auto& t : corpus.taxonomy()) {
      taxonomy.push_back({{"sds_id", t.sds_id}, {"uda_id", t.uda_id},
                          {"positional_weighting", t.positional_weighting}});
    }
    write_file(dir / "researchers.json", researchers.dump(1) + "\n");
    write_file(dir / "publications.json", publications.dump(1) + "\n");
    write_file(dir / "authorship.json", authorship.dump(1) + "\n");
    write_file(dir / "taxonomy.json", taxonomy.dump(1) + "\n");
    return;
  }

  std::vector<std::vector<std::string>> rows;
  for (const auto& r : corpus.researchers()) {
    rows.push_back({r.id, r.sds_id, r.university_id, std::to_string(r.active_from),
                    std::to_string(r.active_to)});
  }
  write_file(dir / "researchers.csv", render_csv(kResearcherColumns, rows));
  rows.clear();
  for (const auto& p : corpus.publications()) {
    rows.push_back({p.id, std::to_string(p.year), std::to_string(p.citation_count),
                    join(p.subject_categories, ';')});
  }
  write_file(dir / "publications.csv", render_csv(kPublicationColumns, rows));
  rows.clear();
  for (const auto& a : corpus.authorship()) {
    rows.push_back({a.pub_id, std::to_string(a.position), a.researcher_id.value_or(""),
                    a.institution_id});
  }
  write_file(dir / "authorship.csv", render_csv(kAuthorshipColumns, rows));
  rows.clear();
  for (const auto& t : corpus.taxonomy()) {
    rows.push_back({t.sds_id, t.uda_id, t.positional_weighting ? "true" : "false"});
  }
  write_file(dir / "taxonomy.csv", render_csv(kTaxonomyColumns, rows));
}

// Eligibility ----------------------------------------------------------------

std::vector<std::string> stable_staff(const Corpus& corpus, const Window& window) {
  std::vector<std::string> out;
  for (const auto& r : corpus.researchers()) {
    if (r.active_throughout(window)) out.push_back(r.id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> filter_eligible_sds(const Corpus& corpus, const Window& window,
                                             double min_active_share, int min_members) {
  struct Tally {
    std::size_t members = 0;
    std::size_t active = 0;
  };
  std::map<std::string, Tally> tally;
  const auto& researchers = corpus.researchers();
  const auto& pubs = corpus.publications();
  for (std::size_t i = 0; i < researchers.size(); ++i) {
    if (!researchers[i].active_throughout(window)) continue;
    auto& t = tally[researchers[i].sds_id];
    ++t.members;
    const auto authored = corpus.authored_by(i);
    const bool published = std::any_of(authored.begin(), authored.end(), [&](const Authored& a) {
      return window.contains(pubs[a.publication].year);
    });
    if (published) ++t.active;
  }
  std::vector<std::string> out;
  for (const auto& [sds, t] : tally) {
    if (t.members < static_cast<std::size_t>(std::max(min_members, 0))) continue;
    const double share = static_cast<double>(t.active) / static_cast<double>(t.members);
    if (share >= min_active_share) out.push_back(sds);
  }
  return out;
}

}  // namespace fss
