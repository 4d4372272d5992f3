#include "fss/fss.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "corpus.hpp"
#include "error.hpp"
#include "normalize.hpp"
#include "pipeline.hpp"
#include "scoring.hpp"
#include "sensitivity.hpp"
#include "syngen.hpp"
#include "text.hpp"

struct fss_corpus {
  fss::Corpus corpus;
};

struct fss_baselines {
  fss::BaselineTable table;
};

namespace {

thread_local std::string g_last_error;
thread_local std::string g_last_error_json = "[]";

void set_error(const std::string& message, const std::vector<fss::Issue>& issues) {
  g_last_error = message;
  nlohmann::json list = nlohmann::json::array();
  for (const auto& i : issues) {
    nlohmann::json item;
    item["kind"] = i.kind;
    item["file"] = i.file;
    item["row"] = i.row;
    item["column"] = i.column;
    item["key"] = i.key;
    item["message"] = i.message;
    list.push_back(std::move(item));
  }
  g_last_error_json = list.dump();
}

void set_error(const std::string& kind, const std::string& message) {
  set_error(message, {fss::Issue{kind, "", 0, "", "", message}});
}

template <typename Fn>
fss_status guarded(Fn&& fn) noexcept {
  try {
    g_last_error.clear();
    g_last_error_json = "[]";
    fn();
    return FSS_OK;
  } catch (const fss::DataError& e) {
    set_error(e.what(), e.issues());
    return FSS_ERR_DATA;
  } catch (const fss::UsageError& e) {
    set_error("usage", e.what());
    return FSS_ERR_INVALID_ARGUMENT;
  } catch (const fss::UndefinedError& e) {
    set_error("undefined", e.what());
    return FSS_ERR_UNDEFINED;
  } catch (const std::filesystem::filesystem_error& e) {
    set_error("io", e.what());
    return FSS_ERR_DATA;
  } catch (const std::bad_alloc&) {
    set_error("internal", "out of memory");
    return FSS_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error("internal", e.what());
    return FSS_ERR_INTERNAL;
  } catch (...) {
    set_error("internal", "unknown error");
    return FSS_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw fss::UsageError(what);
}

char* to_c_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

void emit(char** out, const std::string& s) {
  if (out != nullptr) *out = to_c_string(s);
}

}  // namespace

extern "C" {

const char* fss_version(void) { return fss::kToolVersion.data(); }
const char* fss_last_error(void) { return g_last_error.c_str(); }
const char* fss_last_error_json(void) { return g_last_error_json.c_str(); }
void fss_string_free(char* s) { std::free(s); }

fss_status fss_corpus_load(const char* const* paths, size_t n_paths, const char* format,
                           const char* observation_date, fss_corpus** out) {
  return guarded([&] {
    require(out != nullptr, "out must not be NULL");
    require(paths != nullptr || n_paths == 0, "paths must not be NULL");
    *out = nullptr;
    std::vector<std::filesystem::path> list;
    for (size_t i = 0; i < n_paths; ++i) {
      require(paths[i] != nullptr, "path must not be NULL");
      list.emplace_back(paths[i]);
    }
    auto corpus = fss::load_corpus(list, fss::parse_format(format ? format : "csv"),
                                   observation_date ? observation_date : "");
    *out = new fss_corpus{std::move(corpus)};
  });
}

void fss_corpus_free(fss_corpus* corpus) { delete corpus; }

fss_status fss_corpus_write(const fss_corpus* corpus, const char* dir, const char* format) {
  return guarded([&] {
    require(corpus != nullptr && dir != nullptr, "corpus and dir must not be NULL");
    fss::write_corpus(corpus->corpus, dir, fss::parse_format(format ? format : "csv"));
  });
}

fss_status fss_corpus_counts(const fss_corpus* corpus, size_t* researchers, size_t* publications,
                             size_t* authorships, size_t* sds) {
  return guarded([&] {
    require(corpus != nullptr, "corpus must not be NULL");
    if (researchers) *researchers = corpus->corpus.researchers().size();
    if (publications) *publications = corpus->corpus.publications().size();
    if (authorships) *authorships = corpus->corpus.authorship().size();
    if (sds) *sds = corpus->corpus.taxonomy().size();
  });
}

fss_status fss_stable_staff(const fss_corpus* corpus, int start, int end, char** json_out) {
  return guarded([&] {
    require(corpus != nullptr && json_out != nullptr, "arguments must not be NULL");
    const auto staff = fss::stable_staff(corpus->corpus, fss::make_window(start, end));
    emit(json_out, nlohmann::json(staff).dump());
  });
}

fss_status fss_eligible_sds(const fss_corpus* corpus, int start, int end, double min_active_share,
                            int min_members, char** json_out) {
  return guarded([&] {
    require(corpus != nullptr && json_out != nullptr, "arguments must not be NULL");
    const auto sds = fss::filter_eligible_sds(corpus->corpus, fss::make_window(start, end),
                                              min_active_share, min_members);
    emit(json_out, nlohmann::json(sds).dump());
  });
}

fss_status fss_baselines_build(const fss_corpus* corpus, fss_baselines** out) {
  return guarded([&] {
    require(corpus != nullptr && out != nullptr, "arguments must not be NULL");
    *out = new fss_baselines{fss::build_baselines(corpus->corpus)};
  });
}

fss_status fss_baselines_load(const char* csv_path, fss_baselines** out) {
  return guarded([&] {
    require(csv_path != nullptr && out != nullptr, "arguments must not be NULL");
    *out = new fss_baselines{fss::baselines_from_csv(csv_path)};
  });
}

fss_status fss_baselines_save(const fss_baselines* baselines, const char* csv_path) {
  return guarded([&] {
    require(baselines != nullptr && csv_path != nullptr, "arguments must not be NULL");
    fss::write_file(csv_path, fss::baselines_to_csv(baselines->table));
  });
}

void fss_baselines_free(fss_baselines* baselines) { delete baselines; }

fss_status fss_baseline_median(const fss_baselines* baselines, const char* category, int year,
                               double* median) {
  return guarded([&] {
    require(baselines != nullptr && category != nullptr && median != nullptr,
            "arguments must not be NULL");
    const auto cell = baselines->table.find(category, year);
    if (!cell) {
      throw fss::UndefinedError("no baseline for " + std::string(category) + "/" +
                                std::to_string(year));
    }
    *median = cell->median;
  });
}

fss_status fss_standardized_score(const fss_corpus* corpus, const fss_baselines* baselines,
                                  const char* pub_id, double* out) {
  return guarded([&] {
    require(corpus != nullptr && baselines != nullptr && pub_id != nullptr && out != nullptr,
            "arguments must not be NULL");
    const auto index = corpus->corpus.find_publication(pub_id);
    if (!index) throw fss::UsageError("unknown publication '" + std::string(pub_id) + "'");
    const auto score =
        fss::standardized_score(corpus->corpus.publications()[*index], baselines->table);
    if (!score) throw fss::UndefinedError("no baseline for any category of " + std::string(pub_id));
    *out = *score;
  });
}

fss_status fss_score(const fss_corpus* corpus, const fss_baselines* baselines,
                     const char* researcher_id, int start, int end, double* out) {
  return guarded([&] {
    require(corpus != nullptr && baselines != nullptr && researcher_id != nullptr && out != nullptr,
            "arguments must not be NULL");
    const auto index = corpus->corpus.find_researcher(researcher_id);
    if (!index) throw fss::UsageError("unknown researcher '" + std::string(researcher_id) + "'");
    *out = fss::fss_score(corpus->corpus, *index, fss::make_window(start, end), baselines->table)
               .value;
  });
}

fss_status fss_author_weights(const char* const* institutions, size_t n_authors,
                              fss_weight_scheme scheme, double* weights_out) {
  return guarded([&] {
    require(institutions != nullptr && weights_out != nullptr, "arguments must not be NULL");
    require(n_authors >= 1, "a byline needs at least one author");
    require(scheme == FSS_WEIGHTS_UNIFORM || scheme == FSS_WEIGHTS_POSITIONAL, "unknown scheme");
    std::vector<std::string> list;
    for (size_t i = 0; i < n_authors; ++i) list.emplace_back(institutions[i] ? institutions[i] : "");
    const auto weights = fss::author_weights(
        list, scheme == FSS_WEIGHTS_POSITIONAL ? fss::WeightScheme::positional
                                               : fss::WeightScheme::uniform);
    std::copy(weights.begin(), weights.end(), weights_out);
  });
}

fss_status fss_spearman(const double* x, const double* y, size_t n, double* rho) {
  return guarded([&] {
    require(x != nullptr && y != nullptr && rho != nullptr, "arguments must not be NULL");
    *rho = fss::spearman(std::span(x, n), std::span(y, n));
  });
}

fss_status fss_trend_fit(const double* series, size_t n, double* slope, double* intercept) {
  return guarded([&] {
    require(series != nullptr && slope != nullptr && intercept != nullptr,
            "arguments must not be NULL");
    const auto fit = fss::trend_fit(std::span(series, n));
    *slope = fit.slope;
    *intercept = fit.intercept;
  });
}

fss_status fss_run_rank(const char* config_json, char** report_out) {
  return guarded([&] {
    require(config_json != nullptr, "config must not be NULL");
    emit(report_out, fss::run_rank(fss::parse_run_config(config_json)));
  });
}

fss_status fss_run_analyze(const char* config_json, char** report_out) {
  return guarded([&] {
    require(config_json != nullptr, "config must not be NULL");
    emit(report_out, fss::run_analyze(fss::parse_run_config(config_json)));
  });
}

fss_status fss_render_report(const char* analysis_json_path, char** text_out) {
  return guarded([&] {
    require(analysis_json_path != nullptr && text_out != nullptr, "arguments must not be NULL");
    emit(text_out, fss::render_text_report(fss::read_file(analysis_json_path)));
  });
}

fss_status fss_generate(const char* config_json, const char* out_dir, const char* format) {
  return guarded([&] {
    require(config_json != nullptr && out_dir != nullptr, "arguments must not be NULL");
    const auto config = fss::parse_generator_config(config_json);
    fss::write_generated(fss::generate(config), out_dir, fss::parse_format(format ? format : "csv"));
  });
}

}  // extern "C"
