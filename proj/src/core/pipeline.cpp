#include "pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

#include "digest.hpp"
#include "error.hpp"
#include "parallel.hpp"
#include "rank.hpp"
#include "text.hpp"

namespace fss {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

const std::set<std::string, std::less<>> kReportFormats = {"json", "csv", "text"};

[[noreturn]] void bad_config(const std::string& key, const std::string& what) {
  throw UsageError("config '" + key + "': " + what);
}

std::string get_string(const json& v, const std::string& key) {
  if (!v.is_string()) bad_config(key, "expected a string");
  return v.get<std::string>();
}

int get_int(const json& v, const std::string& key) {
  if (!v.is_number_integer()) bad_config(key, "expected an integer");
  return v.get<int>();
}

double get_number(const json& v, const std::string& key) {
  if (!v.is_number()) bad_config(key, "expected a number");
  return v.get<double>();
}

std::vector<std::string> get_strings(const json& v, const std::string& key) {
  if (!v.is_array()) bad_config(key, "expected an array of strings");
  std::vector<std::string> out;
  for (const auto& item : v) out.push_back(get_string(item, key));
  return out;
}

ordered_json agreement_json(const ClassAgreement& a) {
  ordered_json out;
  out["n"] = a.n;
  out["mean_abs_class_diff"] = a.mean_abs_class_diff;
  out["spearman_rho"] = a.spearman_rho ? ordered_json(*a.spearman_rho) : ordered_json();
  out["spearman_status"] = a.spearman_rho ? "ok" : "undefined";
  return out;
}

ordered_json transition_json(const TransitionCounts& c) {
  return ordered_json{{"n", c.n},
                      {"decreasing", c.decreasing},
                      {"increasing", c.increasing},
                      {"decreasing_pct", c.decreasing_pct},
                      {"increasing_pct", c.increasing_pct},
                      {"total_pct", c.total_pct}};
}

ordered_json delta_json(const DeltaStat& d) {
  return ordered_json{{"researchers", d.researchers}, {"pairs", d.pairs}, {"delta", d.delta}};
}

ordered_json not_applicable(const std::string& reason) {
  return ordered_json{{"status", "not applicable"}, {"reason", reason}};
}

ordered_json report_header(const Evaluation& eval, std::string_view kind) {
  const auto& config = eval.config();
  ordered_json out;
  out["tool"] = {{"name", "fss"}, {"version", std::string(kToolVersion)}};
  out["report"] = std::string(kind);
  out["run_config"] = ordered_json::parse(run_config_json(config));
  out["inputs"] = {{"files", eval.input_files()}, {"sha256", eval.input_sha256()}};
  out["observation_date"] = eval.corpus().observation_date_label();
  out["baseline_source"] = std::string(baseline_source_name(eval.baseline_source()));
  out["baseline_cells"] = eval.baselines().size();
  out["reference_window"] = config.reference_window().label();
  out["eligible_sds"] = eval.eligible_sds();
  out["evaluated_researchers"] = eval.evaluated_researchers();
  return out;
}

ordered_json diagnostics_json(const Evaluation& eval, const RankingSet& reference) {
  const auto d = eval.diagnostics(reference.window);
  ordered_json out;
  out["window"] = reference.window.label();
  out["publications_scored"] = d.publications;
  out["undefined_baseline_publications"] = d.undefined_baseline;
  out["positional_fallback_bylines"] = d.positional_fallback;
  ordered_json single = ordered_json::array();
  for (const auto& t : reference.tables) {
    if (t.entries.size() == 1) single.push_back(t.sds_id);
  }
  out["single_member_sds"] = std::move(single);
  return out;
}

void write_report(const std::filesystem::path& path, const ordered_json& report) {
  write_file(path, report.dump(2) + "\n");
}

std::string rho_cell(const std::optional<double>& rho) {
  return rho ? format_double(*rho) : std::string{};
}

}  // namespace

bool RunConfig::wants(std::string_view report_format) const {
  return std::find(report_formats.begin(), report_formats.end(), report_format) !=
         report_formats.end();
}

RunConfig parse_run_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw UsageError("config must be a JSON object");

  RunConfig c;
  for (const auto& [key, v] : doc.items()) {
    if (key == "inputs") c.inputs = get_strings(v, key);
    else if (key == "format") c.format = get_string(v, key);
    else if (key == "reference_publications") c.reference_publications = get_string(v, key);
    else if (key == "baselines_in") c.baselines_in = get_string(v, key);
    else if (key == "observation_date") c.observation_date = get_string(v, key);
    else if (key == "anchor_year") c.anchor_year = get_int(v, key);
    else if (key == "max_length") c.max_length = get_int(v, key);
    else if (key == "percentile_convention") c.percentile_convention = get_string(v, key);
    else if (key == "category_weights") c.category_weights = get_string(v, key);
    else if (key == "min_active_share") c.min_active_share = get_number(v, key);
    else if (key == "min_members") c.min_members = get_int(v, key);
    else if (key == "transition_length") c.transition_length = get_int(v, key);
    else if (key == "delta_lengths") {
      if (!v.is_array()) bad_config(key, "expected an array of integers");
      c.delta_lengths.clear();
      for (const auto& item : v) c.delta_lengths.push_back(get_int(item, key));
    } else if (key == "output_dir") c.output_dir = get_string(v, key);
    else if (key == "report_formats") c.report_formats = get_strings(v, key);
    else if (key == "export_baselines") {
      if (!v.is_boolean()) bad_config(key, "expected true or false");
      c.export_baselines = v.get<bool>();
    } else if (key == "threads") c.threads = get_int(v, key);
    else bad_config(key, "unknown key");
  }

  parse_format(c.format);
  if (c.max_length < 1) bad_config("max_length", "must be at least 1");
  if (c.percentile_convention != "midrank") {
    bad_config("percentile_convention", "only 'midrank' is supported");
  }
  CategoryWeights::parse(c.category_weights);
  if (!(c.min_active_share >= 0.0 && c.min_active_share <= 1.0)) {
    bad_config("min_active_share", "must lie in [0, 1]");
  }
  if (c.min_members < 1) bad_config("min_members", "must be at least 1");
  if (c.transition_length < 1) bad_config("transition_length", "must be at least 1");
  for (const int length : c.delta_lengths) {
    if (length < 1) bad_config("delta_lengths", "lengths must be at least 1");
  }
  for (const auto& f : c.report_formats) {
    if (!kReportFormats.contains(f)) bad_config("report_formats", "unknown format '" + f + "'");
  }
  if (c.threads < 1) bad_config("threads", "must be at least 1");
  if (c.output_dir.empty()) bad_config("output_dir", "must not be empty");
  return c;
}

std::string run_config_json(const RunConfig& c) {
  ordered_json out;
  out["inputs"] = c.inputs;
  out["format"] = c.format;
  out["reference_publications"] = c.reference_publications;
  out["baselines_in"] = c.baselines_in;
  out["observation_date"] = c.observation_date;
  out["anchor_year"] = c.anchor_year;
  out["max_length"] = c.max_length;
  out["percentile_convention"] = c.percentile_convention;
  out["category_weights"] = CategoryWeights::parse(c.category_weights).label();
  out["min_active_share"] = c.min_active_share;
  out["min_members"] = c.min_members;
  out["transition_length"] = c.transition_length;
  out["delta_lengths"] = c.delta_lengths;
  out["output_dir"] = c.output_dir;
  out["report_formats"] = c.report_formats;
  out["export_baselines"] = c.export_baselines;
  return out.dump(2);
}

std::string file_stem_for(std::string_view sds_id) {
  std::string out;
  for (const char ch : sds_id) {
    const bool safe = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                      (ch >= '0' && ch <= '9') || ch == '-' || ch == '.';
    out.push_back(safe ? ch : '_');
  }
  return out;
}

// Evaluation ------------------------------------------------------------------

Evaluation::Evaluation(const RunConfig& config)
    : config_(config),
      corpus_([&] {
        if (config.inputs.empty()) throw UsageError("no input files given");
        std::vector<std::filesystem::path> paths(config.inputs.begin(), config.inputs.end());
        return load_corpus(paths, parse_format(config.format), config.observation_date);
      }()) {
  const auto format = parse_format(config.format);
  std::vector<std::filesystem::path> paths(config.inputs.begin(), config.inputs.end());
  std::vector<std::filesystem::path> hashed = resolve_table_files(paths, format);

  if (!config.baselines_in.empty()) {
    baselines_ = baselines_from_csv(config.baselines_in);
    baseline_source_ = BaselineSource::imported;
    hashed.emplace_back(config.baselines_in);
  } else if (!config.reference_publications.empty()) {
    const auto reference = load_publications(config.reference_publications, format);
    baselines_ = build_baselines(reference);
    baseline_source_ = BaselineSource::reference;
    hashed.emplace_back(config.reference_publications);
  } else {
    baselines_ = build_baselines(corpus_);
  }

  Sha256 digest;
  for (const auto& path : hashed) {
    const auto content = read_file(path);
    input_files_.push_back(path.filename().string());
    digest.update(path.filename().string());
    digest.update(std::string_view("\0", 1));
    digest.update(std::to_string(content.size()));
    digest.update(std::string_view("\0", 1));
    digest.update(content);
  }
  input_sha256_ = digest.hex();

  const auto reference = config.reference_window();
  eligible_ = filter_eligible_sds(corpus_, reference, config.min_active_share, config.min_members);
  std::unordered_map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < eligible_.size(); ++i) slot.emplace(eligible_[i], i);
  population_.resize(eligible_.size());
  const auto& researchers = corpus_.researchers();
  for (std::size_t r = 0; r < researchers.size(); ++r) {
    if (!researchers[r].active_throughout(reference)) continue;
    const auto it = slot.find(researchers[r].sds_id);
    if (it != slot.end()) population_[it->second].push_back(r);
  }
  scorer_ = std::make_unique<Scorer>(corpus_, baselines_,
                                     CategoryWeights::parse(config.category_weights));
}

std::size_t Evaluation::evaluated_researchers() const noexcept {
  std::size_t n = 0;
  for (const auto& members : population_) n += members.size();
  return n;
}

RankingSet Evaluation::rank(const Window& window) const {
  RankingSet set{window, std::vector<RankingTable>(eligible_.size())};
  parallel_for(eligible_.size(), config_.threads, [&](std::size_t i) {
    std::vector<ScoredResearcher> scored;
    scored.reserve(population_[i].size());
    for (const auto r : population_[i]) {
      scored.push_back(ScoredResearcher{corpus_.researchers()[r].id, scorer_->score(r, window).value});
    }
    set.tables[i] = rank_sds(eligible_[i], window, std::move(scored));
  });
  return set;
}

FssScore Evaluation::diagnostics(const Window& window) const {
  FssScore total;
  for (const auto& members : population_) {
    for (const auto r : members) {
      const auto s = scorer_->score(r, window);
      total.value += s.value;
      total.publications += s.publications;
      total.undefined_baseline += s.undefined_baseline;
      total.positional_fallback += s.positional_fallback;
    }
  }
  return total;
}

// Commands ---------------------------------------------------------------------

std::string run_rank(const RunConfig& config) {
  const Evaluation eval(config);
  const std::filesystem::path out_dir(config.output_dir);
  const auto rankings_dir = out_dir / "rankings";
  std::filesystem::create_directories(rankings_dir);

  std::map<std::string, std::string> stems;
  for (const auto& sds : eval.eligible_sds()) {
    const auto [it, fresh] = stems.emplace(file_stem_for(sds), sds);
    if (!fresh) {
      throw DataError(Issue{"duplicate_key", "", 0, "sds_id", sds,
                            "SDS ids " + it->second + " and " + sds +
                                " map to the same file name"});
    }
  }

  auto report = report_header(eval, "rank");
  const auto scenarios = build_scenarios(config.anchor_year, config.max_length);
  ordered_json windows = ordered_json::array();
  for (const auto& w : scenarios) windows.push_back(w.label());
  report["scenarios"] = std::move(windows);

  ordered_json warnings = ordered_json::array();
  if (eval.eligible_sds().empty()) {
    warnings.push_back("no SDS meets the eligibility thresholds over " +
                       config.reference_window().label() + "; nothing ranked");
  }

  ordered_json files = ordered_json::array();
  for (const auto& window : scenarios) {
    const auto set = eval.rank(window);
    for (const auto& table : set.tables) {
      const auto name = file_stem_for(table.sds_id) + "_" + window.label() + ".csv";
      write_file(rankings_dir / name, rankings_to_csv(std::span(&table, 1)));
      files.push_back("rankings/" + name);
      if (table.entries.size() == 1) {
        warnings.push_back("SDS " + table.sds_id + " has a single evaluated researcher");
      }
    }
    if (window == config.reference_window()) report["diagnostics"] = diagnostics_json(eval, set);
  }
  report["files"] = std::move(files);
  report["warnings"] = std::move(warnings);

  if (config.export_baselines) {
    write_file(out_dir / "baselines.csv", baselines_to_csv(eval.baselines()));
  }
  write_report(out_dir / "rank_report.json", report);
  return report.dump(2) + "\n";
}

std::string run_analyze(const RunConfig& config) {
  const Evaluation eval(config);
  const auto taxonomy = std::span(eval.corpus().taxonomy());
  const auto reference = config.reference_window();
  const std::filesystem::path out_dir(config.output_dir);
  std::filesystem::create_directories(out_dir);

  std::map<Window, RankingSet> ranked;
  auto rankings = [&](const Window& w) -> const RankingSet& {
    auto it = ranked.find(w);
    if (it == ranked.end()) it = ranked.emplace(w, eval.rank(w)).first;
    return it->second;
  };

  const auto scenarios = build_scenarios(config.anchor_year, config.max_length);
  std::vector<RankingSet> chain;
  for (const auto& w : scenarios) chain.push_back(rankings(w));
  const auto excluded = always_inactive(chain);

  auto report = report_header(eval, "analyze");
  report["excluded_always_inactive"] = excluded.size();
  report["diagnostics"] = diagnostics_json(eval, rankings(reference));

  std::ostringstream scenario_csv;
  scenario_csv << "pair_index,window_a,window_b,uda_id,mean_abs_class_diff,spearman_rho,n\n";

  // Growing-window chain.
  if (eval.eligible_sds().empty()) {
    report["comparison_chain"] = not_applicable("no eligible SDS");
  } else if (chain.size() < 2) {
    report["comparison_chain"] = not_applicable("a single scenario has no adjacent pair");
  } else {
    ordered_json pairs = ordered_json::array();
    for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
      const auto cmp = compare_adjacent(chain[i], chain[i + 1], taxonomy, excluded);
      ordered_json pair;
      pair["index"] = i + 1;
      pair["window_a"] = cmp.window_a.label();
      pair["window_b"] = cmp.window_b.label();
      pair["n_compared"] = cmp.n_compared;
      pair["overall"] = agreement_json(cmp.overall);
      ordered_json by_uda = ordered_json::object();
      for (const auto& [uda, a] : cmp.by_uda) by_uda[uda] = agreement_json(a);
      pair["by_uda"] = std::move(by_uda);
      pairs.push_back(std::move(pair));

      auto row = [&](const std::string& uda, const ClassAgreement& a) {
        const std::string cells[] = {std::to_string(i + 1), cmp.window_a.label(),
                                     cmp.window_b.label(), uda,
                                     format_double(a.mean_abs_class_diff),
                                     rho_cell(a.spearman_rho), std::to_string(a.n)};
        write_csv_row(scenario_csv, cells);
      };
      for (const auto& [uda, a] : cmp.by_uda) row(uda, a);
      row("ALL", cmp.overall);
    }
    report["comparison_chain"] = {{"status", "ok"}, {"pairs", std::move(pairs)}};
  }

  // Two consecutive sub-windows against the full reference window.
  if (eval.eligible_sds().empty()) {
    report["transitions"] = not_applicable("no eligible SDS");
  } else if (reference.length() != 2 * config.transition_length) {
    report["transitions"] = not_applicable(
        "reference window " + reference.label() + " does not split into two periods of " +
        std::to_string(config.transition_length) + " years");
  } else {
    const auto halves = partition_windows(reference, config.transition_length);
    const auto t = transitions(rankings(halves[0]), rankings(halves[1]), rankings(reference),
                               taxonomy, excluded);
    ordered_json section;
    section["status"] = "ok";
    section["first"] = t.first.label();
    section["second"] = t.second.label();
    section["full"] = t.full.label();
    section["overall"] = transition_json(t.overall);
    ordered_json by_uda = ordered_json::object();
    for (const auto& [uda, c] : t.by_uda) by_uda[uda] = transition_json(c);
    section["by_uda"] = std::move(by_uda);
    report["transitions"] = std::move(section);
  }

  // Contiguous non-overlapping windows of each length.
  std::ostringstream trend_csv;
  trend_csv << "researcher_id,sds_id,uda_id,period_length,period_index,window_start,window_end,"
               "class,trend_slope,trend_intercept\n";
  {
    std::vector<int> usable;
    ordered_json skipped = ordered_json::array();
    for (const int length : config.delta_lengths) {
      if (reference.length() % length != 0) {
        skipped.push_back({{"length", length}, {"reason", "does not divide the reference window"}});
      } else if (reference.length() / length < 2) {
        skipped.push_back({{"length", length}, {"reason", "fewer than two periods"}});
      } else {
        usable.push_back(length);
      }
    }
    if (eval.eligible_sds().empty() || usable.empty()) {
      report["deltas"] = not_applicable(eval.eligible_sds().empty()
                                            ? "no eligible SDS"
                                            : "no delta length yields two or more periods");
      report["deltas"]["skipped"] = std::move(skipped);
    } else {
      std::vector<RankingSet> sets;
      for (const int length : usable) {
        for (const auto& w : partition_windows(reference, length)) sets.push_back(rankings(w));
      }
      const auto deltas = contiguous_deltas(reference, usable, sets, taxonomy, excluded);
      ordered_json series = ordered_json::array();
      for (const auto& s : deltas.series) {
        ordered_json item;
        item["length"] = s.length;
        ordered_json labels = ordered_json::array();
        for (const auto& w : s.windows) labels.push_back(w.label());
        item["windows"] = std::move(labels);
        item["overall"] = delta_json(s.overall);
        ordered_json by_uda = ordered_json::object();
        for (const auto& [uda, d] : s.by_uda) by_uda[uda] = delta_json(d);
        item["by_uda"] = std::move(by_uda);
        series.push_back(std::move(item));
      }
      report["deltas"] = {{"status", "ok"},
                          {"full", reference.label()},
                          {"series", std::move(series)},
                          {"skipped", std::move(skipped)}};

      // Per-researcher class series with their least-squares trend.
      std::unordered_map<std::string, std::string> uda_of;
      for (const auto& e : taxonomy) uda_of.emplace(e.sds_id, e.uda_id);
      for (const int length : usable) {
        const auto windows = partition_windows(reference, length);
        std::vector<std::unordered_map<std::string_view, int>> classes(windows.size());
        for (std::size_t k = 0; k < windows.size(); ++k) {
          for (const auto& table : rankings(windows[k]).tables) {
            for (const auto& e : table.entries) classes[k].emplace(e.researcher_id, e.quartile_class);
          }
        }
        for (const auto& table : rankings(windows.front()).tables) {
          std::vector<std::string> ids;
          for (const auto& e : table.entries) {
            if (!excluded.contains(e.researcher_id)) ids.push_back(e.researcher_id);
          }
          std::sort(ids.begin(), ids.end());
          for (const auto& id : ids) {
            std::vector<double> values;
            for (const auto& c : classes) values.push_back(c.at(id));
            const auto fit = trend_fit(values);
            for (std::size_t k = 0; k < windows.size(); ++k) {
              const std::string cells[] = {id,
                                           table.sds_id,
                                           uda_of.at(table.sds_id),
                                           std::to_string(length),
                                           std::to_string(k),
                                           std::to_string(windows[k].start),
                                           std::to_string(windows[k].end),
                                           std::to_string(static_cast<int>(values[k])),
                                           format_double(fit.slope),
                                           format_double(fit.intercept)};
              write_csv_row(trend_csv, cells);
            }
          }
        }
      }
    }
  }

  ordered_json written = ordered_json::array();
  if (config.wants("csv")) {
    write_file(out_dir / "plot_scenarios.csv", scenario_csv.str());
    write_file(out_dir / "plot_trends.csv", trend_csv.str());
    written.push_back("plot_scenarios.csv");
    written.push_back("plot_trends.csv");
  }
  if (config.export_baselines) {
    write_file(out_dir / "baselines.csv", baselines_to_csv(eval.baselines()));
    written.push_back("baselines.csv");
  }
  if (config.wants("json")) written.push_back("analysis.json");
  if (config.wants("text")) written.push_back("analysis.txt");
  report["files"] = std::move(written);

  const auto text = report.dump(2) + "\n";
  if (config.wants("json")) write_file(out_dir / "analysis.json", text);
  if (config.wants("text")) write_file(out_dir / "analysis.txt", render_text_report(text));
  return text;
}

// Text rendering -------------------------------------------------------------------

namespace {

std::string fixed(const json& v, int decimals = 3) {
  if (v.is_null()) return "n/a";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v.get<double>());
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string lpad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

}  // namespace

std::string render_text_report(std::string_view analysis_json) {
  json doc;
  try {
    doc = json::parse(analysis_json);
  } catch (const json::parse_error& e) {
    throw DataError(Issue{"schema", "", 0, "", "", std::string("report is not valid JSON: ") + e.what()});
  }
  if (!doc.is_object() || doc.value("report", "") != "analyze") {
    throw DataError(Issue{"schema", "", 0, "", "", "not an analysis report"});
  }
  std::ostringstream out;
  out << "FSS publication-window analysis\n";
  out << "reference window: " << doc.value("reference_window", "") << "\n";
  out << "observation date: " << doc.value("observation_date", "") << "\n";
  out << "baselines: " << doc.value("baseline_source", "") << "\n";
  out << "eligible SDSs: " << doc["eligible_sds"].size()
      << ", evaluated researchers: " << doc.value("evaluated_researchers", 0)
      << ", always inactive (excluded): " << doc.value("excluded_always_inactive", 0) << "\n";
  out << "inputs sha256: " << doc["inputs"].value("sha256", "") << "\n\n";

  const auto& chain = doc["comparison_chain"];
  if (chain.value("status", "") != "ok") {
    out << "Adjacent scenarios: not applicable (" << chain.value("reason", "") << ")\n\n";
  } else {
    std::set<std::string> udas;
    for (const auto& p : chain["pairs"]) {
      for (const auto& [uda, _] : p["by_uda"].items()) udas.insert(uda);
    }
    for (const bool rho : {false, true}) {
      out << (rho ? "Spearman rho between adjacent scenarios\n"
                  : "Mean absolute class difference between adjacent scenarios\n");
      out << pad("UDA", 12);
      for (const auto& p : chain["pairs"]) out << lpad(std::to_string(p["index"].get<int>()) + "v" + std::to_string(p["index"].get<int>() + 1), 9);
      out << "\n";
      auto line = [&](const std::string& name, auto&& get) {
        out << pad(name, 12);
        for (const auto& p : chain["pairs"]) {
          const auto* a = get(p);
          out << lpad(a ? fixed(rho ? (*a)["spearman_rho"] : (*a)["mean_abs_class_diff"]) : "-", 9);
        }
        out << "\n";
      };
      for (const auto& uda : udas) {
        line(uda, [&](const json& p) -> const json* {
          return p["by_uda"].contains(uda) ? &p["by_uda"][uda] : nullptr;
        });
      }
      line("ALL", [](const json& p) -> const json* { return &p["overall"]; });
      out << "\n";
    }
  }

  const auto& tr = doc["transitions"];
  if (tr.value("status", "") != "ok") {
    out << "Transitions: not applicable (" << tr.value("reason", "") << ")\n\n";
  } else {
    out << "Top-class transitions " << tr.value("first", "") << " -> " << tr.value("second", "")
        << " hidden by " << tr.value("full", "") << " (% of researchers)\n";
    out << pad("UDA", 12) << lpad("decr", 9) << lpad("incr", 9) << lpad("total", 9) << "\n";
    auto row = [&](const std::string& name, const json& c) {
      out << pad(name, 12) << lpad(fixed(c["decreasing_pct"], 1), 9)
          << lpad(fixed(c["increasing_pct"], 1), 9) << lpad(fixed(c["total_pct"], 1), 9) << "\n";
    };
    for (const auto& [uda, c] : tr["by_uda"].items()) row(uda, c);
    row("ALL", tr["overall"]);
    out << "\n";
  }

  const auto& dl = doc["deltas"];
  if (dl.value("status", "") != "ok") {
    out << "Contiguous-period deltas: not applicable (" << dl.value("reason", "") << ")\n";
  } else {
    out << "Mean absolute class change between contiguous periods\n";
    std::set<std::string> udas;
    for (const auto& s : dl["series"]) {
      for (const auto& [uda, _] : s["by_uda"].items()) udas.insert(uda);
    }
    out << pad("UDA", 12);
    for (const auto& s : dl["series"]) out << lpad("D" + std::to_string(s["length"].get<int>()), 9);
    out << "\n";
    for (const auto& uda : udas) {
      out << pad(uda, 12);
      for (const auto& s : dl["series"]) {
        out << lpad(s["by_uda"].contains(uda) ? fixed(s["by_uda"][uda]["delta"]) : "-", 9);
      }
      out << "\n";
    }
    out << pad("ALL", 12);
    for (const auto& s : dl["series"]) out << lpad(fixed(s["overall"]["delta"]), 9);
    out << "\n";
  }
  return out.str();
}

}  // namespace fss
