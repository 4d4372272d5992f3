// Command-line front end over the fss C API.
//
//   fss validate  <paths...>            check input tables, exit 0 iff clean
//   fss generate  --out DIR [options]   write a seeded synthetic corpus
//   fss rank      <paths...> [options]  ranking CSVs per SDS per scenario
//   fss analyze   <paths...> [options]  comparison/transition/delta reports
//   fss report    <analysis.json|DIR>   print the analysis as text tables
//
// Every run option may also come from --config FILE (key=value lines or a
// JSON object, keys as in the recorded run_config). Flags override the file.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fss/fss.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitData = 2;
constexpr int kExitUsage = 64;
constexpr int kExitInternal = 1;

enum class Kind { text, integer, number, boolean, text_list, integer_list };

struct OptionSpec {
  const char* key;
  const char* flag;
  Kind kind;
  const char* help;
};

constexpr OptionSpec kRunOptions[] = {
    {"format", "--format", Kind::text, "input table format: csv or json"},
    {"reference_publications", "--reference-publications", Kind::text,
     "publications table used only for citation baselines"},
    {"baselines_in", "--baselines", Kind::text, "import baselines CSV (category,year,median,count)"},
    {"observation_date", "--observation-date", Kind::text, "citation snapshot label for reports"},
    {"anchor_year", "--anchor-year", Kind::integer, "last year of every scenario"},
    {"max_length", "--max-length", Kind::integer, "longest scenario in years"},
    {"percentile_convention", "--percentile-convention", Kind::text, "percentile convention (midrank)"},
    {"category_weights", "--category-weights", Kind::text,
     "multi-category weighting: equal or w1;w2;..."},
    {"min_active_share", "--min-active-share", Kind::number, "SDS eligibility: share with output"},
    {"min_members", "--min-members", Kind::integer, "SDS eligibility: minimum stable staff"},
    {"transition_length", "--transition-length", Kind::integer, "length of the two compared periods"},
    {"delta_lengths", "--delta-lengths", Kind::integer_list, "contiguous period lengths, e.g. 1,2,3"},
    {"output_dir", "--out", Kind::text, "output directory"},
    {"report_formats", "--report-formats", Kind::text_list, "any of json,csv,text"},
    {"export_baselines", "--export-baselines", Kind::boolean, "also write baselines.csv"},
    {"threads", "--threads", Kind::integer, "worker threads (outputs do not depend on it)"},
};

constexpr OptionSpec kGeneratorOptions[] = {
    {"seed", "--seed", Kind::integer, "random seed"},
    {"n_sds", "--n-sds", Kind::integer, "number of SDSs"},
    {"n_uda", "--n-uda", Kind::integer, "number of UDAs"},
    {"staff_min", "--staff-min", Kind::integer, "minimum staff per SDS"},
    {"staff_max", "--staff-max", Kind::integer, "maximum staff per SDS"},
    {"years", "--years", Kind::text, "publication years, e.g. 2003-2008"},
    {"n_universities", "--n-universities", Kind::integer, "number of universities"},
    {"latent_sigma", "--latent-sigma", Kind::number, "log-sd of latent productivity"},
    {"inactive_share", "--inactive-share", Kind::number, "share of researchers who never publish"},
    {"non_stable_share", "--non-stable-share", Kind::number, "share joining/leaving mid-period"},
    {"pub_rate", "--pub-rate", Kind::number, "publications per researcher-year"},
    {"citation_mean", "--citation-mean", Kind::number, "mean citations per publication"},
    {"citation_dispersion", "--citation-dispersion", Kind::number, "negative binomial size"},
    {"quality_link", "--quality-link", Kind::number, "citation/latent exponent"},
    {"category_spread", "--category-spread", Kind::number, "log-sd of category citation intensity"},
    {"coauthor_mean", "--coauthor-mean", Kind::number, "mean byline length"},
    {"roster_coauthor_share", "--roster-coauthor-share", Kind::number, "co-author slots for colleagues"},
    {"intramural_share", "--intramural-share", Kind::number, "external co-authors at lead's university"},
    {"positional_share", "--positional-share", Kind::number, "share of SDSs with positional weights"},
    {"multi_category_share", "--multi-category-share", Kind::number, "two-category publications"},
    {"noise", "--noise", Kind::number, "yearly noise knob"},
    {"stochastic_counts", "--stochastic-counts", Kind::boolean, "false: deterministic counts"},
};

class UsageFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json convert(const OptionSpec& spec, const std::string& raw) {
  auto fail = [&]() -> json {
    throw UsageFailure(std::string("invalid value for ") + spec.key + ": '" + raw + "'");
  };
  try {
    switch (spec.kind) {
      case Kind::text:
        return raw;
      case Kind::integer: {
        std::size_t used = 0;
        const long long v = std::stoll(raw, &used);
        return used == raw.size() ? json(v) : fail();
      }
      case Kind::number: {
        std::size_t used = 0;
        const double v = std::stod(raw, &used);
        return used == raw.size() ? json(v) : fail();
      }
      case Kind::boolean:
        if (raw == "true" || raw == "1") return true;
        if (raw == "false" || raw == "0") return false;
        return fail();
      case Kind::text_list:
      case Kind::integer_list: {
        json list = json::array();
        std::stringstream in(raw);
        std::string item;
        while (std::getline(in, item, ',')) {
          if (item.empty()) continue;
          if (spec.kind == Kind::text_list) {
            list.push_back(item);
          } else {
            std::size_t used = 0;
            const long long v = std::stoll(item, &used);
            if (used != item.size()) return fail();
            list.push_back(v);
          }
        }
        return list;
      }
    }
  } catch (const std::logic_error&) {
    return fail();
  }
  return fail();
}

std::string strip(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

// Reads a config file: a JSON object, or key=value lines ('#' comments).
json read_config_file(const std::string& path, std::span<const OptionSpec> specs) {
  std::ifstream in(path);
  if (!in) throw UsageFailure("cannot read config file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      return json::parse(text);
    } catch (const json::parse_error& e) {
      throw UsageFailure("config file " + path + " is not valid JSON: " + e.what());
    }
  }
  json out = json::object();
  std::istringstream lines(text);
  std::string line;
  int number = 0;
  while (std::getline(lines, line)) {
    ++number;
    const auto content = strip(line.substr(0, line.find('#')));
    if (content.empty()) continue;
    const auto eq = content.find('=');
    if (eq == std::string::npos) {
      throw UsageFailure(path + ":" + std::to_string(number) + ": expected key=value");
    }
    const auto key = strip(content.substr(0, eq));
    const auto value = strip(content.substr(eq + 1));
    if (key == "inputs") {
      out["inputs"] = convert(OptionSpec{"inputs", "", Kind::text_list, ""}, value);
      continue;
    }
    const auto it = std::find_if(specs.begin(), specs.end(),
                                 [&](const OptionSpec& s) { return key == s.key; });
    if (it == specs.end()) throw UsageFailure(path + ":" + std::to_string(number) + ": unknown key '" + key + "'");
    out[key] = convert(*it, value);
  }
  return out;
}

// CLI11 options for a spec table, stored as raw strings.
struct BoundOptions {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;

  void bind(CLI::App& app, std::span<const OptionSpec> specs) {
    for (const auto& spec : specs) {
      options[spec.key] = app.add_option(spec.flag, values[spec.key], spec.help);
    }
  }

  // File values first, then every flag given on the command line.
  json merge(const json& file, std::span<const OptionSpec> specs) const {
    json out = file.is_object() ? file : json::object();
    for (const auto& spec : specs) {
      if (options.at(spec.key)->count() > 0) out[spec.key] = convert(spec, values.at(spec.key));
    }
    return out;
  }
};

int exit_for(fss_status status) {
  switch (status) {
    case FSS_OK: return kExitOk;
    case FSS_ERR_DATA: return kExitData;
    case FSS_ERR_INVALID_ARGUMENT: return kExitUsage;
    default: return kExitInternal;
  }
}

int report_failure(fss_status status) {
  std::cerr << "fss: " << fss_last_error() << "\n";
  return exit_for(status);
}

int cmd_validate(const std::vector<std::string>& paths, const std::string& format,
                 const std::string& observation_date) {
  if (paths.empty()) {
    std::cerr << "fss validate: no input files given\n";
    std::cout << json{{"status", "error"},
                      {"errors", json::array({{{"kind", "usage"}, {"message", "no input files given"}}})}}
                     .dump(2)
              << "\n";
    return kExitUsage;
  }
  std::vector<const char*> c_paths;
  for (const auto& p : paths) c_paths.push_back(p.c_str());
  fss_corpus* corpus = nullptr;
  const auto status = fss_corpus_load(c_paths.data(), c_paths.size(), format.c_str(),
                                      observation_date.c_str(), &corpus);
  if (status != FSS_OK) {
    json out{{"status", "error"}, {"errors", json::parse(fss_last_error_json())}};
    std::cout << out.dump(2) << "\n";
    std::cerr << "fss validate: " << fss_last_error() << "\n";
    return exit_for(status);
  }
  std::size_t researchers = 0, publications = 0, authorships = 0, sds = 0;
  fss_corpus_counts(corpus, &researchers, &publications, &authorships, &sds);
  fss_corpus_free(corpus);
  std::cout << json{{"status", "ok"},
                    {"researchers", researchers},
                    {"publications", publications},
                    {"authorships", authorships},
                    {"sds", sds}}
                   .dump(2)
            << "\n";
  return kExitOk;
}

int cmd_run(bool analyze, const json& config, bool quiet) {
  char* report = nullptr;
  const auto text = config.dump();
  const auto status = analyze ? fss_run_analyze(text.c_str(), &report)
                              : fss_run_rank(text.c_str(), &report);
  if (status != FSS_OK) return report_failure(status);
  const json doc = json::parse(report);
  fss_string_free(report);
  if (!quiet) {
    const std::string out_dir = doc["run_config"].value("output_dir", "");
    if (analyze) {
      std::cout << "analysis written to " << out_dir << " (" << doc["eligible_sds"].size()
                << " SDSs, " << doc.value("evaluated_researchers", 0) << " researchers)\n";
    } else {
      std::cout << doc["files"].size() << " ranking files written to " << out_dir << "/rankings\n";
    }
    if (doc.contains("warnings")) {
      for (const auto& w : doc["warnings"]) std::cerr << "warning: " << w.get<std::string>() << "\n";
    }
  }
  return kExitOk;
}

int cmd_report(const std::string& target) {
  std::filesystem::path path(target);
  if (std::filesystem::is_directory(path)) path /= "analysis.json";
  char* text = nullptr;
  const auto status = fss_render_report(path.string().c_str(), &text);
  if (status != FSS_OK) return report_failure(status);
  std::cout << text;
  fss_string_free(text);
  return kExitOk;
}

int cmd_generate(const json& config, const std::string& out_dir, const std::string& format) {
  const auto text = config.dump();
  const auto status = fss_generate(text.c_str(), out_dir.c_str(), format.c_str());
  if (status != FSS_OK) return report_failure(status);
  std::cout << "synthetic corpus written to " << out_dir << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Field-normalized fractional productivity (FSS) rankings and publication-window "
               "sensitivity analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fss_version()));

  auto* validate = app.add_subcommand("validate", "check input tables; exit 0 iff clean");
  std::vector<std::string> validate_paths;
  std::string validate_format = "csv";
  std::string validate_date;
  validate->add_option("paths", validate_paths, "table files or directories");
  validate->add_option("--format", validate_format, "csv or json");
  validate->add_option("--observation-date", validate_date, "citation snapshot label");

  auto* generate = app.add_subcommand("generate", "write a seeded synthetic corpus");
  BoundOptions gen_options;
  gen_options.bind(*generate, kGeneratorOptions);
  std::string gen_out;
  std::string gen_format = "csv";
  std::string gen_config;
  generate->add_option("--out", gen_out, "output directory")->required();
  generate->add_option("--format", gen_format, "csv or json");
  generate->add_option("--config", gen_config, "generator config file (key=value or JSON)");

  std::vector<std::string> run_paths;
  std::string run_config_path;
  BoundOptions run_options;
  bool quiet = false;
  auto* rank = app.add_subcommand("rank", "rank every eligible SDS over each scenario window");
  auto* analyze = app.add_subcommand("analyze", "run the window-length sensitivity analyses");
  for (auto* sub : {rank, analyze}) {
    sub->add_option("paths", run_paths, "table files or directories");
    sub->add_option("--config", run_config_path, "run config file (key=value or JSON)");
    sub->add_flag("--quiet", quiet, "no summary on stdout");
  }
  run_options.bind(*rank, kRunOptions);
  BoundOptions analyze_options;
  analyze_options.bind(*analyze, kRunOptions);

  auto* report = app.add_subcommand("report", "print an analysis report as text tables");
  std::string report_target;
  report->add_option("report", report_target, "analysis.json or the analyze output directory")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (validate->parsed()) return cmd_validate(validate_paths, validate_format, validate_date);
    if (report->parsed()) return cmd_report(report_target);
    if (generate->parsed()) {
      json file = gen_config.empty() ? json::object() : read_config_file(gen_config, kGeneratorOptions);
      return cmd_generate(gen_options.merge(file, kGeneratorOptions), gen_out, gen_format);
    }
    const bool is_analyze = analyze->parsed();
    const auto& bound = is_analyze ? analyze_options : run_options;
    json file = run_config_path.empty() ? json::object() : read_config_file(run_config_path, kRunOptions);
    json config = bound.merge(file, kRunOptions);
    if (!run_paths.empty()) config["inputs"] = run_paths;
    if (!config.contains("inputs") || config["inputs"].empty()) {
      std::cerr << "fss: no input files given\n";
      return kExitUsage;
    }
    return cmd_run(is_analyze, config, quiet);
  } catch (const UsageFailure& e) {
    std::cerr << "fss: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "fss: " << e.what() << "\n";
    return kExitInternal;
  }
}
