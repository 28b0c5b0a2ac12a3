#include "walkpred/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <thread>

#include "CLI11.hpp"
#include "walkpred/decomposition_cache.hpp"
#include "walkpred/error.hpp"
#include "walkpred/evaluation.hpp"
#include "walkpred/predictor.hpp"
#include "walkpred/report.hpp"

namespace walkpred::cli {

namespace fs = std::filesystem;

void RunConfig::validate() const {
  if (dataset.empty()) throw ConfigError("no dataset given");
  if (command != "stats" && methods.empty()) throw ConfigError("no methods selected");
  if (time && !(*time >= 0.0 && std::isfinite(*time))) throw ConfigError("--t must be a finite value >= 0");
  for (double f : remove_fractions)
    if (!(f > 0.0 && f < 1.0)) throw ConfigError("--remove-frac values must lie in (0, 1)");
  if (command == "evaluate" && remove_fractions.empty()) throw ConfigError("no removal fractions given");
  if (trials < 1) throw ConfigError("--trials must be >= 1");
  if (!(spm_hold_out > 0.0 && spm_hold_out < 1.0)) throw ConfigError("--spm-hold-out must lie in (0, 1)");
  if (spm_repetitions < 1) throw ConfigError("--spm-reps must be >= 1");
  if (threads < 1) throw ConfigError("--threads must be >= 1");
  for (const auto& f : formats)
    if (f != "csv" && f != "json") throw ConfigError("unknown format '" + f + "'");
}

bool RunConfig::wants(const std::string& format) const {
  return formats.empty() || std::find(formats.begin(), formats.end(), format) != formats.end();
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json names = nlohmann::json::array();
  for (Method m : methods) names.push_back(method_name(m));
  return {{"command", command},
          {"dataset", dataset},
          {"methods", names},
          {"remove_fractions", remove_fractions},
          {"trials", trials},
          {"seed", seed},
          {"t", time ? nlohmann::json(*time) : nlohmann::json(nullptr)},
          {"out_dir", out_dir},
          {"formats", formats},
          {"top_k", top_k},
          {"include_self_pairs", include_self_pairs},
          {"spm_hold_out", spm_hold_out},
          {"spm_reps", spm_repetitions},
          {"cache_decomposition", cache_dir ? nlohmann::json(*cache_dir) : nlohmann::json(nullptr)},
          {"threads", threads},
          {"tie_averaged_ap", tie_averaged_ap},
          {"l3_normalized", l3_normalized}};
}

namespace {

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  return out;
}

fs::path prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
  return fs::path(dir);
}

std::string dataset_id(const std::string& path) { return fs::path(path).stem().string(); }

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

int cmd_stats(const RunConfig& config, std::ostream& out, std::ostream& err) {
  config.validate();
  const Network net = parse_edge_list_file(config.dataset);
  write_stats(out, dataset_id(config.dataset), compute_stats(net));
  const fs::path path = prepare_out_dir(config.out_dir) / "ccdf.csv";
  auto file = open_output(path);
  write_ccdf_csv(file, degree_ccdf(net), {config.to_json()});
  err << "wrote " << path.string() << '\n';
  return kOk;
}

int cmd_predict(const RunConfig& config, std::ostream& out, std::ostream& err) {
  config.validate();
  set_blas_threads(1);
  const Network net = parse_edge_list_file(config.dataset);
  const fs::path dir = prepare_out_dir(config.out_dir);
  std::optional<DecompositionCache> cache;
  if (config.cache_dir) cache.emplace(*config.cache_dir);

  PredictorOptions options;
  options.time = config.time;
  options.spm = {config.spm_hold_out, config.spm_repetitions, config.seed};
  options.l3_normalized = config.l3_normalized;
  options.cache = cache ? &*cache : nullptr;
  Predictor predictor(net, options);

  auto candidates = std::make_shared<const CandidateSet>(CandidateSet::all_non_edges(net, config.include_self_pairs));
  err << "scoring " << candidates->size() << " candidate pairs of " << net.node_count() << " nodes\n";
  const Provenance provenance{config.to_json()};
  for (Method method : config.methods) {
    err << "  " << method_name(method) << "...\n";
    const ScoreTable table = predictor.score(method, candidates);
    const std::string stem = "scores_" + lower(method_name(method));
    const bool json_only = !config.formats.empty() && !config.wants("csv");
    if (!json_only) {
      const fs::path path = dir / (stem + ".csv");
      auto file = open_output(path);
      write_provenance_header(file, provenance);
      write_scores_csv(file, net, table, config.top_k);
      out << path.string() << '\n';
    }
    if (!config.formats.empty() && config.wants("json")) {
      const fs::path path = dir / (stem + ".json");
      auto file = open_output(path);
      std::ostringstream body;
      write_scores_json(body, net, table, config.top_k);
      auto doc = nlohmann::json::parse(body.str());
      doc["version"] = version();
      doc["config"] = provenance.config;
      file << doc.dump(2) << '\n';
      out << path.string() << '\n';
    }
  }
  return kOk;
}

int cmd_evaluate(const RunConfig& config, std::ostream& out, std::ostream& err) {
  config.validate();
  const Network net = parse_edge_list_file(config.dataset);
  const fs::path dir = prepare_out_dir(config.out_dir);
  std::optional<DecompositionCache> cache;
  if (config.cache_dir) cache.emplace(*config.cache_dir);

  ExperimentConfig experiment;
  experiment.dataset_id = dataset_id(config.dataset);
  experiment.methods = config.methods;
  experiment.fractions = config.remove_fractions;
  experiment.trials = config.trials;
  experiment.master_seed = config.seed;
  experiment.time = config.time;
  experiment.spm_hold_out = config.spm_hold_out;
  experiment.spm_repetitions = config.spm_repetitions;
  experiment.l3_normalized = config.l3_normalized;
  experiment.split.include_self_pairs = config.include_self_pairs;
  experiment.split.remove_self_loops = config.include_self_pairs;
  experiment.threads = config.threads;
  experiment.cache = cache ? &*cache : nullptr;
  experiment.progress = &err;

  const EvaluationReport report = run_experiment(net, experiment);
  const Provenance provenance{config.to_json()};
  const ApTies ties = config.tie_averaged_ap ? ApTies::Averaged : ApTies::Deterministic;
  if (config.wants("json")) {
    auto file = open_output(dir / "report.json");
    file << report_to_json(report, provenance).dump(2) << '\n';
  }
  if (config.wants("csv")) {
    auto file = open_output(dir / "report.csv");
    write_report_csv(file, report, provenance);
    auto curves = open_output(dir / "curves.csv");
    write_curves_csv(curves, report, provenance, ties);
  }
  print_grid(out, report, ties);
  return kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Link prediction with continuous-time classical and quantum walks", "walkpred"};
  app.set_version_flag("--version", std::string(version()));
  app.require_subcommand(1);

  RunConfig config;
  std::vector<std::string> method_names;
  std::string include_self_pairs = "true";
  double time = 0.0;
  std::string cache_dir;
  bool l3_unnormalized = false;
  config.threads = std::max(1u, std::thread::hardware_concurrency());

  auto* stats = app.add_subcommand("stats", "Network statistics and degree CCDF");
  auto* predict = app.add_subcommand("predict", "Score every candidate pair of a network");
  auto* evaluate = app.add_subcommand("evaluate", "Edge-removal benchmark");

  for (auto* sub : {stats, predict, evaluate}) {
    sub->add_option("dataset", config.dataset, "Edge-list file")->required();
    sub->add_option("--out-dir", config.out_dir, "Output directory");
  }
  for (auto* sub : {predict, evaluate}) {
    sub->add_option("--method", method_names, "crw, qrw-a, qrw-l, l3, pa, cn, aa, spm or all (repeatable)")
        ->required();
    sub->add_option("--seed", config.seed, "Master seed");
    sub->add_option("--t", time, "Walk time (default 1/<k>)");
    sub->add_option("--format", config.formats, "csv and/or json (repeatable)");
    sub->add_option("--include-self-pairs", include_self_pairs, "Score self-pairs (true/false)")
        ->check(CLI::IsMember({"true", "false"}));
    sub->add_option("--spm-hold-out", config.spm_hold_out, "SPM perturbation fraction");
    sub->add_option("--spm-reps", config.spm_repetitions, "SPM repetitions");
    sub->add_option("--cache-decomposition", cache_dir, "Directory for cached eigendecompositions");
    sub->add_option("--threads", config.threads, "Worker threads");
    sub->add_flag("--l3-unnormalized", l3_unnormalized, "Plain length-3 path counts for L3");
  }
  predict->add_option("--top-k", config.top_k, "Keep only the K best pairs (0 = all)");
  evaluate->add_option("--remove-frac", config.remove_fractions, "Removal fraction (repeatable)");
  evaluate->add_option("--trials", config.trials, "Trials per removal fraction");
  evaluate->add_flag("--tie-averaged-ap", config.tie_averaged_ap, "Use tie-averaged AP in curves and grid");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << version() << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    CLI::App* chosen = app.get_subcommands().front();
    config.command = chosen->get_name();
    auto given = [chosen](const char* name) {
      const CLI::Option* opt = chosen->get_option_no_throw(name);
      return opt != nullptr && opt->count() > 0;
    };
    if (given("--t")) config.time = time;
    if (given("--cache-decomposition")) config.cache_dir = cache_dir;
    config.include_self_pairs = include_self_pairs == "true";
    config.l3_normalized = !l3_unnormalized;
    for (const auto& name : method_names) {
      if (lower(name) == "all") {
        config.methods.assign(std::begin(kAllMethods), std::end(kAllMethods));
        continue;
      }
      auto m = parse_method(name);
      if (!m) throw ConfigError("unknown method '" + name + "'");
      if (std::find(config.methods.begin(), config.methods.end(), *m) == config.methods.end())
        config.methods.push_back(*m);
    }
    if (config.command == "evaluate" && config.remove_fractions.empty()) config.remove_fractions = {0.1};

    if (config.command == "stats") return cmd_stats(config, out, err);
    if (config.command == "predict") return cmd_predict(config, out, err);
    return cmd_evaluate(config, out, err);
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumericError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace walkpred::cli
