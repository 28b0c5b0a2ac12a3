#include "walkpred/evaluation.hpp"

#include <atomic>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "walkpred/error.hpp"
#include "walkpred/rng.hpp"

namespace walkpred {

std::uint64_t trial_seed(const SplitSpec& spec) {
  return mix_seed({spec.master_seed, std::bit_cast<std::uint64_t>(spec.fraction), spec.trial});
}

EvaluationSplit make_split(const Network& net, const SplitSpec& spec, const SplitOptions& options) {
  if (!(spec.fraction > 0.0 && spec.fraction < 1.0)) throw ConfigError("removal fraction must lie in (0, 1)");
  if (options.remove_self_loops && !options.include_self_pairs)
    throw ConfigError("removing self-loops requires self-pair candidates");

  std::vector<std::size_t> eligible;
  eligible.reserve(net.edge_count());
  for (std::size_t e = 0; e < net.edge_count(); ++e)
    if (options.remove_self_loops || !net.edges()[e].is_loop()) eligible.push_back(e);

  const auto count =
      static_cast<std::size_t>(std::floor(spec.fraction * static_cast<double>(eligible.size()) + 0.5));
  if (count < 1) throw ConfigError("removal fraction selects no edges");

  EvaluationSplit split;
  split.seed = trial_seed(spec);
  std::mt19937_64 rng(split.seed);
  std::vector<std::uint8_t> removed(net.edge_count(), 0);
  for (std::size_t i : sample_without_replacement(eligible.size(), count, rng)) removed[eligible[i]] = 1;

  std::vector<Edge> kept;
  kept.reserve(net.edge_count() - count);
  for (std::size_t e = 0; e < net.edge_count(); ++e) {
    (removed[e] ? split.positives : kept).push_back(net.edges()[e]);
  }
  split.training = net.with_edges(std::move(kept));
  auto candidates = std::make_shared<CandidateSet>(CandidateSet::all_non_edges(split.training, options.include_self_pairs));
  split.labels.resize(candidates->size());
  std::size_t positives = 0;
  for (std::size_t c = 0; c < candidates->size(); ++c) {
    const Edge& p = (*candidates)[c];
    split.labels[c] = net.has_edge(p.u, p.v) ? 1 : 0;
    positives += split.labels[c];
  }
  if (positives != split.positives.size()) throw ContractError("split lost positive candidates");
  split.negative_count = candidates->size() - positives;
  split.candidates = std::move(candidates);
  return split;
}

namespace {

void check_alignment(const ScoreTable& scores, const EvaluationSplit& split) {
  if (scores.scores.size() != split.labels.size())
    throw ContractError("score table was not built on this split's candidates");
}

}  // namespace

double auc(const ScoreTable& scores, const EvaluationSplit& split) {
  check_alignment(scores, split);
  return auc(std::span<const double>(scores.scores), split.labels);
}

double average_precision(const ScoreTable& scores, const EvaluationSplit& split, ApTies ties) {
  check_alignment(scores, split);
  return average_precision(std::span<const double>(scores.scores), split.labels, ties);
}

void validate(const ExperimentConfig& config) {
  if (config.methods.empty()) throw ConfigError("no methods selected");
  if (config.fractions.empty()) throw ConfigError("no removal fractions selected");
  for (double f : config.fractions)
    if (!(f > 0.0 && f < 1.0)) throw ConfigError("removal fraction must lie in (0, 1)");
  if (config.trials < 1) throw ConfigError("trials must be >= 1");
  if (config.time && !(*config.time >= 0.0 && std::isfinite(*config.time))) throw ConfigError("walk time must be >= 0");
  if (!(config.spm_hold_out > 0.0 && config.spm_hold_out < 1.0))
    throw ConfigError("SPM hold-out fraction must lie in (0, 1)");
  if (config.spm_repetitions < 1) throw ConfigError("SPM repetitions must be >= 1");
  if (config.split.remove_self_loops && !config.split.include_self_pairs)
    throw ConfigError("removing self-loops requires self-pair candidates");
}

std::vector<TrialResult> EvaluationReport::select(Method method, double fraction) const {
  std::vector<TrialResult> out;
  for (const auto& r : results)
    if (r.method == method && r.fraction == fraction) out.push_back(r);
  return out;
}

Summary EvaluationReport::summarize(Method method, double fraction) const {
  const auto rows = select(method, fraction);
  auto stats = [&](auto field) {
    if (rows.empty()) return std::pair{std::numeric_limits<double>::quiet_NaN(), 0.0};
    double mean = 0.0;
    for (const auto& r : rows) mean += r.*field;
    mean /= static_cast<double>(rows.size());
    double ss = 0.0;
    for (const auto& r : rows) ss += (r.*field - mean) * (r.*field - mean);
    const double sd = rows.size() > 1 ? std::sqrt(ss / static_cast<double>(rows.size() - 1)) : 0.0;
    return std::pair{mean, sd};
  };
  const auto [ma, sa] = stats(&TrialResult::auc);
  const auto [mp, sp] = stats(&TrialResult::ap);
  const auto [mt, st] = stats(&TrialResult::ap_tie_averaged);
  return {ma, sa, mp, sp, mt, st};
}

namespace {

// Walk methods grouped by operator so each decomposition can be released
// once its last consumer is done.
std::vector<std::size_t> execution_order(const std::vector<Method>& methods) {
  std::vector<std::size_t> order;
  auto take = [&](auto pred) {
    for (std::size_t i = 0; i < methods.size(); ++i)
      if (pred(methods[i])) order.push_back(i);
  };
  take([](Method m) { return m == Method::Crw || m == Method::QrwL; });
  take([](Method m) { return m == Method::QrwA; });
  take([](Method m) { return !is_walk_method(m); });
  return order;
}

std::vector<TrialResult> run_unit(const Network& net, const ExperimentConfig& config, double fraction,
                                  std::size_t trial) {
  const SplitSpec spec{fraction, trial, config.master_seed};
  const EvaluationSplit split = make_split(net, spec, config.split);

  PredictorOptions options;
  options.time = config.time;
  options.spm = {config.spm_hold_out, config.spm_repetitions, mix_seed({split.seed, 0x53504dULL})};
  options.l3_normalized = config.l3_normalized;
  options.cache = config.cache;
  Predictor predictor(split.training, options);

  std::vector<TrialResult> results(config.methods.size());
  const auto order = execution_order(config.methods);
  for (std::size_t pos = 0; pos < order.size(); ++pos) {
    const Method method = config.methods[order[pos]];
    const auto start = std::chrono::steady_clock::now();
    const ScoreTable table = predictor.score(method, split.candidates);
    TrialResult r{method,
                  fraction,
                  trial,
                  split.seed,
                  table.time.value_or(std::numeric_limits<double>::quiet_NaN()),
                  auc(table, split),
                  average_precision(table, split, ApTies::Deterministic),
                  average_precision(table, split, ApTies::Averaged),
                  0.0};
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    results[order[pos]] = r;

    const bool laplacian_done = std::none_of(order.begin() + static_cast<std::ptrdiff_t>(pos) + 1, order.end(),
                                             [&](std::size_t i) { return config.methods[i] == Method::Crw ||
                                                                         config.methods[i] == Method::QrwL; });
    if (laplacian_done) predictor.release(SpectralSource::Laplacian);
    if (method == Method::QrwA) predictor.release(SpectralSource::Adjacency);
  }
  return results;
}

}  // namespace

EvaluationReport run_experiment(const Network& net, const ExperimentConfig& config) {
  validate(config);
  set_blas_threads(1);

  EvaluationReport report;
  report.dataset_id = config.dataset_id;
  report.master_seed = config.master_seed;
  report.trials = config.trials;
  report.methods = config.methods;
  report.fractions = config.fractions;

  const std::size_t units = config.fractions.size() * config.trials;
  std::vector<std::vector<TrialResult>> unit_results(units);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t u = next.fetch_add(1);
      if (u >= units || failed.load()) return;
      const double fraction = config.fractions[u / config.trials];
      const std::size_t trial = u % config.trials;
      try {
        const auto start = std::chrono::steady_clock::now();
        unit_results[u] = run_unit(net, config, fraction, trial);
        if (config.progress) {
          const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
          char elapsed[32];
          std::snprintf(elapsed, sizeof elapsed, "%.1f", secs);
          std::lock_guard lock(mutex);
          *config.progress << "[" << config.dataset_id << "] P=" << fraction << " trial " << trial + 1 << "/"
                           << config.trials << " done in " << elapsed << " s\n";
        }
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!error) error = std::current_exception();
        failed = true;
        return;
      }
    }
  };

  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, config.threads), units));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  for (auto& unit : unit_results)
    for (auto& r : unit) report.results.push_back(r);
  return report;
}

}  // namespace walkpred
