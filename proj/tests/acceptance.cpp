// Acceptance suite. Each invocation checks one criterion and prints one
// verdict line; the exit code is 0 (pass), 1 (fail) or 77 (skipped).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "oracles.hpp"
#include "walkpred/baselines.hpp"
#include "walkpred/cli.hpp"
#include "walkpred/evaluation.hpp"
#include "walkpred/metrics.hpp"
#include "walkpred/rng.hpp"
#include "walkpred/walk_predictors.hpp"

namespace fs = std::filesystem;
using namespace walkpred;

namespace {

enum class Verdict { Pass, Fail, Skip };

struct Outcome {
  Verdict verdict;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string sci(double x) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(2) << x;
  return s.str();
}

std::string fixed(double x, int digits = 3) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << x;
  return s.str();
}

// Collects sub-check results; the criterion passes when every check passes.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    std::cout << "    " << (ok ? "ok   " : "FAIL ") << what << '\n';
    if (!ok) ++failures_;
  }
  void near(double got, double want, double tol, const std::string& what) {
    expect(std::abs(got - want) <= tol, what + ": " + fixed(got, 4) + " vs " + fixed(want, 3) + " +- " + fixed(tol, 3));
  }
  int failures() const { return failures_; }

 private:
  int failures_ = 0;
};

// ---------------------------------------------------------------------------
// Benchmark networks

struct Dataset {
  std::string name;
  std::string file;
  std::size_t n, m, sips;
  double mean_degree, density, clustering, assortativity;
};

const std::vector<Dataset>& datasets() {
  static const std::vector<Dataset> all{
      {"HI-AP-MS", "hi_ap_ms.txt", 5457, 28780, 1127, 10.548, 0.002, 0.158, -0.188},
      {"S. cerevisiae", "s_cerevisiae.txt", 5420, 25035, 1417, 9.238, 0.002, 0.122, -0.121},
      {"M. musculus", "m_musculus.txt", 2995, 4671, 978, 3.119, 0.001, 0.103, -0.070},
      {"H. sapiens", "h_sapiens.txt", 8601, 24627, 4409, 5.727, 0.001, 0.171, 0.138},
  };
  return all;
}

const Dataset& dataset(const std::string& name) {
  for (const auto& d : datasets())
    if (d.name == name) return d;
  throw std::logic_error("unknown dataset " + name);
}

fs::path data_dir;

std::optional<fs::path> locate(const Dataset& d) {
  const fs::path p = data_dir / d.file;
  if (fs::exists(p)) return p;
  return std::nullopt;
}

std::string missing_list(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    for (const auto& d : datasets())
      if (d.name == n && !locate(d)) out += (out.empty() ? "" : ", ") + d.file;
  }
  return out;
}

unsigned worker_count() { return std::max(1u, std::thread::hardware_concurrency()); }

EvaluationReport benchmark(const Dataset& d, std::vector<Method> methods, double fraction) {
  const Network net = parse_edge_list_file(locate(d)->string());
  ExperimentConfig config;
  config.dataset_id = d.name;
  config.methods = std::move(methods);
  config.fractions = {fraction};
  config.trials = 20;
  config.master_seed = 0;
  config.threads = worker_count();
  config.progress = &std::cerr;
  std::cout << "    running " << d.name << " at " << fraction << " removal\n" << std::flush;
  return run_experiment(net, config);
}

// Runs `body` on the listed datasets that are present. `minimum` lists the
// datasets without which the criterion is reported as skipped.
Outcome on_datasets(const std::vector<std::string>& wanted, const std::vector<std::string>& minimum,
                    const std::function<void(const Dataset&, Checks&)>& body) {
  for (const auto& name : minimum)
    if (!locate(dataset(name)))
      return {Verdict::Skip, "benchmark edge lists not found in " + data_dir.string() + " (missing " +
                                 missing_list(wanted) + ")"};
  Checks checks;
  std::vector<std::string> ran;
  for (const auto& name : wanted) {
    const Dataset& d = dataset(name);
    if (!locate(d)) continue;
    body(d, checks);
    ran.push_back(name);
  }
  std::string detail = std::to_string(ran.size()) + "/" + std::to_string(wanted.size()) + " datasets";
  if (ran.size() < wanted.size()) detail += " (missing " + missing_list(wanted) + ")";
  return {checks.failures() == 0 ? Verdict::Pass : Verdict::Fail,
          detail + ", " + std::to_string(checks.failures()) + " failed checks"};
}

// ---------------------------------------------------------------------------
// Criteria

Outcome criterion_1() {
  std::vector<std::string> names;
  for (const auto& d : datasets()) names.push_back(d.name);
  return on_datasets(names, names, [](const Dataset& d, Checks& checks) {
    const auto start = Clock::now();
    const Network net = parse_edge_list_file(locate(d)->string());
    const NetworkStats s = compute_stats(net);
    const double elapsed = seconds_since(start);
    checks.expect(s.nodes == d.n, d.name + " n = " + std::to_string(s.nodes));
    checks.expect(s.edges == d.m, d.name + " m = " + std::to_string(s.edges));
    checks.expect(s.self_loops == d.sips, d.name + " SIPs = " + std::to_string(s.self_loops));
    checks.near(s.mean_degree, d.mean_degree, 0.005, d.name + " <k>");
    checks.near(s.density, d.density, 0.005, d.name + " density");
    checks.near(s.clustering, d.clustering, 0.005, d.name + " clustering");
    checks.near(s.assortativity, d.assortativity, 0.005, d.name + " assortativity");
    checks.expect(elapsed < 5.0, d.name + " load + stats in " + fixed(elapsed, 2) + " s");
  });
}

Outcome criterion_2() {
  const std::map<std::string, double> spm{
      {"S. cerevisiae", 0.84}, {"HI-AP-MS", 0.855}, {"H. sapiens", 0.862}, {"M. musculus", 0.764}};
  const std::map<std::string, std::pair<Method, double>> walks{
      {"S. cerevisiae", {Method::Crw, 0.881}}, {"M. musculus", {Method::Crw, 0.731}}, {"H. sapiens", {Method::QrwA, 0.852}}};
  return on_datasets({"M. musculus", "S. cerevisiae", "H. sapiens", "HI-AP-MS"}, {"M. musculus"},
                     [&](const Dataset& d, Checks& checks) {
                       std::vector<Method> methods{Method::Spm};
                       const auto walk = walks.find(d.name);
                       if (walk != walks.end()) methods.insert(methods.begin(), walk->second.first);
                       const auto report = benchmark(d, methods, 0.1);
                       if (walk != walks.end())
                         checks.near(report.summarize(walk->second.first, 0.1).mean_auc, walk->second.second, 0.02,
                                     d.name + " " + std::string(method_name(walk->second.first)) + " AUC");
                       checks.near(report.summarize(Method::Spm, 0.1).mean_auc, spm.at(d.name), 0.03,
                                   d.name + " SPM AUC");
                     });
}

Outcome criterion_3() {
  std::vector<std::string> names;
  for (const auto& d : datasets()) names.push_back(d.name);
  return on_datasets(names, names, [](const Dataset& d, Checks& checks) {
    const std::vector<Method> methods(std::begin(kAllMethods), std::end(kAllMethods));
    const auto report = benchmark(d, methods, 0.5);
    const double crw = report.summarize(Method::Crw, 0.5).mean_auc;
    for (Method m : methods) {
      if (m == Method::Crw) continue;
      const double other = report.summarize(m, 0.5).mean_auc;
      checks.expect(crw > other, d.name + " CRW " + fixed(crw, 4) + " > " + std::string(method_name(m)) + " " +
                                     fixed(other, 4));
    }
    if (d.name == "S. cerevisiae") checks.near(crw, 0.843, 0.02, d.name + " CRW AUC");
  });
}

Outcome criterion_4() {
  return on_datasets({"S. cerevisiae", "H. sapiens"}, {"S. cerevisiae", "H. sapiens"},
                     [](const Dataset& d, Checks& checks) {
                       if (d.name == "S. cerevisiae") {
                         const auto report = benchmark(d, {Method::Crw}, 0.1);
                         checks.near(report.summarize(Method::Crw, 0.1).mean_ap, 0.053, 0.02, d.name + " CRW AP");
                       } else {
                         const auto report = benchmark(d, {Method::QrwA}, 0.1);
                         checks.near(report.summarize(Method::QrwA, 0.1).mean_ap, 0.121, 0.03, d.name + " QRW-A AP");
                       }
                     });
}

Outcome criterion_5() {
  const auto start = Clock::now();
  std::mt19937_64 rng(5);
  double worst_row = 0, worst_sym = 0, worst_identity = 0, worst_semigroup = 0, worst_uniform = 0;
  std::size_t connected = 0;
  for (int g = 0; g < 200; ++g) {
    const std::size_t n = 2 + walkpred::uniform_below(rng, 49);
    // Every tenth graph carries self-loops.
    const Network net = oracle::random_graph(rng, n, 0.2, g % 10 == 0 ? 0.3 : 0.0);
    const auto lap = decompose(net, SpectralSource::Laplacian);
    const auto adj = decompose(net, SpectralSource::Adjacency);
    std::vector<double> times{0.0, 0.01, 1.0, 10.0};
    if (net.edge_count() > 0) times.push_back(default_time(net));
    for (double t : times) {
      for (const TransitionMatrix& p : {crw_propagator(lap, t), qrw_propagator(lap, t), qrw_propagator(adj, t)}) {
        const auto& m = p.probabilities;
        worst_row = std::max(worst_row, (m.rowwise().sum().array() - 1.0).abs().maxCoeff());
        worst_sym = std::max(worst_sym, (m - m.transpose()).cwiseAbs().maxCoeff());
        if (t == 0.0)
          worst_identity =
              std::max(worst_identity, (m - Eigen::MatrixXd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff());
      }
      for (double s : {0.3, 2.0}) {
        const Eigen::MatrixXd lhs = crw_propagator(lap, s).probabilities * crw_propagator(lap, t).probabilities;
        worst_semigroup =
            std::max(worst_semigroup, (lhs - crw_propagator(lap, s + t).probabilities).cwiseAbs().maxCoeff());
      }
    }
    if (oracle::is_connected(net) && n > 1) {
      ++connected;
      const double lambda2 = lap.eigenvalues()(1);
      const auto p = crw_propagator(lap, 50.0 / lambda2).probabilities;
      worst_uniform = std::max(worst_uniform, (p.array() - 1.0 / static_cast<double>(n)).abs().maxCoeff());
    }
  }
  const double elapsed = seconds_since(start);
  Checks checks;
  checks.expect(worst_row <= 1e-8, "row sums, worst deviation " + sci(worst_row));
  checks.expect(worst_sym <= 1e-8, "symmetry, worst deviation " + sci(worst_sym));
  checks.expect(worst_identity <= 1e-12, "P(0) = I, worst deviation " + sci(worst_identity));
  checks.expect(worst_semigroup <= 1e-8, "CRW semigroup, worst deviation " + sci(worst_semigroup));
  checks.expect(connected > 0 && worst_uniform <= 1e-6, "long-time uniformity on " + std::to_string(connected) +
                                                           " connected graphs, worst " + sci(worst_uniform));
  checks.expect(elapsed < 30.0, "runtime " + fixed(elapsed, 2) + " s");
  return {checks.failures() == 0 ? Verdict::Pass : Verdict::Fail, "200 graphs in " + fixed(elapsed, 2) + " s"};
}

Outcome criterion_6() {
  const auto start = Clock::now();
  double worst_walk = 0;
  std::size_t graphs = 0, baseline_mismatches = 0;
  const oracle::Walk kinds[] = {oracle::Walk::Crw, oracle::Walk::QrwA, oracle::Walk::QrwL};
  const Method methods[] = {Method::Crw, Method::QrwA, Method::QrwL};
  for (std::size_t n = 2; n <= 6; ++n) {
    const std::uint64_t masks = 1ULL << (n * (n - 1) / 2);
    const std::uint64_t loop_masks = n <= 4 ? 1ULL << n : 1;
    for (std::uint64_t mask = 0; mask < masks; ++mask) {
      if (!oracle::is_connected(oracle::graph_from_mask(n, mask))) continue;
      for (std::uint64_t loops = 0; loops < loop_masks; ++loops) {
        const Network net = oracle::graph_from_mask(n, mask, loops);
        ++graphs;
        const auto cands = std::make_shared<const CandidateSet>(CandidateSet::all_non_edges(net, true));
        if (cands->size() == 0) continue;
        const auto lap = decompose(net, SpectralSource::Laplacian);
        const auto adj = decompose(net, SpectralSource::Adjacency);
        for (double t : {default_time(net), 1.7}) {
          for (int w = 0; w < 3; ++w) {
            const auto table = score_walk(w == 1 ? adj : lap, methods[w], t, net, cands);
            const auto want = oracle::walk_scores(net, kinds[w], t, cands->pairs());
            for (std::size_t c = 0; c < cands->size(); ++c)
              worst_walk = std::max(worst_walk, std::abs(table.scores[c] - static_cast<double>(want[c])));
          }
        }
        const auto cn = common_neighbours(net, cands);
        const auto aa = adamic_adar(net, cands);
        const auto pa = preferential_attachment(net, cands);
        const auto l3 = l3_score(net, cands);
        for (std::size_t c = 0; c < cands->size(); ++c) {
          const Edge& p = (*cands)[c];
          const double pa_want = p.is_loop() ? 0.0 : static_cast<double>(net.degree(p.u) * net.degree(p.v));
          if (cn.scores[c] != oracle::common_neighbours(net, p.u, p.v) ||
              aa.scores[c] != oracle::adamic_adar(net, p.u, p.v) || pa.scores[c] != pa_want ||
              l3.scores[c] != oracle::l3(net, p.u, p.v))
            ++baseline_mismatches;
        }
      }
    }
  }

  // SPM on a fixed 8-node instance whose reduced adjacency spectra are simple.
  std::mt19937_64 rng(5);
  const Network net = oracle::random_graph(rng, 8, 0.45);
  const SpmOptions spm{0.25, 4, 3};
  const auto holdouts = spm_sample_holdouts(net, spm);
  const auto cands = std::make_shared<const CandidateSet>(CandidateSet::all_non_edges(net, true));
  const auto got = spm_score(net, cands, spm);
  std::vector<long double> want(cands->size(), 0.0L);
  long double min_gap = 1e300L;
  for (const auto& h : holdouts) {
    std::vector<Edge> kept;
    for (const Edge& e : net.edges())
      if (!std::binary_search(h.begin(), h.end(), e)) kept.push_back(e);
    long double gap = 0;
    const auto rebuilt = oracle::spm_perturbed(net.with_edges(kept), h, &gap);
    min_gap = std::min(min_gap, gap);
    for (std::size_t c = 0; c < cands->size(); ++c) {
      const Edge& p = (*cands)[c];
      if (!p.is_loop()) want[c] += rebuilt(p.u, p.v) / static_cast<long double>(holdouts.size());
    }
  }
  double worst_spm = 0;
  for (std::size_t c = 0; c < cands->size(); ++c)
    worst_spm = std::max(worst_spm, std::abs(got.scores[c] - static_cast<double>(want[c])));

  Checks checks;
  checks.expect(worst_walk <= 1e-10, "walk scores on " + std::to_string(graphs) + " graphs, worst deviation " +
                                         sci(worst_walk));
  checks.expect(baseline_mismatches == 0, "CN/AA/PA/L3 exact, mismatches " + std::to_string(baseline_mismatches));
  checks.expect(min_gap > 1e-6L, "SPM instance has simple spectra, min gap " + sci(static_cast<double>(min_gap)));
  checks.expect(worst_spm <= 1e-10, "SPM against Jacobi oracle, worst deviation " + sci(worst_spm));
  return {checks.failures() == 0 ? Verdict::Pass : Verdict::Fail,
          std::to_string(graphs) + " graphs in " + fixed(seconds_since(start), 2) + " s"};
}

Outcome criterion_7() {
  // Fixed 6-node graph; node 5 carries a self-loop.
  const Network net({"0", "1", "2", "3", "4", "5"},
                    {Edge(0, 1), Edge(1, 2), Edge(0, 2), Edge(2, 3), Edge(3, 4), Edge(4, 5), Edge(1, 4), Edge(5, 5)});
  const double t = 0.4;
  const std::size_t walkers = 1000000;
  const auto p = crw_propagator(decompose(net, SpectralSource::Laplacian), t).probabilities;

  // Each edge carries an independent unit-rate Poisson clock; the walker
  // crosses whichever incident edge rings first. Self-loops ring in place.
  std::mt19937_64 rng(7);
  std::exponential_distribution<double> clock(1.0);
  std::vector<std::vector<NodeId>> incident(net.node_count());
  for (const Edge& e : net.edges()) {
    incident[e.u].push_back(e.v);
    if (!e.is_loop()) incident[e.v].push_back(e.u);
  }
  double worst_z = 0;
  for (NodeId start = 0; start < net.node_count(); ++start) {
    std::vector<std::size_t> landed(net.node_count(), 0);
    for (std::size_t w = 0; w < walkers; ++w) {
      NodeId at = start;
      double now = 0.0;
      for (;;) {
        double first = std::numeric_limits<double>::infinity();
        NodeId next = at;
        for (NodeId v : incident[at]) {
          const double ring = clock(rng);
          if (ring < first) first = ring, next = v;
        }
        if (now + first > t) break;
        now += first;
        at = next;
      }
      ++landed[at];
    }
    for (NodeId j = 0; j < net.node_count(); ++j) {
      const double want = p(start, j);
      const double se = std::sqrt(want * (1.0 - want) / static_cast<double>(walkers));
      const double freq = static_cast<double>(landed[j]) / static_cast<double>(walkers);
      worst_z = std::max(worst_z, std::abs(freq - want) / se);
    }
  }
  Checks checks;
  checks.expect(worst_z <= 3.0, "36 entries, worst |z| = " + fixed(worst_z, 2));
  return {checks.failures() == 0 ? Verdict::Pass : Verdict::Fail,
          "10^6 walkers per start node, worst |z| " + fixed(worst_z, 2)};
}

Outcome criterion_8() {
  std::mt19937_64 rng(8);
  std::size_t auc_mismatch = 0, ap_mismatch = 0;
  for (int rep = 0; rep < 50; ++rep) {
    std::vector<double> scores(200);
    std::vector<std::uint8_t> labels(200);
    const std::uint64_t levels = 2 + walkpred::uniform_below(rng, 60);
    for (std::size_t i = 0; i < 200; ++i) {
      scores[i] = static_cast<double>(walkpred::uniform_below(rng, levels)) * 0.37;
      labels[i] = walkpred::uniform_below(rng, 5) == 0;
    }
    labels[rep % 200] = 1;
    labels[(rep + 1) % 200] = 0;
    if (auc(scores, labels) != oracle::auc(scores, labels)) ++auc_mismatch;
    if (average_precision(scores, labels) != oracle::average_precision(scores, labels)) ++ap_mismatch;
  }
  Checks checks;
  checks.expect(auc_mismatch == 0, "AUC exact on 50 instances, mismatches " + std::to_string(auc_mismatch));
  checks.expect(ap_mismatch == 0, "AP exact on 50 instances, mismatches " + std::to_string(ap_mismatch));
  return {checks.failures() == 0 ? Verdict::Pass : Verdict::Fail, "50 instances of 200 pairs"};
}

std::string report_body(const fs::path& file) {
  std::ifstream in(file);
  std::string body;
  for (std::string line; std::getline(in, line);)
    if (line.empty() || line[0] != '#') body += line + '\n';
  return body;
}

Outcome criterion_9() {
  const fs::path dir = fs::temp_directory_path() / "walkpred_acceptance_9";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::mt19937_64 rng(9);
  {
    std::ofstream out(dir / "graph.txt");
    write_edge_list(out, oracle::random_graph(rng, 60, 0.08, 0.15));
  }
  std::vector<std::string> bodies;
  Checks checks;
  for (int round = 0; round < 2; ++round) {
    for (const char* threads : {"1", "2", "4"}) {
      const std::string out_dir = (dir / ("run_" + std::to_string(round) + "_" + threads)).string();
      const std::string input = (dir / "graph.txt").string();
      const char* argv[] = {"walkpred", "evaluate", input.c_str(), "--method", "all", "--remove-frac", "0.1",
                            "--remove-frac", "0.5", "--trials", "3", "--seed", "42", "--spm-reps", "3",
                            "--threads", threads, "--out-dir", out_dir.c_str()};
      std::ostringstream out, err;
      const int code = cli::run(static_cast<int>(std::size(argv)), argv, out, err);
      checks.expect(code == 0, "round " + std::to_string(round + 1) + " with " + threads + " threads exits 0");
      bodies.push_back(report_body(fs::path(out_dir) / "report.csv"));
    }
  }
  bool identical = !bodies[0].empty();
  for (const auto& b : bodies) identical = identical && b == bodies[0];
  checks.expect(identical, "report.csv bodies identical across 6 runs");
  fs::remove_all(dir);
  return {checks.failures() == 0 ? Verdict::Pass : Verdict::Fail, "threads 1, 2, 4, run twice"};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"walkpred acceptance suite"};
  int criterion = 0;
  std::string dir;
  app.add_option("--criterion", criterion, "Criterion number")->required()->check(CLI::Range(1, 9));
  app.add_option("--data-dir", dir, "Directory holding the benchmark edge lists");
  CLI11_PARSE(app, argc, argv);

  if (dir.empty()) {
    const char* env = std::getenv("WALKPRED_DATA_DIR");
    dir = env && *env ? env : WALKPRED_DEFAULT_DATA_DIR;
  }
  data_dir = dir;
  set_blas_threads(1);

  static const std::map<int, std::pair<const char*, Outcome (*)()>> table{
      {1, {"dataset statistics", criterion_1}},
      {2, {"AUC at 10% removal", criterion_2}},
      {3, {"AUC at 50% removal", criterion_3}},
      {4, {"AP at 10% removal", criterion_4}},
      {5, {"propagator properties", criterion_5}},
      {6, {"oracle equivalence", criterion_6}},
      {7, {"Monte Carlo walk simulation", criterion_7}},
      {8, {"metric oracles", criterion_8}},
      {9, {"thread-count determinism", criterion_9}},
  };
  const auto& [title, check] = table.at(criterion);
  Outcome outcome;
  try {
    outcome = check();
  } catch (const std::exception& e) {
    outcome = {Verdict::Fail, std::string("exception: ") + e.what()};
  }
  const char* tag = outcome.verdict == Verdict::Pass ? "PASS" : outcome.verdict == Verdict::Fail ? "FAIL" : "SKIP";
  std::cout << tag << " criterion " << criterion << " (" << title << "): " << outcome.detail << '\n';
  return outcome.verdict == Verdict::Pass ? 0 : outcome.verdict == Verdict::Fail ? 1 : 77;
}
