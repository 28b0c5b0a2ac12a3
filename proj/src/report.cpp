#include "walkpred/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

namespace walkpred {

#ifndef WALKPRED_VERSION
#define WALKPRED_VERSION "0.0.0"
#endif

std::string_view version() { return WALKPRED_VERSION; }

namespace {

nlohmann::json number_or_null(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

}  // namespace

void write_provenance_header(std::ostream& out, const Provenance& provenance) {
  out << "# walkpred " << version() << '\n';
  out << "# config: " << provenance.config.dump() << '\n';
}

nlohmann::json report_to_json(const EvaluationReport& report, const Provenance& provenance) {
  nlohmann::json methods = nlohmann::json::object();
  for (Method m : report.methods) {
    nlohmann::json by_fraction = nlohmann::json::object();
    for (double f : report.fractions) {
      nlohmann::json trials = nlohmann::json::array();
      for (const auto& r : report.select(m, f)) {
        trials.push_back({{"trial", r.trial},
                          {"seed", r.seed},
                          {"t", number_or_null(r.walk_time)},
                          {"auc", r.auc},
                          {"ap", r.ap},
                          {"ap_tie_averaged", r.ap_tie_averaged},
                          {"seconds", r.seconds}});
      }
      const Summary s = report.summarize(m, f);
      by_fraction[format_number(f)] = {{"trials", std::move(trials)},
                                       {"mean_auc", number_or_null(s.mean_auc)},
                                       {"std_auc", number_or_null(s.std_auc)},
                                       {"mean_ap", number_or_null(s.mean_ap)},
                                       {"std_ap", number_or_null(s.std_ap)},
                                       {"mean_ap_tie_averaged", number_or_null(s.mean_ap_tie_averaged)},
                                       {"std_ap_tie_averaged", number_or_null(s.std_ap_tie_averaged)}};
    }
    methods[std::string(method_name(m))] = std::move(by_fraction);
  }
  return {{"tool", "walkpred"},
          {"version", version()},
          {"config", provenance.config},
          {"dataset", report.dataset_id},
          {"master_seed", report.master_seed},
          {"trials", report.trials},
          {"methods", std::move(methods)}};
}

void write_report_csv(std::ostream& out, const EvaluationReport& report, const Provenance& provenance) {
  write_provenance_header(out, provenance);
  out << "method,remove_frac,trial,seed,t,auc,ap,ap_tie_averaged\n";
  for (const auto& r : report.results) {
    out << method_name(r.method) << ',' << format_number(r.fraction) << ',' << r.trial << ',' << r.seed << ','
        << (std::isnan(r.walk_time) ? std::string() : format_number(r.walk_time)) << ',' << format_number(r.auc)
        << ',' << format_number(r.ap) << ',' << format_number(r.ap_tie_averaged) << '\n';
  }
}

void write_curves_csv(std::ostream& out, const EvaluationReport& report, const Provenance& provenance, ApTies ties) {
  write_provenance_header(out, provenance);
  out << "method,remove_frac,mean_auc,mean_ap\n";
  for (Method m : report.methods) {
    for (double f : report.fractions) {
      const Summary s = report.summarize(m, f);
      out << method_name(m) << ',' << format_number(f) << ',' << format_number(s.mean_auc) << ','
          << format_number(ties == ApTies::Deterministic ? s.mean_ap : s.mean_ap_tie_averaged) << '\n';
    }
  }
}

void print_grid(std::ostream& out, const EvaluationReport& report, ApTies ties) {
  std::ostringstream text;
  text << std::fixed << std::setprecision(3);
  for (const char* metric : {"AUC", "AP"}) {
    text << metric << (report.dataset_id.empty() ? "" : " (" + report.dataset_id + ")") << '\n';
    text << std::setw(8) << "P";
    for (Method m : report.methods) text << std::setw(9) << method_name(m);
    text << '\n';
    for (double f : report.fractions) {
      text << std::setw(8) << f;
      for (Method m : report.methods) {
        const Summary s = report.summarize(m, f);
        const double v = std::string_view(metric) == "AUC"
                             ? s.mean_auc
                             : (ties == ApTies::Deterministic ? s.mean_ap : s.mean_ap_tie_averaged);
        text << std::setw(9) << v;
      }
      text << '\n';
    }
    text << '\n';
  }
  out << text.str();
}

void write_stats(std::ostream& out, const std::string& dataset, const NetworkStats& stats) {
  std::ostringstream text;
  text << std::fixed << std::setprecision(3);
  text << "network\tn\tm\tmean_degree\tdensity\tclustering\tassortativity\tSIPs\n";
  text << dataset << '\t' << stats.nodes << '\t' << stats.edges << '\t' << stats.mean_degree << '\t' << stats.density
       << '\t' << stats.clustering << '\t' << stats.assortativity << '\t' << stats.self_loops << '\n';
  out << text.str();
}

void write_ccdf_csv(std::ostream& out, const std::vector<CcdfPoint>& ccdf, const Provenance& provenance) {
  write_provenance_header(out, provenance);
  out << "degree,fraction\n";
  for (const auto& p : ccdf) out << p.degree << ',' << format_number(p.fraction) << '\n';
}

}  // namespace walkpred
