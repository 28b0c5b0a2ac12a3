#pragma once

#include <ostream>
#include <string>

#include "json.hpp"
#include "walkpred/evaluation.hpp"
#include "walkpred/network.hpp"

namespace walkpred {

std::string_view version();

// Provenance block written at the top of every output file.
struct Provenance {
  nlohmann::json config;  // run configuration, embedded verbatim
};

// Nested method -> removal fraction -> trials, with summaries and timings.
nlohmann::json report_to_json(const EvaluationReport& report, const Provenance& provenance);

// CSV outputs start with "# walkpred <version>" and "# config: <json>" lines;
// the remaining lines (the body) depend only on the results.

// One row per method / fraction / trial. Wall times are left to the JSON
// report so the body is reproducible.
void write_report_csv(std::ostream& out, const EvaluationReport& report, const Provenance& provenance);

// One row per method / fraction: mean AUC and mean AP across trials.
void write_curves_csv(std::ostream& out, const EvaluationReport& report, const Provenance& provenance,
                      ApTies ties = ApTies::Deterministic);

// Fraction-by-method grid of mean AUC and AP for the terminal.
void print_grid(std::ostream& out, const EvaluationReport& report, ApTies ties = ApTies::Deterministic);

void write_stats(std::ostream& out, const std::string& dataset, const NetworkStats& stats);
void write_ccdf_csv(std::ostream& out, const std::vector<CcdfPoint>& ccdf, const Provenance& provenance);

void write_provenance_header(std::ostream& out, const Provenance& provenance);

}  // namespace walkpred
