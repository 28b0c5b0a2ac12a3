#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "walkpred/scores.hpp"

namespace walkpred::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kConfigError = 2, kNumericError = 3 };

struct RunConfig {
  std::string command;
  std::string dataset;
  std::vector<Method> methods;
  std::vector<double> remove_fractions;
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  std::optional<double> time;
  std::string out_dir = ".";
  std::vector<std::string> formats;  // subset of {csv, json}; empty means command default
  std::size_t top_k = 0;
  bool include_self_pairs = true;
  double spm_hold_out = 0.1;
  std::size_t spm_repetitions = 10;
  std::optional<std::string> cache_dir;
  unsigned threads = 1;
  bool tie_averaged_ap = false;
  bool l3_normalized = true;

  // Throws ConfigError.
  void validate() const;
  nlohmann::json to_json() const;
  bool wants(const std::string& format) const;
};

int cmd_stats(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_predict(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_evaluate(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv, dispatches, maps exceptions to exit codes (errors go to err).
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace walkpred::cli
