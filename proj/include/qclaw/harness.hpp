#pragma once

// Experiment driver shared by the qclaw tool and the acceptance run.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qclaw/amplify.hpp"
#include "qclaw/claw.hpp"
#include "qclaw/instance_io.hpp"

namespace qclaw {

enum class Format { Csv, Json };
Format parse_format(const std::string& s);

// Algorithm names: claw, ed (k absent: one planted collision; k = 2: 2-to-1;
// k > 2: k-repeated), ordered, both-ordered, triangle, triangle-triples,
// classical-ed, classical-claw, classical-triangle.
const std::vector<std::string>& algorithm_names();

struct ExperimentConfig {
  std::string algorithm;
  std::vector<std::uint64_t> sizes;
  std::uint64_t trials = 1;
  Mode mode = Mode::Analytic;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> m;  // second table size, or edge count for graphs
  std::optional<std::uint64_t> ell;
  std::optional<std::uint64_t> r;
  std::optional<std::uint64_t> k;
  std::optional<std::uint64_t> cutoff;
  ScheduleConfig schedule{};
  Format format = Format::Csv;
  std::optional<std::filesystem::path> out;
  // run on these instances instead of generating; sizes are then ignored
  std::optional<std::filesystem::path> instance;
  unsigned threads = 1;
};

struct TrialRecord {
  std::string algorithm;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  Mode mode = Mode::Analytic;
  std::uint64_t trial = 0;
  std::uint64_t seed = 0;
  double comparisons = 0.0;
  double evaluations = 0.0;
  double edge_queries = 0.0;
  double outer_rounds = 0.0;
  bool found = false;
  bool witness_expected = false;  // instance holds a claw/collision/triangle
  double cost = 0.0;              // the algorithm's own query measure
  nlohmann::json report;
};

struct SizeSummary {
  std::uint64_t n = 0;
  double median_cost = 0.0;
  double mean_cost = 0.0;
  double found_rate = 0.0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<TrialRecord> trials;
  std::vector<SizeSummary> summary;
};

// Seed of trial (size, trial): fixes both the instance and the run's stream.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t size, std::uint64_t trial);

// One trial on a given instance.
TrialRecord run_trial(const ExperimentConfig& config, const std::vector<Instance>& inst, std::uint64_t size, std::uint64_t trial,
                      std::uint64_t seed);
// Instance a generated trial uses.
// One function or graph, or the pair (f, g) for the two-table algorithms.
std::vector<Instance> make_instance(const ExperimentConfig& config, std::uint64_t size, std::uint64_t seed);

ExperimentResult run_experiment(const ExperimentConfig& config);

std::string to_csv(const ExperimentResult& r);
nlohmann::json to_json(const ExperimentResult& r);
void write_result(const ExperimentResult& r, const std::filesystem::path& path, Format format);

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::vector<std::pair<double, double>> points;  // (log2 size, log2 cost)
};

// Least squares on (log2 size, log2(cost / normalize(size))).
FitResult fit_exponent(const std::vector<std::pair<double, double>>& points,
                       const std::function<double(double)>& normalize = {});
FitResult fit_exponent(const ExperimentResult& r, const std::function<double(double)>& normalize = {});

}  // namespace qclaw
