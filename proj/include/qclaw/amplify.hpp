#pragma once

// Rotation-level simulation of Grover search and amplitude amplification.
//
// A uniform-start search over K items with t marked stays in the plane
// spanned by the marked and unmarked superpositions; j iterations rotate the
// state to angle (2j+1)theta with theta = arcsin(sqrt(t/K)). Measurement is
// sampled from that angle. Only predicate applications are counted; the
// diffusion step is free, and every measurement is followed by one
// verification application.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qclaw/errors.hpp"
#include "qclaw/rng.hpp"

namespace qclaw {

struct ScheduleConfig {
  double lambda = 8.0 / 7.0;        // growth of the iteration bound per measurement
  double cutoff_multiplier = 3.0;   // decision rule: multiplier * ceil(sqrt(K)) applications
  const char* rng_algorithm = kRngAlgorithm;
};

class RotationSearch {
 public:
  RotationSearch(std::uint64_t space_size, std::uint64_t marked_count);

  std::uint64_t space_size() const { return k_; }
  std::uint64_t marked_count() const { return t_; }
  double theta() const { return theta_; }
  double success_probability(std::uint64_t iterations) const;

 private:
  std::uint64_t k_;
  std::uint64_t t_;
  double theta_;
};

// sin^2((2j+1) theta) for success amplitude sqrt(a).
double amplified_probability(double a, std::uint64_t iterations);
// Mean of amplified_probability over iterations j in [0, J).
double mean_amplified_probability(double a, std::uint64_t bound);

double grover_success_prob(std::uint64_t k, std::uint64_t t, std::uint64_t j);

inline constexpr std::uint64_t kStatevectorLimit = 4096;

// Explicit K-amplitude simulation (items 1..t marked). ResourceError above
// kStatevectorLimit.
double statevector_grover(std::uint64_t k, std::uint64_t t, std::uint64_t j);
// Marked mass after 0..max_iterations iterations of a single run.
std::vector<double> statevector_trajectory(std::uint64_t k, std::uint64_t t, std::uint64_t max_iterations);

struct SearchOutcome {
  std::optional<std::uint64_t> found;
  std::uint64_t iterations_used = 0;
  std::uint64_t oracle_applications = 0;
  std::uint64_t measurements = 0;
};

// White-box marked set of a search space [0, size). Simulation only.
class MarkedSet {
 public:
  MarkedSet(std::uint64_t size, std::vector<std::uint64_t> marked);
  static MarkedSet scan(std::uint64_t size, const std::function<bool(std::uint64_t)>& truth);

  std::uint64_t size() const { return size_; }
  std::uint64_t count() const { return marked_.size(); }
  bool contains(std::uint64_t item) const;
  const std::vector<std::uint64_t>& items() const { return marked_; }

  std::uint64_t uniform_marked(Rng& rng) const;
  std::uint64_t uniform_unmarked(Rng& rng) const;
  // Measurement of the state after `iterations` Grover iterations.
  std::uint64_t measure(std::uint64_t iterations, Rng& rng) const;

 private:
  std::uint64_t size_;
  std::vector<std::uint64_t> marked_;  // sorted, unique
};

// Items 1..t of [1, K] are marked. Always j + 1 applications.
SearchOutcome sample_grover(std::uint64_t k, std::uint64_t t, std::uint64_t j, Rng& rng);

struct SearchTarget {
  MarkedSet marked;
  // One metered predicate application; returns membership.
  std::function<bool(std::uint64_t)> apply;
};

struct QSearchOptions {
  std::optional<std::uint64_t> cutoff;  // total applications
  std::optional<double> cap;            // bound on the iteration limit, sqrt(K) for item search
  ScheduleConfig schedule{};
};

std::uint64_t decision_cutoff(std::uint64_t space, const ScheduleConfig& schedule = {});

// Unknown-t search. Each superposed iteration is realised as one real
// predicate application on a uniformly random item. Without a cutoff, an
// empty marked set raises ContractError instead of looping forever.
SearchOutcome qsearch(const SearchTarget& target, Rng& rng, const QSearchOptions& options);
// Standalone form: `predicate` is both the white-box truth and the counted application.
SearchOutcome qsearch(std::uint64_t k, const std::function<bool(std::uint64_t)>& predicate, Rng& rng,
                      std::optional<std::uint64_t> cutoff = std::nullopt, const ScheduleConfig& schedule = {});

// ceil(pi/(4 theta) - 1/2): the first j with (2j+1) theta >= pi/2.
std::uint64_t known_iterations(double a);

struct KnownAmplification {
  std::uint64_t iterations = 0;
  double success_probability = 0.0;
  bool succeeded = false;
  std::uint64_t applications = 0;
  double cost = 0.0;
};

KnownAmplification amplify_known(double a, double round_cost, Rng& rng);

// Exact expected applications of the schedule with true success probability
// a (no cutoff).
double expected_applications(double a, std::optional<double> cap = std::nullopt, const ScheduleConfig& schedule = {});

struct SearchStats {
  double expected_applications = 0.0;
  double success_probability = 0.0;
};

// Exact statistics of the schedule truncated after `cutoff` applications.
SearchStats search_stats(double a, std::optional<std::uint64_t> cutoff, std::optional<double> cap = std::nullopt,
                         const ScheduleConfig& schedule = {});

// ---- amplification of a measuring procedure ----
//
// `run` executes one metered application and reports its witness (if it
// succeeded). `success_probability` is the exact white-box probability of
// that. `sample_success` draws a witness from the success-conditioned output
// distribution without touching any oracle.
template <class Witness>
struct MeasuredProcedure {
  double success_probability = 0.0;
  std::function<std::optional<Witness>(Rng&)> run;
  std::function<Witness(Rng&)> sample_success;
};

template <class Witness>
struct AmplifiedRun {
  std::optional<Witness> witness;
  std::uint64_t applications = 0;
  std::uint64_t measurements = 0;
};

// One measurement after `iterations` amplification iterations: executes
// iterations + 1 concrete applications and thins or boosts the last one's
// success to sin^2((2j+1) theta).
template <class Witness>
std::optional<Witness> measure_amplified(const MeasuredProcedure<Witness>& proc, std::uint64_t iterations, Rng& rng) {
  const double a = proc.success_probability;
  for (std::uint64_t i = 0; i < iterations; ++i) (void)proc.run(rng);
  std::optional<Witness> w = proc.run(rng);
  if (a <= 0.0) {
    if (w) throw std::logic_error("measure_amplified: procedure succeeded with zero success probability");
    return std::nullopt;
  }
  const double p = amplified_probability(a, iterations);
  if (w) {
    if (p < a && !bernoulli(rng, p / a)) return std::nullopt;
    return w;
  }
  if (p > a && a < 1.0 && bernoulli(rng, (p - a) / (1.0 - a))) return proc.sample_success(rng);
  return std::nullopt;
}

template <class Witness>
AmplifiedRun<Witness> amplify_procedure(const MeasuredProcedure<Witness>& proc, Rng& rng,
                                        std::optional<std::uint64_t> cutoff, const ScheduleConfig& schedule = {}) {
  if (!cutoff && proc.success_probability <= 0.0)
    throw ContractError("amplify_procedure: no cutoff on an input without solutions would never terminate");
  AmplifiedRun<Witness> out;
  double bound = 1.0;
  while (!cutoff || out.applications < *cutoff) {
    std::uint64_t j = uniform_below(rng, static_cast<std::uint64_t>(std::ceil(bound)));
    if (cutoff) j = std::min<std::uint64_t>(j, *cutoff - out.applications - 1);
    std::optional<Witness> w = measure_amplified(proc, j, rng);
    out.applications += j + 1;
    ++out.measurements;
    if (w) {
      out.witness = std::move(w);
      return out;
    }
    bound *= schedule.lambda;
  }
  return out;
}

}  // namespace qclaw
