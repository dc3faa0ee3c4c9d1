#pragma once

// Claw and collision finders in the comparison model.
//
// Every finder runs in one of two modes. Sampled mode executes the algorithm
// against a metered oracle; the reported comparisons equal the ledger.
// Analytic mode evaluates the exact expected cost of the same algorithm on
// the given instance from white-box knowledge of its structure, without
// running it.

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"
#include "qclaw/amplify.hpp"
#include "qclaw/oracle.hpp"

namespace qclaw {

enum class Mode { Sampled, Analytic };

// Analytic reports carry the verdict a successful run would give.
enum class Verdict { ClawFound, CollisionFound, Distinct, NotFound };

const char* mode_name(Mode m);
const char* verdict_name(Verdict v);
Mode parse_mode(const std::string& s);

struct RunReport {
  std::string algorithm;
  Mode mode = Mode::Sampled;
  Verdict verdict = Verdict::NotFound;
  std::optional<ClawPair> witness;
  double comparisons = 0.0;  // ledger count, or expected value
  double outer_rounds = 0.0;
  // probability that the run reports a witness (analytic), 1 or 0 in sampled mode
  double success_probability = 0.0;
  QueryLedger ledger;
  std::map<std::string, double> params;
  ScheduleConfig schedule;
  std::optional<std::uint64_t> seed;

  bool found() const { return verdict == Verdict::ClawFound || verdict == Verdict::CollisionFound; }
};

nlohmann::json to_json(const RunReport& r);

// ---- generic claw finder ----

std::uint64_t choose_ell(std::uint64_t n, std::uint64_t m);

// Inner search length of one round: ceil((pi/4) * ell).
std::uint64_t inner_bound(std::uint64_t ell);

struct RoundModel {
  std::uint64_t ell = 0;
  std::uint64_t b_size = 0;      // ell^2
  std::uint64_t inner = 0;       // J
  std::uint64_t predicate = 0;   // comparisons per inner application
  double round_cost = 0.0;       // worst-case sort + J * predicate
  double success = 0.0;          // exact a
  double success_lower = 0.0;    // ell^3 / (2 N M)
};

// Exact per-round success probability a. `collision` selects g = f with x != y.
double round_success(const FunctionInstance& f, const FunctionInstance& g, std::uint64_t ell, bool collision);
RoundModel round_model(const FunctionInstance& f, const FunctionInstance& g, std::uint64_t ell, bool collision);

struct ClawOptions {
  std::optional<std::uint64_t> ell;
  std::optional<std::uint64_t> cutoff_rounds;
  ScheduleConfig schedule{};
};

RunReport generic_claw_finder(const FunctionInstance& f, const FunctionInstance& g, Mode mode, Rng& rng,
                              const ClawOptions& options = {});

// Pinned Distinct cutoff: 3 * ceil(1/sqrt(ell^3 / (2 N^2))) outer rounds.
std::uint64_t distinct_cutoff(std::uint64_t n, std::uint64_t ell, const ScheduleConfig& schedule = {});

RunReport element_distinctness(const FunctionInstance& f, Mode mode, Rng& rng, const ScheduleConfig& schedule = {});
RunReport element_distinctness(const FunctionInstance& f, Mode mode, Rng& rng, const ClawOptions& options);

// Precondition (unchecked): f is 2-to-1.
RunReport collision_two_to_one(const FunctionInstance& f, Mode mode, Rng& rng, const ScheduleConfig& schedule = {});

RunReport collision_k_repeated(const FunctionInstance& f, std::uint64_t k, Mode mode, Rng& rng,
                               const ScheduleConfig& schedule = {});

// Probability that a uniform s-subset of [n] holds at least two of k marked elements.
double subset_hit_probability(std::uint64_t n, std::uint64_t k, std::uint64_t s);

// ---- ordered inputs ----

RunReport ordered_claw(const FunctionInstance& f, const FunctionInstance& g, Mode mode, Rng& rng,
                       std::optional<std::uint64_t> cutoff = std::nullopt, const ScheduleConfig& schedule = {});

RunReport ordered_collision(const FunctionInstance& f, Mode mode, Rng& rng,
                            std::optional<std::uint64_t> cutoff = std::nullopt, const ScheduleConfig& schedule = {});

std::uint64_t log_star(std::uint64_t n);

// Window [start, start+len) of real indices, 1-based; len may be 0.
struct IndexWindow {
  Index start = 1;
  Index len = 0;
  bool operator==(const IndexWindow&) const = default;
};

struct Subproblem {
  Side block_side;  // F: f block i with aligned g window; G: the symmetric case
  std::uint64_t block = 0;
  IndexWindow f_window;
  IndexWindow g_window;
};

// The 2*ceil(n/r) subproblems of an ordered pair, n = max(N, M). White-box
// (uncharged); the search issues the same alignment searches through the oracle.
std::vector<Subproblem> subproblems(const FunctionInstance& f, const FunctionInstance& g, std::uint64_t r);

// r = ceil(log2(n)^2).
std::uint64_t both_ordered_r(std::uint64_t n);
// Worst-case comparisons of the classical merge intersection on two tables of n.
std::uint64_t merge_cost(std::uint64_t n);
// Worst-case comparison budget T(n) of the recursive algorithm.
std::uint64_t both_ordered_budget(std::uint64_t n);

struct BothOrderedOptions {
  // applications of one recursive search; absent: ceil(3 sqrt K)
  std::optional<std::uint64_t> cutoff;
  // block size at the top level only (deeper levels keep ceil(log2^2 n)); r >= n merges
  std::optional<std::uint64_t> r;
  ScheduleConfig schedule{};
};

RunReport both_ordered_claw(const FunctionInstance& f, const FunctionInstance& g, Mode mode, Rng& rng,
                            const BothOrderedOptions& options = {});

// ---- classical baselines (exact, deterministic) ----

RunReport classical_sort_ed(const FunctionInstance& f);
RunReport classical_claw(const FunctionInstance& f, const FunctionInstance& g);

}  // namespace qclaw
