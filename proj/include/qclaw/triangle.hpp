#pragma once

// Triangle finding with edge-slot queries.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "json.hpp"
#include "qclaw/amplify.hpp"
#include "qclaw/claw.hpp"
#include "qclaw/oracle.hpp"

namespace qclaw {

using Triangle = std::array<Index, 3>;  // ascending

struct StageBreakdown {
  double edge_search = 0.0;  // stage-1 queries
  double node_search = 0.0;  // stage-2 queries
  double outer_rounds = 0.0;
};

struct TriangleResult {
  std::string algorithm;
  Mode mode = Mode::Sampled;
  std::optional<Triangle> nodes;
  double edge_queries = 0.0;  // ledger count, or expected value
  StageBreakdown stages;
  double success_probability = 0.0;
  QueryLedger ledger;
  std::map<std::string, double> params;
  ScheduleConfig schedule;
  std::optional<std::uint64_t> seed;

  bool found() const { return nodes.has_value(); }
};

nlohmann::json to_json(const TriangleResult& r);

// Exact per-round success: (1/m) sum over edges e of the stage-2 success
// with t_e completing nodes among n-2 candidates.
double triangle_round_success(const GraphInstance& g);
// Fraction of edges lying on some triangle: stage 1's chance of a useful edge.
double triangle_edge_fraction(const GraphInstance& g);

// Pinned cutoff 3 * ceil(sqrt m) outer rounds.
std::uint64_t triangle_cutoff(std::uint64_t m, const ScheduleConfig& schedule = {});

TriangleResult find_triangle(const GraphInstance& g, Mode mode, Rng& rng,
                             std::optional<std::uint64_t> cutoff_rounds = std::nullopt,
                             const ScheduleConfig& schedule = {});

// Search over all C(n,3) triples, 3 queries per application. Default cutoff
// 3 * ceil(sqrt C(n,3)) applications.
TriangleResult grover_all_triples(const GraphInstance& g, Mode mode, Rng& rng,
                                  std::optional<std::uint64_t> cutoff = std::nullopt,
                                  const ScheduleConfig& schedule = {});

TriangleResult classical_triangle(const GraphInstance& g);

// Exactly one triangle plus a triangle-free bipartite remainder with
// target_m edges in total. DomainError when infeasible.
GraphInstance gen_planted_triangle(Index n, std::uint64_t target_m, std::uint64_t seed);

// Colex rank of a < b < c (1-based) among the C(n,3) triples, and back.
std::uint64_t triple_rank(Index a, Index b, Index c);
Triangle triple_unrank(std::uint64_t rank);

}  // namespace qclaw
