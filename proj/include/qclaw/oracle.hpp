#pragma once

// Problem instances and the metered access paths every algorithm uses.
//
// Domains are 1-based: a function on [N] is indexed 1..N, a graph on n nodes
// has nodes 1..n. Function values live in int64; algorithms only ever learn
// the truth value of "value <= value" (comparison model) or, for the
// adversary problems, read values directly (evaluation model).

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace qclaw {

using Index = std::uint64_t;
using Value = std::int64_t;

class FunctionInstance {
 public:
  // Throws DomainError when empty, or when `ordered` is set but the values
  // are not monotone non-decreasing.
  explicit FunctionInstance(std::vector<Value> values, bool ordered = false);

  Index size() const { return values_.size(); }
  bool ordered() const { return ordered_; }

  // White-box access for generators, verification and simulation. Never
  // called from algorithm control flow.
  Value value_at(Index i) const { return values_[i - 1]; }
  std::span<const Value> values() const { return values_; }

  bool operator==(const FunctionInstance&) const = default;

 private:
  std::vector<Value> values_;
  bool ordered_;
};

class GraphInstance {
 public:
  // Undirected simple graph on nodes 1..n; throws on self-loops or
  // out-of-range endpoints. Duplicate edges are merged.
  GraphInstance(Index n, std::span<const std::pair<Index, Index>> edges);
  // From a bit per edge slot, slots ordered as slot_index() enumerates them.
  static GraphInstance from_slots(Index n, std::span<const std::uint8_t> slots);

  Index node_count() const { return n_; }
  std::uint64_t edge_count() const { return m_; }
  std::uint64_t slot_count() const { return adjacency_.size(); }

  // Edge slot of {u,v}, u != v: pairs (1,2),(1,3),...,(1,n),(2,3),... map to 0,1,...
  std::uint64_t slot_index(Index u, Index v) const;
  std::pair<Index, Index> slot_endpoints(std::uint64_t slot) const;

  bool has_edge(Index u, Index v) const { return adjacency_[slot_index(u, v)] != 0; }
  std::vector<std::pair<Index, Index>> edges() const;

  bool operator==(const GraphInstance&) const = default;

 private:
  Index n_;
  std::uint64_t m_ = 0;
  std::vector<std::uint8_t> adjacency_;
};

struct QueryLedger {
  std::uint64_t comparisons = 0;
  std::uint64_t evaluations = 0;
  std::uint64_t edge_queries = 0;

  std::uint64_t total() const { return comparisons + evaluations + edge_queries; }
};

struct ClawPair {
  Index x;
  Index y;
  bool operator==(const ClawPair&) const = default;
};

enum class Side { F, G };

enum class AccessKind { Comparison, Evaluation, EdgeQuery };

// Thread-local observer invoked on every oracle access, before the ledger is
// touched. Lets tests tally calls independently of the ledger.
using AccessTap = std::function<void(AccessKind)>;
void set_access_tap(AccessTap tap);

// [value_a(i) <= value_b(j)]; domain error if an index is out of range.
bool compare(const FunctionInstance& f, const FunctionInstance& g, Side side_a, Index i, Side side_b, Index j,
             QueryLedger& ledger);

Value evaluate(const FunctionInstance& fn, Index i, QueryLedger& ledger);

bool edge_query(const GraphInstance& g, Index u, Index v, QueryLedger& ledger);

// Binds a pair of functions to one run's ledger.
class ComparisonOracle {
 public:
  ComparisonOracle(const FunctionInstance& f, const FunctionInstance& g, QueryLedger& ledger)
      : f_(&f), g_(&g), ledger_(&ledger) {}

  bool leq(Side a, Index i, Side b, Index j) const { return compare(*f_, *g_, a, i, b, j, *ledger_); }

  const FunctionInstance& f() const { return *f_; }
  const FunctionInstance& g() const { return *g_; }
  const FunctionInstance& side(Side s) const { return s == Side::F ? *f_ : *g_; }
  Index size(Side s) const { return side(s).size(); }
  QueryLedger& ledger() const { return *ledger_; }

 private:
  const FunctionInstance* f_;
  const FunctionInstance* g_;
  QueryLedger* ledger_;
};

// ---- generators (deterministic in seed) ----

struct FunctionPair {
  FunctionInstance f;
  FunctionInstance g;
};

FunctionPair gen_planted_claw(Index n, Index m, std::uint64_t seed);
FunctionInstance gen_two_to_one(Index n, std::uint64_t seed);
FunctionInstance gen_k_repeated(Index n, Index k, std::uint64_t seed);
// Strictly increasing tables; a claw exists iff plant_claw (then exactly one).
FunctionPair gen_ordered_pair(Index n, Index m, bool plant_claw, std::uint64_t seed);
// Distinct values except for one planted collision (a gen_k_repeated with k=2).
FunctionInstance gen_planted_collision(Index n, std::uint64_t seed);

// ---- OR reductions ----

FunctionPair or_to_claw(std::span<const std::uint8_t> bits);
FunctionInstance or_to_ed(std::span<const std::uint8_t> bits);
FunctionPair or_to_ordered_claw(std::span<const std::uint8_t> bits);
// bits has one entry per edge slot of an n-node graph; result has n+1 nodes.
GraphInstance or_to_triangle(Index n, std::span<const std::uint8_t> bits);

// ---- white-box scans (reference oracles, no metering) ----

std::vector<ClawPair> all_claws(const FunctionInstance& f, const FunctionInstance& g);
// Pairs x < y with f(x) = f(y).
std::vector<ClawPair> all_collisions(const FunctionInstance& f);
std::uint64_t count_triangles(const GraphInstance& g);
bool is_claw(const FunctionInstance& f, const FunctionInstance& g, ClawPair p);

}  // namespace qclaw
