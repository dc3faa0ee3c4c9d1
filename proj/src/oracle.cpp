#include "qclaw/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "qclaw/errors.hpp"

namespace qclaw {

namespace {
thread_local AccessTap g_tap;

void tap(AccessKind kind) {
  if (g_tap) g_tap(kind);
}

void check_index(const FunctionInstance& fn, Index i, const char* what) {
  if (i < 1 || i > fn.size())
    throw DomainError(std::string(what) + ": index " + std::to_string(i) + " outside [1," + std::to_string(fn.size()) + "]");
}
}  // namespace

FunctionInstance::FunctionInstance(std::vector<Value> values, bool ordered)
    : values_(std::move(values)), ordered_(ordered) {
  if (values_.empty()) throw DomainError("FunctionInstance: empty domain");
  if (ordered_ && !std::is_sorted(values_.begin(), values_.end()))
    throw DomainError("FunctionInstance: flagged ordered but values decrease");
}

GraphInstance::GraphInstance(Index n, std::span<const std::pair<Index, Index>> edges) : n_(n) {
  if (n < 1) throw DomainError("GraphInstance: need at least one node");
  adjacency_.assign(n * (n - 1) / 2, 0);
  for (auto [u, v] : edges) {
    std::uint64_t s = slot_index(u, v);
    if (!adjacency_[s]) {
      adjacency_[s] = 1;
      ++m_;
    }
  }
}

GraphInstance GraphInstance::from_slots(Index n, std::span<const std::uint8_t> slots) {
  if (slots.size() != n * (n - 1) / 2) throw DomainError("GraphInstance::from_slots: wrong slot count");
  GraphInstance g(n, std::span<const std::pair<Index, Index>>{});
  for (std::size_t s = 0; s < slots.size(); ++s) {
    g.adjacency_[s] = slots[s] ? 1 : 0;
    g.m_ += g.adjacency_[s];
  }
  return g;
}

std::uint64_t GraphInstance::slot_index(Index u, Index v) const {
  if (u == v) throw DomainError("edge slot: self-loop {" + std::to_string(u) + "," + std::to_string(v) + "}");
  if (u < 1 || v < 1 || u > n_ || v > n_) throw DomainError("edge slot: node out of range");
  if (u > v) std::swap(u, v);
  return (u - 1) * (2 * n_ - u) / 2 + (v - u - 1);
}

std::pair<Index, Index> GraphInstance::slot_endpoints(std::uint64_t slot) const {
  if (slot >= adjacency_.size()) throw DomainError("edge slot out of range");
  // Row u holds n-u slots; walk from a floating-point estimate.
  Index u = 1;
  std::uint64_t start = 0;
  const double nn = static_cast<double>(n_);
  double est = std::floor(((2 * nn - 1) - std::sqrt((2 * nn - 1) * (2 * nn - 1) - 8.0 * static_cast<double>(slot))) / 2.0);
  if (est > 0) {
    u = static_cast<Index>(est) + 1;
    if (u > n_ - 1) u = n_ - 1;
    start = (u - 1) * (2 * n_ - u) / 2;
  }
  while (start > slot) {
    --u;
    start = (u - 1) * (2 * n_ - u) / 2;
  }
  while (start + (n_ - u) <= slot) {
    start += n_ - u;
    ++u;
  }
  return {u, u + 1 + (slot - start)};
}

std::vector<std::pair<Index, Index>> GraphInstance::edges() const {
  std::vector<std::pair<Index, Index>> out;
  out.reserve(m_);
  std::uint64_t s = 0;
  for (Index u = 1; u <= n_; ++u)
    for (Index v = u + 1; v <= n_; ++v, ++s)
      if (adjacency_[s]) out.emplace_back(u, v);
  return out;
}

void set_access_tap(AccessTap t) { g_tap = std::move(t); }

bool compare(const FunctionInstance& f, const FunctionInstance& g, Side side_a, Index i, Side side_b, Index j,
             QueryLedger& ledger) {
  const FunctionInstance& a = side_a == Side::F ? f : g;
  const FunctionInstance& b = side_b == Side::F ? f : g;
  check_index(a, i, "compare");
  check_index(b, j, "compare");
  tap(AccessKind::Comparison);
  ++ledger.comparisons;
  return a.value_at(i) <= b.value_at(j);
}

Value evaluate(const FunctionInstance& fn, Index i, QueryLedger& ledger) {
  check_index(fn, i, "evaluate");
  tap(AccessKind::Evaluation);
  ++ledger.evaluations;
  return fn.value_at(i);
}

bool edge_query(const GraphInstance& g, Index u, Index v, QueryLedger& ledger) {
  bool present = g.has_edge(u, v);  // validates u, v
  tap(AccessKind::EdgeQuery);
  ++ledger.edge_queries;
  return present;
}

std::vector<ClawPair> all_claws(const FunctionInstance& f, const FunctionInstance& g) {
  std::multimap<Value, Index> by_value;
  for (Index x = 1; x <= f.size(); ++x) by_value.emplace(f.value_at(x), x);
  std::vector<ClawPair> out;
  for (Index y = 1; y <= g.size(); ++y) {
    auto [lo, hi] = by_value.equal_range(g.value_at(y));
    for (auto it = lo; it != hi; ++it) out.push_back({it->second, y});
  }
  std::sort(out.begin(), out.end(), [](ClawPair a, ClawPair b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
  return out;
}

std::vector<ClawPair> all_collisions(const FunctionInstance& f) {
  std::vector<ClawPair> out;
  for (const ClawPair& p : all_claws(f, f))
    if (p.x < p.y) out.push_back(p);
  return out;
}

std::uint64_t count_triangles(const GraphInstance& g) {
  const Index n = g.node_count();
  std::vector<std::vector<std::uint8_t>> adj(n + 1, std::vector<std::uint8_t>(n + 1, 0));
  for (auto [u, v] : g.edges()) adj[u][v] = adj[v][u] = 1;
  std::uint64_t count = 0;
  for (Index a = 1; a <= n; ++a)
    for (Index b = a + 1; b <= n; ++b) {
      if (!adj[a][b]) continue;
      for (Index c = b + 1; c <= n; ++c)
        if (adj[a][c] && adj[b][c]) ++count;
    }
  return count;
}

bool is_claw(const FunctionInstance& f, const FunctionInstance& g, ClawPair p) {
  return p.x >= 1 && p.x <= f.size() && p.y >= 1 && p.y <= g.size() && f.value_at(p.x) == g.value_at(p.y);
}

}  // namespace qclaw
