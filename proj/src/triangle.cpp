#include "qclaw/triangle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qclaw/errors.hpp"

namespace qclaw {

namespace {

std::uint64_t c3(std::uint64_t x) { return x < 3 ? 0 : x * (x - 1) * (x - 2) / 6; }
std::uint64_t c2(std::uint64_t x) { return x < 2 ? 0 : x * (x - 1) / 2; }

std::uint64_t node_bound(Index n) {
  return static_cast<std::uint64_t>(std::ceil(std::numbers::pi / 4.0 * std::sqrt(static_cast<double>(n - 2))));
}

std::vector<std::uint64_t> completing(const GraphInstance& g, Index a, Index b) {
  std::vector<std::uint64_t> out;  // positions among V \ {a,b}
  std::uint64_t pos = 0;
  for (Index c = 1; c <= g.node_count(); ++c) {
    if (c == a || c == b) continue;
    if (g.has_edge(a, c) && g.has_edge(b, c)) out.push_back(pos);
    ++pos;
  }
  return out;
}

// position among V \ {a,b} back to a node, a < b
Index skip_two(std::uint64_t pos, Index a, Index b) {
  Index c = pos + 1;
  if (c >= a) ++c;
  if (c >= b) ++c;
  return c;
}

Triangle sorted(Index a, Index b, Index c) {
  Triangle t{a, b, c};
  std::sort(t.begin(), t.end());
  return t;
}

TriangleResult base(const char* name, Mode mode, const ScheduleConfig& s) {
  TriangleResult r;
  r.algorithm = name;
  r.mode = mode;
  r.schedule = s;
  return r;
}

void verify_triangle(const GraphInstance& g, const Triangle& t, QueryLedger& led) {
  bool ok = edge_query(g, t[0], t[1], led) & edge_query(g, t[0], t[2], led) & edge_query(g, t[1], t[2], led);
  if (!ok) throw std::logic_error("triangle finder: witness failed verification");
}

}  // namespace

nlohmann::json to_json(const TriangleResult& r) {
  nlohmann::json j;
  j["algorithm"] = r.algorithm;
  j["mode"] = mode_name(r.mode);
  j["verdict"] = r.nodes ? "TriangleFound" : "NotFound";
  if (r.nodes) j["nodes"] = *r.nodes;
  else j["nodes"] = nullptr;
  j["edge_queries"] = r.edge_queries;
  j["stage_breakdown"] = {{"edge_search", r.stages.edge_search},
                          {"node_search", r.stages.node_search},
                          {"outer_rounds", r.stages.outer_rounds}};
  j["success_probability"] = r.success_probability;
  j["params"] = r.params;
  j["schedule"] = {{"lambda", r.schedule.lambda},
                   {"cutoff_multiplier", r.schedule.cutoff_multiplier},
                   {"rng", r.schedule.rng_algorithm}};
  if (r.seed) j["seed"] = *r.seed;
  return j;
}

double triangle_round_success(const GraphInstance& g) {
  const Index n = g.node_count();
  if (n < 3 || g.edge_count() == 0) return 0.0;
  const std::uint64_t j2 = node_bound(n);
  double acc = 0.0;
  for (auto [a, b] : g.edges()) {
    auto t = completing(g, a, b).size();
    acc += mean_amplified_probability(double(t) / double(n - 2), j2);
  }
  return acc / double(g.edge_count());
}

double triangle_edge_fraction(const GraphInstance& g) {
  if (g.edge_count() == 0) return 0.0;
  std::uint64_t k = 0;
  for (auto [a, b] : g.edges()) k += !completing(g, a, b).empty();
  return double(k) / double(g.edge_count());
}

std::uint64_t triangle_cutoff(std::uint64_t m, const ScheduleConfig& schedule) {
  return decision_cutoff(std::max<std::uint64_t>(m, 1), schedule);
}

TriangleResult find_triangle(const GraphInstance& g, Mode mode, Rng& rng, std::optional<std::uint64_t> cutoff_rounds,
                             const ScheduleConfig& schedule) {
  const Index n = g.node_count();
  if (n < 3) throw DomainError("find_triangle: need n >= 3");
  TriangleResult r = base("find_triangle", mode, schedule);
  const std::uint64_t m = g.edge_count(), slots = g.slot_count();
  if (m == 0) return r;
  const std::uint64_t cutoff = cutoff_rounds.value_or(triangle_cutoff(m, schedule));
  const std::uint64_t j2 = node_bound(n);
  const double a = triangle_round_success(g);
  const double stage1 = expected_applications(double(m) / double(slots), std::sqrt(double(slots)), schedule);
  r.params["n"] = double(n);
  r.params["m"] = double(m);
  r.params["a"] = a;
  r.params["edge_fraction"] = triangle_edge_fraction(g);
  r.params["node_bound"] = double(j2);
  r.params["cutoff_rounds"] = double(cutoff);
  r.params["stage1_expected"] = stage1;

  if (mode == Mode::Analytic) {
    SearchStats st = search_stats(a, cutoff, std::nullopt, schedule);
    r.stages.outer_rounds = st.expected_applications;
    r.stages.edge_search = st.expected_applications * stage1;
    r.stages.node_search = st.expected_applications * 2.0 * double(j2);
    r.success_probability = st.success_probability;
    r.edge_queries = r.stages.edge_search + r.stages.node_search + 3.0 * st.success_probability;
    r.params["contains_triangle"] = a > 0.0 ? 1.0 : 0.0;
    return r;
  }

  std::vector<std::uint64_t> edge_slots;
  for (auto [u, v] : g.edges()) edge_slots.push_back(g.slot_index(u, v));
  MarkedSet edges(slots, edge_slots);
  QueryLedger& led = r.ledger;
  std::uint64_t q_edge = 0, q_node = 0;

  auto round = [&](Rng& rr) -> std::optional<Triangle> {
    std::uint64_t before = led.edge_queries;
    SearchTarget s1{edges, [&](std::uint64_t s) {
                      auto [u, v] = g.slot_endpoints(s);
                      return edge_query(g, u, v, led);
                    }};
    QSearchOptions opt{std::nullopt, std::sqrt(double(slots)), schedule};
    auto [a1, b1] = g.slot_endpoints(*qsearch(s1, rr, opt).found);
    std::uint64_t mid = led.edge_queries;
    q_edge += mid - before;
    auto pred = [&](std::uint64_t pos) {
      Index c = skip_two(pos, a1, b1);
      return edge_query(g, a1, c, led) & edge_query(g, b1, c, led);
    };
    MarkedSet nodes(n - 2, completing(g, a1, b1));
    std::uint64_t j = uniform_below(rr, j2);
    for (std::uint64_t i = 0; i + 1 < j2; ++i) (void)pred(uniform_below(rr, n - 2));
    std::uint64_t pos = nodes.measure(j, rr);
    bool hit = pred(pos);
    q_node += led.edge_queries - mid;
    if (!hit) return std::nullopt;
    return sorted(a1, b1, skip_two(pos, a1, b1));
  };
  auto all_edges = g.edges();
  auto sample_success = [&](Rng& rr) -> Triangle {
    for (;;) {
      auto [a1, b1] = all_edges[uniform_below(rr, all_edges.size())];
      MarkedSet nodes(n - 2, completing(g, a1, b1));
      if (nodes.count() == 0) continue;
      std::uint64_t pos = nodes.measure(uniform_below(rr, j2), rr);
      if (nodes.contains(pos)) return sorted(a1, b1, skip_two(pos, a1, b1));
    }
  };
  MeasuredProcedure<Triangle> proc{a, round, sample_success};
  auto out = amplify_procedure(proc, rng, cutoff, schedule);
  r.stages.outer_rounds = double(out.applications);
  r.stages.edge_search = double(q_edge);
  r.stages.node_search = double(q_node);
  if (out.witness) {
    verify_triangle(g, *out.witness, led);
    r.nodes = out.witness;
    r.success_probability = 1.0;
  }
  r.edge_queries = double(led.edge_queries);
  return r;
}

std::uint64_t triple_rank(Index a, Index b, Index c) {
  if (!(1 <= a && a < b && b < c)) throw DomainError("triple_rank: need 1 <= a < b < c");
  return c3(c - 1) + c2(b - 1) + (a - 1);
}

Triangle triple_unrank(std::uint64_t rank) {
  auto largest = [](std::uint64_t r, auto&& f) {
    // largest x with f(x) <= r
    std::uint64_t lo = 0, hi = 1;
    while (f(hi) <= r) hi *= 2;
    while (hi - lo > 1) {
      std::uint64_t mid = (lo + hi) / 2;
      if (f(mid) <= r) lo = mid;
      else hi = mid;
    }
    return lo;
  };
  std::uint64_t c = largest(rank, c3);
  rank -= c3(c);
  std::uint64_t b = largest(rank, c2);
  rank -= c2(b);
  return {rank + 1, b + 1, c + 1};
}

TriangleResult grover_all_triples(const GraphInstance& g, Mode mode, Rng& rng, std::optional<std::uint64_t> cutoff,
                                  const ScheduleConfig& schedule) {
  const Index n = g.node_count();
  if (n < 3) throw DomainError("grover_all_triples: need n >= 3");
  TriangleResult r = base("grover_all_triples", mode, schedule);
  const std::uint64_t space = c3(n);
  const std::uint64_t cut = cutoff.value_or(decision_cutoff(space, schedule));
  r.params["n"] = double(n);
  r.params["m"] = double(g.edge_count());
  r.params["search_space"] = double(space);
  r.params["cutoff"] = double(cut);
  std::uint64_t t = count_triangles(g);
  r.params["triangles"] = double(t);
  if (mode == Mode::Analytic) {
    SearchStats st = search_stats(double(t) / double(space), cut, std::sqrt(double(space)), schedule);
    r.stages.outer_rounds = st.expected_applications;
    r.stages.node_search = 3.0 * st.expected_applications;
    r.edge_queries = r.stages.node_search;
    r.success_probability = st.success_probability;
    return r;
  }
  std::vector<std::uint64_t> marked;
  marked.reserve(t);
  for (Index c = 3; c <= n; ++c)
    for (Index b = 2; b < c; ++b) {
      if (!g.has_edge(b, c)) continue;
      for (Index a = 1; a < b; ++a)
        if (g.has_edge(a, b) && g.has_edge(a, c)) marked.push_back(triple_rank(a, b, c));
    }
  SearchTarget target{MarkedSet(space, std::move(marked)), [&](std::uint64_t s) {
                        Triangle tri = triple_unrank(s);
                        return edge_query(g, tri[0], tri[1], r.ledger) & edge_query(g, tri[0], tri[2], r.ledger) &
                               edge_query(g, tri[1], tri[2], r.ledger);
                      }};
  QSearchOptions opt{cut, std::sqrt(double(space)), schedule};
  auto out = qsearch(target, rng, opt);
  r.stages.outer_rounds = double(out.oracle_applications);
  r.stages.node_search = double(r.ledger.edge_queries);
  r.edge_queries = double(r.ledger.edge_queries);
  if (out.found) {
    r.nodes = triple_unrank(*out.found);
    if (!(g.has_edge((*r.nodes)[0], (*r.nodes)[1]) && g.has_edge((*r.nodes)[0], (*r.nodes)[2]) &&
          g.has_edge((*r.nodes)[1], (*r.nodes)[2])))
      throw std::logic_error("grover_all_triples: witness failed verification");
    r.success_probability = 1.0;
  }
  return r;
}

TriangleResult classical_triangle(const GraphInstance& g) {
  TriangleResult r = base("classical_triangle", Mode::Sampled, {});
  const Index n = g.node_count();
  std::vector<std::uint8_t> adj(g.slot_count());
  for (Index u = 1; u <= n; ++u)
    for (Index v = u + 1; v <= n; ++v) adj[g.slot_index(u, v)] = edge_query(g, u, v, r.ledger);
  auto e = [&](Index u, Index v) { return adj[g.slot_index(u, v)] != 0; };
  for (Index a = 1; a <= n && !r.nodes; ++a)
    for (Index b = a + 1; b <= n && !r.nodes; ++b) {
      if (!e(a, b)) continue;
      for (Index c = b + 1; c <= n; ++c)
        if (e(a, c) && e(b, c)) {
          r.nodes = Triangle{a, b, c};
          break;
        }
    }
  r.edge_queries = double(r.ledger.edge_queries);
  r.stages.edge_search = r.edge_queries;
  r.success_probability = r.nodes ? 1.0 : 0.0;
  return r;
}

GraphInstance gen_planted_triangle(Index n, std::uint64_t target_m, std::uint64_t seed) {
  if (n < 3) throw DomainError("gen_planted_triangle: need n >= 3");
  if (target_m < std::max<std::uint64_t>(3, n - 1) || target_m > c2(n))
    throw DomainError("gen_planted_triangle: target edge count out of range");
  Rng rng = make_stream(seed, 0x55, n);
  std::vector<Index> perm(n);
  for (Index i = 0; i < n; ++i) perm[i] = i + 1;
  shuffle(std::span<Index>(perm), rng);
  const Index left = (n + 1) / 2;
  // p, q in L; r in R; (p,q) is the only edge inside a side
  Index p = perm[0], q = perm[1], t = perm[left];
  std::uint64_t cross = left * (n - left);
  std::uint64_t most = cross + 1 - (n - left - 1);
  if (target_m > most) throw DomainError("gen_planted_triangle: too many edges for a single triangle");
  std::vector<std::pair<Index, Index>> edges{{p, q}, {p, t}, {q, t}};
  std::vector<std::pair<Index, Index>> cand;
  for (Index i = 0; i < left; ++i)
    for (Index j = left; j < n; ++j) {
      Index u = perm[i], v = perm[j];
      if (v == t && (u == p || u == q)) continue;
      cand.emplace_back(u, v);
    }
  shuffle(std::span<std::pair<Index, Index>>(cand), rng);
  std::vector<std::uint8_t> touched(n + 1, 0);  // R-node already joined to p or q
  for (auto [u, v] : cand) {
    if (edges.size() >= target_m) break;
    if (u == p || u == q) {
      if (touched[v]) continue;
      touched[v] = 1;
    }
    edges.emplace_back(u, v);
  }
  if (edges.size() + 2 < target_m) throw DomainError("gen_planted_triangle: could not reach the target edge count");
  return GraphInstance(n, edges);
}

}  // namespace qclaw
