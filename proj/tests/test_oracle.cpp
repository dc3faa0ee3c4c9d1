#include <gtest/gtest.h>

#include <map>

#include "qclaw/errors.hpp"
#include "qclaw/instance_io.hpp"
#include "qclaw/oracle.hpp"
#include "qclaw/rng.hpp"

using namespace qclaw;

namespace {

FunctionInstance fn(std::vector<Value> v, bool ordered = false) { return FunctionInstance(std::move(v), ordered); }

// brute-force references, deliberately naive
std::size_t naive_claws(const FunctionInstance& f, const FunctionInstance& g) {
  std::size_t c = 0;
  for (Index x = 1; x <= f.size(); ++x)
    for (Index y = 1; y <= g.size(); ++y) c += f.value_at(x) == g.value_at(y);
  return c;
}

std::size_t naive_collisions(const FunctionInstance& f) {
  std::size_t c = 0;
  for (Index x = 1; x <= f.size(); ++x)
    for (Index y = x + 1; y <= f.size(); ++y) c += f.value_at(x) == f.value_at(y);
  return c;
}

std::size_t naive_triangles(const GraphInstance& g) {
  std::size_t c = 0;
  Index n = g.node_count();
  for (Index a = 1; a <= n; ++a)
    for (Index b = a + 1; b <= n; ++b)
      for (Index d = b + 1; d <= n; ++d) c += g.has_edge(a, b) && g.has_edge(a, d) && g.has_edge(b, d);
  return c;
}

std::vector<std::uint8_t> random_bits(Rng& rng, std::size_t n, double density) {
  std::vector<std::uint8_t> b(n);
  for (auto& x : b) x = bernoulli(rng, density);
  return b;
}

bool any(const std::vector<std::uint8_t>& b) {
  for (auto x : b)
    if (x) return true;
  return false;
}

}  // namespace

TEST(Compare, ExamplesAndMetering) {
  auto f = fn({3, 1, 2});
  auto g = fn({2, 2});
  QueryLedger led;
  EXPECT_FALSE(compare(f, g, Side::F, 1, Side::F, 2, led));
  EXPECT_EQ(led.comparisons, 1u);
  EXPECT_TRUE(compare(f, g, Side::F, 2, Side::F, 3, led));
  EXPECT_FALSE(compare(f, g, Side::F, 1, Side::G, 1, led));
  EXPECT_EQ(led.comparisons, 3u);
  EXPECT_THROW(compare(f, g, Side::G, 3, Side::F, 1, led), DomainError);
  EXPECT_THROW(compare(f, g, Side::F, 0, Side::F, 1, led), DomainError);
}

TEST(Evaluate, Examples) {
  QueryLedger led;
  auto f = fn({4, 4, 2});
  EXPECT_EQ(evaluate(f, 2, led), 4);
  EXPECT_EQ(evaluate(f, 3, led), 2);
  EXPECT_EQ(led.evaluations, 2u);
  EXPECT_THROW(evaluate(fn({7}), 0, led), DomainError);
}

TEST(EdgeQuery, Examples) {
  std::vector<std::pair<Index, Index>> tri{{1, 2}, {1, 3}, {2, 3}};
  GraphInstance g(3, tri);
  QueryLedger led;
  EXPECT_TRUE(edge_query(g, 1, 3, led));
  EXPECT_TRUE(edge_query(g, 3, 1, led));
  EXPECT_EQ(led.edge_queries, 2u);
  GraphInstance e(2, std::span<const std::pair<Index, Index>>{});
  EXPECT_FALSE(edge_query(e, 1, 2, led));
  EXPECT_THROW(edge_query(g, 2, 2, led), DomainError);
  EXPECT_THROW(edge_query(g, 1, 4, led), DomainError);
}

TEST(Instances, Validation) {
  EXPECT_THROW(fn({}), DomainError);
  EXPECT_THROW(fn({2, 1}, true), DomainError);
  EXPECT_NO_THROW(fn({1, 1, 2}, true));
  std::vector<std::pair<Index, Index>> loop{{2, 2}};
  EXPECT_THROW(GraphInstance(3, loop), DomainError);
}

TEST(Graph, SlotRoundTrip) {
  for (Index n : {2u, 3u, 7u, 50u}) {
    GraphInstance g(n, std::span<const std::pair<Index, Index>>{});
    std::uint64_t s = 0;
    for (Index u = 1; u <= n; ++u)
      for (Index v = u + 1; v <= n; ++v, ++s) {
        EXPECT_EQ(g.slot_index(u, v), s);
        EXPECT_EQ(g.slot_index(v, u), s);
        EXPECT_EQ(g.slot_endpoints(s), std::make_pair(u, v));
      }
    EXPECT_EQ(g.slot_count(), s);
  }
}

TEST(AccessTap, TalliesEveryAccess) {
  std::map<AccessKind, std::uint64_t> seen;
  set_access_tap([&](AccessKind k) { ++seen[k]; });
  auto f = fn({3, 1, 2});
  QueryLedger led;
  for (int i = 0; i < 5; ++i) compare(f, f, Side::F, 1, Side::F, 2, led);
  evaluate(f, 1, led);
  std::vector<std::pair<Index, Index>> e{{1, 2}};
  GraphInstance g(2, e);
  edge_query(g, 1, 2, led);
  set_access_tap(nullptr);
  EXPECT_EQ(seen[AccessKind::Comparison], led.comparisons);
  EXPECT_EQ(seen[AccessKind::Evaluation], led.evaluations);
  EXPECT_EQ(seen[AccessKind::EdgeQuery], led.edge_queries);
  compare(f, f, Side::F, 1, Side::F, 2, led);
  EXPECT_EQ(seen[AccessKind::Comparison], 5u);
}

TEST(Generators, PlantedClaw) {
  auto p = gen_planted_claw(4, 4, 1);
  EXPECT_EQ(naive_claws(p.f, p.g), 1u);
  auto q = gen_planted_claw(1, 1, 0);
  EXPECT_EQ(q.f.value_at(1), q.g.value_at(1));
  auto r = gen_planted_claw(8, 64, 7);
  EXPECT_EQ(naive_claws(r.f, r.g), 1u);
  EXPECT_EQ(naive_collisions(r.f) + naive_collisions(r.g), 0u);
  EXPECT_EQ(all_claws(r.f, r.g).size(), 1u);
  EXPECT_TRUE(is_claw(r.f, r.g, all_claws(r.f, r.g)[0]));
}

TEST(Generators, TwoToOne) {
  auto two = gen_two_to_one(2, 9);
  EXPECT_EQ(two.value_at(1), two.value_at(2));
  for (Index n : {4u, 6u, 64u, 1000u}) {
    auto f = gen_two_to_one(n, 3 + n);
    std::map<Value, int> hist;
    for (Value v : f.values()) ++hist[v];
    EXPECT_EQ(hist.size(), n / 2);
    for (auto& [v, c] : hist) EXPECT_EQ(c, 2);
  }
  EXPECT_EQ(naive_collisions(gen_two_to_one(6, 5)), 3u);
  EXPECT_THROW(gen_two_to_one(5, 1), DomainError);
}

TEST(Generators, KRepeated) {
  auto c = gen_k_repeated(5, 5, 0);
  for (Index i = 2; i <= 5; ++i) EXPECT_EQ(c.value_at(i), c.value_at(1));
  EXPECT_EQ(naive_collisions(gen_k_repeated(6, 2, 1)), 1u);
  EXPECT_EQ(naive_collisions(gen_k_repeated(8, 4, 2)), 6u);
  EXPECT_THROW(gen_k_repeated(8, 1, 2), DomainError);
  EXPECT_THROW(gen_k_repeated(8, 9, 2), DomainError);
  EXPECT_EQ(naive_collisions(gen_planted_collision(100, 4)), 1u);
}

TEST(Generators, OrderedPair) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto p = gen_ordered_pair(4, 4, true, seed);
    EXPECT_TRUE(p.f.ordered() && p.g.ordered());
    EXPECT_EQ(naive_claws(p.f, p.g), 1u);
    auto q = gen_ordered_pair(4, 4, false, seed);
    EXPECT_EQ(naive_claws(q.f, q.g), 0u);
    auto u = gen_ordered_pair(9, 3, true, seed);
    EXPECT_EQ(naive_claws(u.f, u.g), 1u);
  }
  auto one = gen_ordered_pair(1, 1, true, 5);
  EXPECT_EQ(one.f.value_at(1), one.g.value_at(1));
}

TEST(Generators, DeterministicInSeed) {
  EXPECT_EQ(gen_planted_claw(50, 70, 11).f, gen_planted_claw(50, 70, 11).f);
  EXPECT_EQ(gen_planted_claw(50, 70, 11).g, gen_planted_claw(50, 70, 11).g);
  EXPECT_EQ(gen_two_to_one(64, 2), gen_two_to_one(64, 2));
  EXPECT_EQ(gen_k_repeated(64, 5, 2), gen_k_repeated(64, 5, 2));
  EXPECT_EQ(gen_ordered_pair(30, 30, true, 8).g, gen_ordered_pair(30, 30, true, 8).g);
  EXPECT_NE(gen_two_to_one(64, 2), gen_two_to_one(64, 3));
}

TEST(Reductions, Examples) {
  std::vector<std::uint8_t> x00{0, 0}, x010{0, 1, 0}, x111{1, 1, 1};
  EXPECT_EQ(naive_claws(or_to_claw(x00).f, or_to_claw(x00).g), 0u);
  auto c = or_to_claw(x010);
  EXPECT_EQ(all_claws(c.f, c.g), (std::vector<ClawPair>{{1, 2}}));
  EXPECT_EQ(all_claws(or_to_claw(x111).f, or_to_claw(x111).g).size(), 3u);

  EXPECT_EQ(or_to_ed(x010), fn({1, 0, 3, 0}));
  EXPECT_EQ(all_collisions(or_to_ed(x010)), (std::vector<ClawPair>{{2, 4}}));
  EXPECT_EQ(or_to_ed(x00), fn({1, 2, 0}));
  EXPECT_EQ(or_to_ed(std::vector<std::uint8_t>{1, 1}), fn({0, 0, 0}));

  std::vector<std::uint8_t> x01{0, 1}, x1{1};
  auto o = or_to_ordered_claw(x01);
  EXPECT_EQ(o.f, fn({3, 5}, true));
  EXPECT_EQ(o.g, fn({2, 5}, true));
  EXPECT_EQ(all_claws(o.f, o.g), (std::vector<ClawPair>{{2, 2}}));
  EXPECT_EQ(naive_claws(or_to_ordered_claw(x00).f, or_to_ordered_claw(x00).g), 0u);
  EXPECT_EQ(all_claws(or_to_ordered_claw(x1).f, or_to_ordered_claw(x1).g), (std::vector<ClawPair>{{1, 1}}));

  std::vector<std::uint8_t> none(3, 0), e12{1, 0, 0}, full(6, 1);
  auto star = or_to_triangle(3, none);
  EXPECT_EQ(star.node_count(), 4u);
  EXPECT_EQ(star.edge_count(), 3u);
  EXPECT_EQ(count_triangles(star), 0u);
  auto one = or_to_triangle(3, e12);
  EXPECT_EQ(count_triangles(one), 1u);
  EXPECT_TRUE(one.has_edge(1, 2) && one.has_edge(1, 4) && one.has_edge(2, 4));
  EXPECT_GT(count_triangles(or_to_triangle(4, full)), 1u);
}

TEST(Reductions, SoundnessRandom) {
  Rng rng = make_stream(2024, 9, 0);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t n = 1 + uniform_below(rng, 64);
    double dens = trial % 3 == 0 ? 0.0 : 0.5 / static_cast<double>(n);
    auto bits = random_bits(rng, n, dens);
    bool want = any(bits);
    auto c = or_to_claw(bits);
    EXPECT_EQ(naive_claws(c.f, c.g) > 0, want);
    EXPECT_EQ(naive_collisions(or_to_ed(bits)) > 0, want);
    auto o = or_to_ordered_claw(bits);
    EXPECT_EQ(naive_claws(o.f, o.g) > 0, want);
    Index nodes = 2 + uniform_below(rng, 9);
    auto tb = random_bits(rng, nodes * (nodes - 1) / 2, trial % 3 == 0 ? 0.0 : 0.1);
    auto t = or_to_triangle(nodes, tb);
    EXPECT_EQ(naive_triangles(t) > 0, any(tb));
    EXPECT_EQ(count_triangles(t), naive_triangles(t));
  }
}

TEST(InstanceIo, RoundTripAndValidation) {
  auto f = fn({1, 5, 9}, true);
  auto j = instance_to_json(Instance{f});
  EXPECT_EQ(j["kind"], "function");
  EXPECT_EQ(std::get<FunctionInstance>(instance_from_json(j)), f);
  std::vector<std::pair<Index, Index>> e{{1, 3}};
  GraphInstance g(4, e);
  EXPECT_EQ(std::get<GraphInstance>(instance_from_json(instance_to_json(Instance{g}))), g);
  EXPECT_THROW(instance_from_json(nlohmann::json::parse(R"({"kind":"function","n":2,"ordered":true,"values":[3,1]})")),
               DomainError);
  EXPECT_THROW(instance_from_json(nlohmann::json::parse(R"({"kind":"function","n":3,"ordered":false,"values":[3,1]})")),
               DomainError);
  EXPECT_THROW(instance_from_json(nlohmann::json::parse(R"({"kind":"graph","n":2,"edges":[[1,1]]})")), DomainError);
  EXPECT_THROW(instance_from_json(nlohmann::json::parse(R"({"kind":"tree"})")), DomainError);
}
