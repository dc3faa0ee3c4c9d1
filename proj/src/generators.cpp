#include <algorithm>
#include <string>

#include "qclaw/errors.hpp"
#include "qclaw/oracle.hpp"
#include "qclaw/rng.hpp"

namespace qclaw {

namespace {

constexpr Value kValueSpan = Value{1} << 40;

// `count` distinct values in increasing order.
std::vector<Value> distinct_values(Rng& rng, std::size_t count) {
  std::vector<Value> out;
  while (out.size() < count) {
    while (out.size() < count) out.push_back(1 + static_cast<Value>(uniform_below(rng, kValueSpan)));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return out;
}

void require_positive(Index n, const char* what) {
  if (n < 1) throw DomainError(std::string(what) + ": size must be >= 1");
}

}  // namespace

FunctionPair gen_planted_claw(Index n, Index m, std::uint64_t seed) {
  require_positive(n, "gen_planted_claw");
  require_positive(m, "gen_planted_claw");
  Rng rng = make_stream(seed, 0x11);
  std::vector<Value> pool = distinct_values(rng, n + m - 1);
  shuffle(std::span<Value>(pool), rng);
  std::vector<Value> fv(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n));
  std::vector<Value> gv(pool.begin() + static_cast<std::ptrdiff_t>(n), pool.end());
  Index x = uniform_below(rng, n);
  Index y = uniform_below(rng, m);
  gv.insert(gv.begin() + static_cast<std::ptrdiff_t>(y), fv[x]);
  return {FunctionInstance(std::move(fv)), FunctionInstance(std::move(gv))};
}

FunctionInstance gen_two_to_one(Index n, std::uint64_t seed) {
  if (n < 2 || n % 2 != 0) throw DomainError("gen_two_to_one: N must be even and positive");
  Rng rng = make_stream(seed, 0x22);
  std::vector<Value> base = distinct_values(rng, n / 2);
  std::vector<Value> values;
  values.reserve(n);
  for (Value v : base) {
    values.push_back(v);
    values.push_back(v);
  }
  shuffle(std::span<Value>(values), rng);
  return FunctionInstance(std::move(values));
}

FunctionInstance gen_k_repeated(Index n, Index k, std::uint64_t seed) {
  if (k < 2 || k > n) throw DomainError("gen_k_repeated: need 2 <= k <= N");
  Rng rng = make_stream(seed, 0x33, k);
  std::vector<Value> base = distinct_values(rng, n - k + 1);
  shuffle(std::span<Value>(base), rng);
  std::vector<Value> values(base.begin() + 1, base.end());
  values.insert(values.end(), k, base.front());
  shuffle(std::span<Value>(values), rng);
  return FunctionInstance(std::move(values));
}

FunctionInstance gen_planted_collision(Index n, std::uint64_t seed) { return gen_k_repeated(n, 2, seed); }

FunctionPair gen_ordered_pair(Index n, Index m, bool plant_claw, std::uint64_t seed) {
  require_positive(n, "gen_ordered_pair");
  require_positive(m, "gen_ordered_pair");
  Rng rng = make_stream(seed, 0x44, plant_claw ? 1 : 0);
  std::vector<Value> pool = distinct_values(rng, n + m - (plant_claw ? 1 : 0));
  shuffle(std::span<Value>(pool), rng);
  std::vector<Value> fv(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(n));
  std::vector<Value> gv(pool.begin() + static_cast<std::ptrdiff_t>(n), pool.end());
  if (plant_claw) gv.push_back(fv[uniform_below(rng, n)]);
  std::sort(fv.begin(), fv.end());
  std::sort(gv.begin(), gv.end());
  return {FunctionInstance(std::move(fv), true), FunctionInstance(std::move(gv), true)};
}

FunctionPair or_to_claw(std::span<const std::uint8_t> bits) {
  if (bits.empty()) throw DomainError("or_to_claw: M must be >= 1");
  std::vector<Value> gv(bits.begin(), bits.end());
  for (Value& v : gv) v = v ? 1 : 0;
  return {FunctionInstance({1}), FunctionInstance(std::move(gv))};
}

FunctionInstance or_to_ed(std::span<const std::uint8_t> bits) {
  if (bits.empty()) throw DomainError("or_to_ed: N must be >= 1");
  std::vector<Value> values;
  values.reserve(bits.size() + 1);
  for (std::size_t i = 0; i < bits.size(); ++i) values.push_back(bits[i] ? 0 : static_cast<Value>(i + 1));
  values.push_back(0);
  return FunctionInstance(std::move(values));
}

FunctionPair or_to_ordered_claw(std::span<const std::uint8_t> bits) {
  if (bits.empty()) throw DomainError("or_to_ordered_claw: N must be >= 1");
  std::vector<Value> fv, gv;
  for (std::size_t i = 1; i <= bits.size(); ++i) {
    fv.push_back(2 * static_cast<Value>(i) + 1);
    gv.push_back(2 * static_cast<Value>(i) + (bits[i - 1] ? 1 : 0));
  }
  return {FunctionInstance(std::move(fv), true), FunctionInstance(std::move(gv), true)};
}

GraphInstance or_to_triangle(Index n, std::span<const std::uint8_t> bits) {
  if (n < 2) throw DomainError("or_to_triangle: need n >= 2");
  if (bits.size() != n * (n - 1) / 2) throw DomainError("or_to_triangle: bit vector must cover C(n,2) slots");
  GraphInstance base = GraphInstance::from_slots(n, bits);
  std::vector<std::pair<Index, Index>> edges = base.edges();
  for (Index u = 1; u <= n; ++u) edges.emplace_back(u, n + 1);
  return GraphInstance(n + 1, edges);
}

}  // namespace qclaw
