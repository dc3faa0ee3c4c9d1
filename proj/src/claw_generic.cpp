#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>
#include <unordered_set>

#include "qclaw/claw.hpp"
#include "qclaw/errors.hpp"
#include "qclaw/sorted_access.hpp"

namespace qclaw {

namespace {

double log_choose(double n, double k) {
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// P[X = x], X ~ Hypergeometric(population, successes, draws)
double hyper_pmf(std::uint64_t pop, std::uint64_t succ, std::uint64_t draws, std::uint64_t x) {
  if (x > succ || x > draws || draws - x > pop - succ) return 0.0;
  return std::exp(log_choose(double(succ), double(x)) + log_choose(double(pop - succ), double(draws - x)) -
                  log_choose(double(pop), double(draws)));
}

struct ValueClass {
  std::uint64_t size;  // preimages on the A side
  std::uint64_t other; // preimages on the B side (claw case)
};

// Number of marked B-candidates contributed by a class when r of its
// elements are in A.
std::uint64_t class_delta(const ValueClass& c, std::uint64_t r, bool collision) {
  if (r == 0) return 0;
  if (!collision) return c.other;
  return r == 1 ? c.size - 1 : c.size;
}

std::vector<ValueClass> value_classes(const FunctionInstance& f, const FunctionInstance& g, bool collision) {
  std::unordered_map<Value, ValueClass> m;
  for (Value v : f.values()) ++m[v].size;
  std::vector<ValueClass> out;
  if (collision) {
    for (auto& [v, c] : m)
      if (c.size >= 2) out.push_back({c.size, c.size});
  } else {
    for (Value v : g.values()) {
      auto it = m.find(v);
      if (it != m.end()) ++it->second.other;
    }
    for (auto& [v, c] : m)
      if (c.other > 0) out.push_back(c);
  }
  // deterministic order independent of hashing
  std::sort(out.begin(), out.end(), [](const ValueClass& a, const ValueClass& b) {
    return a.size != b.size ? a.size < b.size : a.other < b.other;
  });
  return out;
}

// Distribution of s_A, the number of marked B-candidates, for a uniform
// ell-subset A of [n].
std::vector<double> marked_distribution(const std::vector<ValueClass>& classes, std::uint64_t n, std::uint64_t ell,
                                        bool collision, std::uint64_t smax_cap) {
  std::vector<std::uint64_t> top;
  for (auto& c : classes) top.push_back(class_delta(c, std::min(c.size, std::uint64_t{2}), collision));
  std::sort(top.rbegin(), top.rend());
  std::uint64_t smax = 0;
  for (std::size_t i = 0; i < top.size() && i < ell; ++i) smax += top[i];
  smax = std::min(smax, smax_cap);
  const std::size_t w = smax + 1;
  // dist[u*w + s]: P(s | uniform u-subset of the classes processed so far)
  std::vector<double> dist((ell + 1) * w, 0.0), next;
  for (std::uint64_t u = 0; u <= ell; ++u) dist[u * w] = 1.0;
  std::uint64_t processed = 0;
  for (auto& c : classes) {
    next.assign(dist.size(), 0.0);
    std::uint64_t total = processed + c.size;
    for (std::uint64_t u2 = 0; u2 <= ell && u2 <= total; ++u2) {
      for (std::uint64_t r = 0; r <= c.size && r <= u2; ++r) {
        if (u2 - r > processed) continue;
        double h = hyper_pmf(total, c.size, u2, r);
        if (h == 0.0) continue;
        std::uint64_t d = class_delta(c, r, collision);
        const double* src = &dist[(u2 - r) * w];
        double* dst = &next[u2 * w];
        for (std::uint64_t s = 0; s + d <= smax; ++s)
          if (src[s] != 0.0) dst[s + d] += h * src[s];
      }
    }
    dist.swap(next);
    processed = total;
  }
  std::vector<double> ps(w, 0.0);
  for (std::uint64_t u = 0; u <= ell && u <= processed; ++u) {
    double h = hyper_pmf(n, processed, ell, u);
    if (h == 0.0) continue;
    for (std::uint64_t s = 0; s <= smax; ++s) ps[s] += h * dist[u * w + s];
  }
  return ps;
}

std::uint64_t ceil_cbrt(std::uint64_t n) {
  std::uint64_t c = static_cast<std::uint64_t>(std::cbrt(static_cast<double>(n)));
  while (c * c * c < n) ++c;
  while (c > 1 && (c - 1) * (c - 1) * (c - 1) >= n) --c;
  return c;
}

// ---- one concrete round ----

struct RoundRunner {
  const FunctionInstance& f;
  const FunctionInstance& g;
  ComparisonOracle& oracle;
  RoundModel model;
  bool collision;

  struct Draw {
    std::vector<Index> a, b;
    std::vector<std::uint64_t> marked;  // positions in b
  };

  Draw draw(Rng& rng) const {
    Draw d;
    for (auto i : sample_without_replacement(rng, f.size(), model.ell)) d.a.push_back(i + 1);
    for (auto i : sample_without_replacement(rng, g.size(), model.b_size)) d.b.push_back(i + 1);
    std::unordered_set<Value> av;
    std::unordered_map<Value, int> counts;
    for (Index x : d.a) ++counts[f.value_at(x)];
    for (std::uint64_t p = 0; p < d.b.size(); ++p) {
      Index y = d.b[p];
      auto it = counts.find(g.value_at(y));
      if (it == counts.end()) continue;
      bool self = collision && std::find(d.a.begin(), d.a.end(), y) != d.a.end();
      if (it->second > (self ? 1 : 0)) d.marked.push_back(p);
    }
    return d;
  }

  // First element of A (input order) matching y, the rule the stable sort
  // plus leftmost search realises.
  ClawPair partner(const Draw& d, Index y) const {
    for (Index x : d.a)
      if (f.value_at(x) == g.value_at(y) && !(collision && x == y)) return {x, y};
    throw std::logic_error("round: measured item has no partner");
  }

  std::optional<ClawPair> run(Rng& rng) const {
    Draw d = draw(rng);
    SortedSide sa(oracle, Side::F, d.a);
    Side other = collision ? Side::F : Side::G;
    auto pred = [&](Index y) { return collision ? sa.find_partner(y) : sa.find_equal(other, y); };
    std::uint64_t j = uniform_below(rng, model.inner);
    for (std::uint64_t i = 0; i + 1 < model.inner; ++i) (void)pred(d.b[uniform_below(rng, d.b.size())]);
    MarkedSet ms(d.b.size(), d.marked);
    Index y = d.b[ms.measure(j, rng)];
    auto x = pred(y);
    if (!x) return std::nullopt;
    return ClawPair{*x, y};
  }

  ClawPair sample_success(Rng& rng) const {
    for (;;) {
      Draw d = draw(rng);
      if (d.marked.empty()) continue;
      std::uint64_t j = uniform_below(rng, model.inner);
      MarkedSet ms(d.b.size(), d.marked);
      std::uint64_t p = ms.measure(j, rng);
      if (ms.contains(p)) return partner(d, d.b[p]);
    }
  }
};

ClawPair normalise(ClawPair p, bool collision, bool swapped) {
  if (swapped) std::swap(p.x, p.y);
  if (collision && p.x > p.y) std::swap(p.x, p.y);
  return p;
}

bool verify(const FunctionInstance& f, const FunctionInstance& g, ClawPair p, bool collision) {
  if (collision) return p.x != p.y && p.x >= 1 && p.y <= f.size() && f.value_at(p.x) == f.value_at(p.y);
  return is_claw(f, g, p);
}

void fill_params(RunReport& r, const RoundModel& m) {
  r.params["ell"] = double(m.ell);
  r.params["b_size"] = double(m.b_size);
  r.params["inner_bound"] = double(m.inner);
  r.params["predicate_cost"] = double(m.predicate);
  r.params["round_cost"] = m.round_cost;
  r.params["a"] = m.success;
  r.params["a_lower"] = m.success_lower;
}

// f on the A side (|A| = ell), g on the B side (|B| = ell^2).
RunReport run_generic(const FunctionInstance& f, const FunctionInstance& g, std::uint64_t ell, bool collision,
                      Mode mode, Rng& rng, std::optional<std::uint64_t> cutoff, const ScheduleConfig& schedule,
                      bool swapped) {
  RunReport rep;
  rep.mode = mode;
  rep.schedule = schedule;
  RoundModel model = round_model(f, g, ell, collision);
  fill_params(rep, model);
  if (cutoff) rep.params["cutoff_rounds"] = double(*cutoff);
  Verdict hit = collision ? Verdict::CollisionFound : Verdict::ClawFound;
  Verdict miss = collision ? Verdict::Distinct : Verdict::NotFound;
  if (!cutoff && model.success == 0.0)
    throw ContractError("claw finder: input has no solution and no cutoff was given; the search would not stop");

  if (mode == Mode::Analytic) {
    SearchStats st = search_stats(model.success, cutoff, std::nullopt, schedule);
    rep.outer_rounds = st.expected_applications;
    rep.comparisons = st.expected_applications * model.round_cost;
    rep.success_probability = st.success_probability;
    rep.verdict = model.success > 0.0 ? hit : miss;
    return rep;
  }

  ComparisonOracle oracle(f, g, rep.ledger);
  RoundRunner runner{f, g, oracle, model, collision};
  MeasuredProcedure<ClawPair> proc{model.success, [&](Rng& r) { return runner.run(r); },
                                   [&](Rng& r) { return runner.sample_success(r); }};
  auto out = amplify_procedure(proc, rng, cutoff, schedule);
  rep.outer_rounds = double(out.applications);
  rep.comparisons = double(rep.ledger.comparisons);
  if (out.witness) {
    if (!verify(f, g, *out.witness, collision)) throw std::logic_error("claw finder: witness failed verification");
    rep.witness = normalise(*out.witness, collision, swapped);
    rep.verdict = hit;
    rep.success_probability = 1.0;
  } else {
    rep.verdict = miss;
  }
  return rep;
}

}  // namespace

std::uint64_t choose_ell(std::uint64_t n, std::uint64_t m) {
  if (n < 1 || m < 1) throw DomainError("choose_ell: sizes must be positive");
  std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(m)));
  while (r * r > m) --r;
  while ((r + 1) * (r + 1) <= m) ++r;
  return std::max<std::uint64_t>(1, std::min(n, r));
}

std::uint64_t inner_bound(std::uint64_t ell) {
  return static_cast<std::uint64_t>(std::ceil(std::numbers::pi / 4.0 * static_cast<double>(ell)));
}

double round_success(const FunctionInstance& f, const FunctionInstance& g, std::uint64_t ell, bool collision) {
  const std::uint64_t n = f.size(), m = g.size(), b = ell * ell;
  if (ell == 0 || ell > n || b > m) throw DomainError("round_success: ell out of range");
  auto classes = value_classes(f, g, collision);
  if (classes.empty()) return 0.0;
  auto ps = marked_distribution(classes, n, ell, collision, m);
  const std::uint64_t inner = inner_bound(ell);
  std::vector<double> p_inner(std::min<std::uint64_t>(ps.size(), b + 1), 0.0);
  for (std::uint64_t t = 1; t < p_inner.size(); ++t)
    p_inner[t] = mean_amplified_probability(double(t) / double(b), inner);
  double a = 0.0;
  for (std::uint64_t s = 1; s < ps.size(); ++s) {
    if (ps[s] == 0.0) continue;
    double acc = 0.0;
    for (std::uint64_t t = 1; t <= s && t <= b; ++t) acc += hyper_pmf(m, s, b, t) * p_inner[t];
    a += ps[s] * acc;
  }
  return std::min(1.0, a);
}

RoundModel round_model(const FunctionInstance& f, const FunctionInstance& g, std::uint64_t ell, bool collision) {
  RoundModel r;
  r.ell = ell;
  r.b_size = ell * ell;
  r.inner = inner_bound(ell);
  r.predicate = search_depth(ell) + (collision ? 2 : 1);
  r.round_cost = double(mergesort_worst_case(ell)) + double(r.inner) * double(r.predicate);
  r.success = round_success(f, g, ell, collision);
  r.success_lower = std::pow(double(ell), 3) / (2.0 * double(f.size()) * double(g.size()));
  return r;
}

std::uint64_t distinct_cutoff(std::uint64_t n, std::uint64_t ell, const ScheduleConfig& schedule) {
  double lower = std::pow(double(ell), 3) / (2.0 * double(n) * double(n));
  return static_cast<std::uint64_t>(schedule.cutoff_multiplier * std::ceil(1.0 / std::sqrt(lower)));
}

RunReport generic_claw_finder(const FunctionInstance& f, const FunctionInstance& g, Mode mode, Rng& rng,
                              const ClawOptions& options) {
  bool swapped = f.size() > g.size();
  const FunctionInstance& small = swapped ? g : f;
  const FunctionInstance& large = swapped ? f : g;
  std::uint64_t ell = options.ell.value_or(choose_ell(small.size(), large.size()));
  if (ell < 1 || ell > small.size() || ell * ell > large.size())
    throw DomainError("generic_claw_finder: ell must satisfy 1 <= ell <= min(N, sqrt(M))");
  RunReport r = run_generic(small, large, ell, false, mode, rng, options.cutoff_rounds, options.schedule, swapped);
  r.algorithm = "generic_claw";
  r.params["swapped"] = swapped ? 1.0 : 0.0;
  return r;
}

RunReport element_distinctness(const FunctionInstance& f, Mode mode, Rng& rng, const ScheduleConfig& schedule) {
  return element_distinctness(f, mode, rng, ClawOptions{std::nullopt, std::nullopt, schedule});
}

RunReport element_distinctness(const FunctionInstance& f, Mode mode, Rng& rng, const ClawOptions& options) {
  if (f.size() < 2) throw DomainError("element_distinctness: need N >= 2");
  std::uint64_t ell = options.ell.value_or(choose_ell(f.size(), f.size()));
  if (ell < 1 || ell > f.size()) throw DomainError("element_distinctness: need 1 <= ell <= N");
  std::uint64_t cutoff = options.cutoff_rounds.value_or(distinct_cutoff(f.size(), ell, options.schedule));
  RunReport r = run_generic(f, f, ell, true, mode, rng, cutoff, options.schedule, false);
  r.algorithm = "element_distinctness";
  return r;
}

RunReport collision_two_to_one(const FunctionInstance& f, Mode mode, Rng& rng, const ScheduleConfig& schedule) {
  const std::uint64_t n = f.size();
  if (n < 2) throw DomainError("collision_two_to_one: need N >= 2");
  std::uint64_t ell = std::min(ceil_cbrt(n), choose_ell(n, n));
  RoundModel model = round_model(f, f, ell, true);
  RunReport rep;
  rep.algorithm = "collision_two_to_one";
  rep.mode = mode;
  rep.schedule = schedule;
  fill_params(rep, model);
  const int reps = 3;
  rep.params["max_repetitions"] = reps;
  if (model.success == 0.0) throw DomainError("collision_two_to_one: input has no collision");
  std::uint64_t j = known_iterations(model.success);
  double p = amplified_probability(model.success, j);
  rep.params["iterations"] = double(j);
  rep.params["amplified_success"] = p;

  if (mode == Mode::Analytic) {
    double expected_reps = 0.0, alive = 1.0;
    for (int i = 0; i < reps; ++i) {
      expected_reps += alive;
      alive *= 1.0 - p;
    }
    rep.outer_rounds = expected_reps * double(j + 1);
    rep.comparisons = rep.outer_rounds * model.round_cost;
    rep.success_probability = 1.0 - alive;
    rep.verdict = Verdict::CollisionFound;
    return rep;
  }

  ComparisonOracle oracle(f, f, rep.ledger);
  RoundRunner runner{f, f, oracle, model, true};
  MeasuredProcedure<ClawPair> proc{model.success, [&](Rng& r) { return runner.run(r); },
                                   [&](Rng& r) { return runner.sample_success(r); }};
  rep.verdict = Verdict::NotFound;
  for (int i = 0; i < reps; ++i) {
    auto w = measure_amplified(proc, j, rng);
    rep.outer_rounds += double(j + 1);
    if (w) {
      if (!verify(f, f, *w, true)) throw std::logic_error("collision_two_to_one: witness failed verification");
      rep.witness = normalise(*w, true, false);
      rep.verdict = Verdict::CollisionFound;
      rep.success_probability = 1.0;
      rep.params["repetitions"] = i + 1;
      break;
    }
  }
  rep.comparisons = double(rep.ledger.comparisons);
  return rep;
}

double subset_hit_probability(std::uint64_t n, std::uint64_t k, std::uint64_t s) {
  return std::max(0.0, 1.0 - hyper_pmf(n, k, s, 0) - hyper_pmf(n, k, s, 1));
}

RunReport collision_k_repeated(const FunctionInstance& f, std::uint64_t k, Mode mode, Rng& rng,
                               const ScheduleConfig& schedule) {
  const std::uint64_t n = f.size();
  if (k < 2 || k > n) throw DomainError("collision_k_repeated: need 2 <= k <= N");
  std::uint64_t s = std::min<std::uint64_t>(n, (10 * n + k - 1) / k);
  RunReport rep;
  rep.algorithm = "collision_k_repeated";
  rep.mode = mode;
  rep.schedule = schedule;
  rep.params["k"] = double(k);
  rep.params["subset_size"] = double(s);
  rep.params["subset_hit_probability"] = subset_hit_probability(n, k, s);
  rep.verdict = Verdict::NotFound;
  const int reps = 3;
  double alive = 1.0;
  for (int i = 0; i < reps; ++i) {
    std::vector<Index> sub;
    if (s == n) {
      for (Index x = 1; x <= n; ++x) sub.push_back(x);
    } else {
      for (auto x : sample_without_replacement(rng, n, s)) sub.push_back(x + 1);
      std::sort(sub.begin(), sub.end());
    }
    // the restriction is queried index-for-index, so its comparisons are f's
    std::vector<Value> vals;
    for (Index x : sub) vals.push_back(f.value_at(x));
    FunctionInstance fs(std::move(vals));
    RunReport inner = element_distinctness(fs, mode, rng, schedule);
    rep.params["ell"] = inner.params["ell"];
    if (mode == Mode::Analytic) {
      rep.comparisons += alive * inner.comparisons;
      rep.outer_rounds += alive * inner.outer_rounds;
      alive *= 1.0 - inner.success_probability;
      continue;
    }
    rep.ledger.comparisons += inner.ledger.comparisons;
    rep.outer_rounds += inner.outer_rounds;
    if (inner.witness) {
      ClawPair w{sub[inner.witness->x - 1], sub[inner.witness->y - 1]};
      if (!verify(f, f, w, true)) throw std::logic_error("collision_k_repeated: witness failed verification");
      rep.witness = w;
      rep.verdict = Verdict::CollisionFound;
      rep.success_probability = 1.0;
      rep.params["repetitions"] = i + 1;
      break;
    }
  }
  if (mode == Mode::Analytic) {
    rep.success_probability = 1.0 - alive;
    rep.verdict = all_collisions(f).empty() ? Verdict::NotFound : Verdict::CollisionFound;
  } else {
    rep.comparisons = double(rep.ledger.comparisons);
  }
  return rep;
}

}  // namespace qclaw
