#include <cmath>
#include <unordered_set>

#include "qclaw/claw.hpp"
#include "qclaw/errors.hpp"
#include "qclaw/sorted_access.hpp"

namespace qclaw {

namespace {

RunReport search_report(const char* name, Mode mode, const ScheduleConfig& schedule, std::uint64_t space,
                        std::uint64_t marked, double predicate, std::optional<std::uint64_t> cutoff) {
  RunReport r;
  r.algorithm = name;
  r.mode = mode;
  r.schedule = schedule;
  r.params["search_space"] = double(space);
  r.params["predicate_cost"] = predicate;
  if (cutoff) r.params["cutoff"] = double(*cutoff);
  if (!cutoff && marked == 0)
    throw ContractError(std::string(name) + ": nothing to find and no cutoff given; the search would not stop");
  if (mode == Mode::Analytic) {
    double a = double(marked) / double(space);
    SearchStats st = search_stats(a, cutoff, std::sqrt(double(space)), schedule);
    r.outer_rounds = st.expected_applications;
    r.comparisons = st.expected_applications * predicate;
    r.success_probability = st.success_probability;
    r.params["a"] = a;
  }
  return r;
}

}  // namespace

RunReport ordered_claw(const FunctionInstance& f, const FunctionInstance& g, Mode mode, Rng& rng,
                       std::optional<std::uint64_t> cutoff, const ScheduleConfig& schedule) {
  if (!f.ordered()) throw DomainError("ordered_claw: f must be ordered");
  const std::uint64_t n = f.size(), m = g.size();
  std::unordered_set<Value> fv(f.values().begin(), f.values().end());
  std::vector<std::uint64_t> marked;
  for (Index y = 1; y <= m; ++y)
    if (fv.count(g.value_at(y))) marked.push_back(y - 1);
  const std::uint64_t pred = search_depth(n) + 1;
  RunReport r = search_report("ordered_claw", mode, schedule, m, marked.size(), double(pred), cutoff);
  if (mode == Mode::Analytic) {
    r.verdict = marked.empty() ? Verdict::NotFound : Verdict::ClawFound;
    return r;
  }
  ComparisonOracle oracle(f, g, r.ledger);
  std::vector<Index> all(n);
  for (Index x = 1; x <= n; ++x) all[x - 1] = x;
  SortedSide table = SortedSide::presorted(oracle, Side::F, std::move(all));
  std::optional<Index> last;
  SearchTarget target{MarkedSet(m, marked), [&](std::uint64_t y0) {
                        last = table.find_equal(Side::G, y0 + 1);
                        return last.has_value();
                      }};
  QSearchOptions opt{cutoff, std::sqrt(double(m)), schedule};
  SearchOutcome out = qsearch(target, rng, opt);
  r.outer_rounds = double(out.oracle_applications);
  r.comparisons = double(r.ledger.comparisons);
  r.verdict = Verdict::NotFound;
  if (out.found) {
    ClawPair w{*last, *out.found + 1};
    if (!is_claw(f, g, w)) throw std::logic_error("ordered_claw: witness failed verification");
    r.witness = w;
    r.verdict = Verdict::ClawFound;
    r.success_probability = 1.0;
  }
  return r;
}

RunReport ordered_collision(const FunctionInstance& f, Mode mode, Rng& rng, std::optional<std::uint64_t> cutoff,
                            const ScheduleConfig& schedule) {
  if (!f.ordered()) throw DomainError("ordered_collision: f must be ordered");
  const std::uint64_t n = f.size();
  if (n < 2) {
    RunReport r;
    r.algorithm = "ordered_collision";
    r.mode = mode;
    r.schedule = schedule;
    r.verdict = Verdict::NotFound;
    return r;
  }
  std::vector<std::uint64_t> marked;
  for (Index i = 1; i < n; ++i)
    if (f.value_at(i) == f.value_at(i + 1)) marked.push_back(i - 1);
  RunReport r = search_report("ordered_collision", mode, schedule, n - 1, marked.size(), 1.0, cutoff);
  if (mode == Mode::Analytic) {
    r.verdict = marked.empty() ? Verdict::NotFound : Verdict::CollisionFound;
    return r;
  }
  ComparisonOracle oracle(f, f, r.ledger);
  // ordered: f(i) <= f(i+1) always, so [f(i+1) <= f(i)] is equality
  SearchTarget target{MarkedSet(n - 1, marked),
                      [&](std::uint64_t i0) { return oracle.leq(Side::F, i0 + 2, Side::F, i0 + 1); }};
  QSearchOptions opt{cutoff, std::sqrt(double(n - 1)), schedule};
  SearchOutcome out = qsearch(target, rng, opt);
  r.outer_rounds = double(out.oracle_applications);
  r.comparisons = double(r.ledger.comparisons);
  r.verdict = Verdict::NotFound;
  if (out.found) {
    ClawPair w{*out.found + 1, *out.found + 2};
    if (f.value_at(w.x) != f.value_at(w.y)) throw std::logic_error("ordered_collision: witness failed verification");
    r.witness = w;
    r.verdict = Verdict::CollisionFound;
    r.success_probability = 1.0;
  }
  return r;
}

std::uint64_t log_star(std::uint64_t n) {
  if (n < 1) throw DomainError("log_star: need N >= 1");
  double x = static_cast<double>(n);
  std::uint64_t i = 0;
  while (x > 1.0) {
    x = std::log2(x);
    ++i;
  }
  return i;
}

}  // namespace qclaw
