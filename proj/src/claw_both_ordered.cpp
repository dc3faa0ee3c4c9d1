// Claw finding between two ordered tables by recursive search over
// subproblems of size r = ceil(log2(n)^2).
//
// A table is seen through a View of logical length n whose tail past the
// real entries is +inf. Sentinels never equal anything and cost nothing to
// compare; the F side's sentinels order below the G side's.

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>

#include "qclaw/claw.hpp"
#include "qclaw/errors.hpp"
#include "qclaw/sorted_access.hpp"

namespace qclaw {

namespace {

struct View {
  Side side;
  Index start;    // real index of logical position 1
  Index real;     // real entries
  Index logical;  // padded length

  View sub(Index from, Index len) const {
    Index r = from <= real ? std::min(len, real - from + 1) : 0;
    return {side, start + from - 1, r, len};
  }
  Index index(Index pos) const { return start + pos - 1; }
};

// [a(p) <= b(q)] with sentinel handling; `raw` answers real-vs-real.
template <class Raw>
bool view_leq(const View& a, Index p, const View& b, Index q, Raw&& raw) {
  bool sa = p > a.real, sb = q > b.real;
  if (!sa && !sb) return raw(a.side, a.index(p), b.side, b.index(q));
  if (sa && sb) return a.side != b.side ? a.side == Side::F : p <= q;
  return sb;
}

struct Level {
  std::uint64_t r = 0;
  std::uint64_t subproblems = 0;  // K
  std::uint64_t budget = 0;       // probe applications
};

std::uint64_t probe_budget(std::uint64_t k, double multiplier) {
  return static_cast<std::uint64_t>(std::ceil(multiplier * std::sqrt(static_cast<double>(k)) - 1e-12));
}

std::uint64_t budget_impl(std::uint64_t n, double multiplier, std::map<std::uint64_t, std::uint64_t>& memo);

// Recursion parameters, or nullopt where the classical merge is used.
std::optional<Level> level(std::uint64_t n, double multiplier, std::map<std::uint64_t, std::uint64_t>& memo) {
  if (n <= 16) return std::nullopt;
  std::uint64_t r = both_ordered_r(n);
  if (r >= n) return std::nullopt;
  Level l{r, 2 * ((n + r - 1) / r), 0};
  l.budget = probe_budget(l.subproblems, multiplier);
  std::uint64_t rec = l.budget * (search_depth(n) + budget_impl(r, multiplier, memo));
  if (merge_cost(n) <= rec) return std::nullopt;
  return l;
}

std::uint64_t budget_impl(std::uint64_t n, double multiplier, std::map<std::uint64_t, std::uint64_t>& memo) {
  if (auto it = memo.find(n); it != memo.end()) return it->second;
  auto l = level(n, multiplier, memo);
  std::uint64_t v = l ? l->budget * (search_depth(n) + budget_impl(l->r, multiplier, memo)) : merge_cost(n);
  memo[n] = v;
  return v;
}

struct Solver {
  const FunctionInstance& f;
  const FunctionInstance& g;
  ComparisonOracle* oracle;  // null: white-box only
  ScheduleConfig schedule;
  std::map<std::uint64_t, std::uint64_t> memo;
  std::uint64_t top_n = 0;
  std::optional<std::uint64_t> top_r;  // block-size override, top level only

  Value value(Side s, Index i) const { return s == Side::F ? f.value_at(i) : g.value_at(i); }

  bool leq_box(const View& a, Index p, const View& b, Index q) const {
    return view_leq(a, p, b, q, [&](Side sa, Index i, Side sb, Index j) { return value(sa, i) <= value(sb, j); });
  }
  bool leq_metered(const View& a, Index p, const View& b, Index q) const {
    return view_leq(a, p, b, q, [&](Side sa, Index i, Side sb, Index j) { return oracle->leq(sa, i, sb, j); });
  }

  std::optional<Level> plan(std::uint64_t n) {
    if (!top_r || n != top_n) return level(n, schedule.cutoff_multiplier, memo);
    std::uint64_t r = *top_r;
    if (r >= n) return std::nullopt;
    Level l{r, 2 * ((n + r - 1) / r), 0};
    l.budget = probe_budget(l.subproblems, schedule.cutoff_multiplier);
    return l;
  }
  std::uint64_t budget(std::uint64_t n) {
    auto l = plan(n);
    if (!l) return merge_cost(n);
    return l->budget * (search_depth(n) + budget_impl(l->r, schedule.cutoff_multiplier, memo));
  }

  // Subproblem s of (F, G): the block view and the aligned window of the other table.
  template <class Leq>
  std::pair<View, View> window(const View& F, const View& G, std::uint64_t r, std::uint64_t k, std::uint64_t s,
                               Leq&& leq) const {
    bool fblock = s < k / 2;
    const View& blk = fblock ? F : G;
    const View& oth = fblock ? G : F;
    Index a = (fblock ? s : s - k / 2) * r + 1;
    Index p = lower_bound_fixed(oth.logical, [&](std::uint64_t pos) { return leq(blk, a, oth, pos); });
    View b = blk.sub(a, r), o = oth.sub(p, r);
    return fblock ? std::pair{b, o} : std::pair{o, b};
  }

  std::optional<ClawPair> merge_box(const View& F, const View& G) const {
    Index i = 1, j = 1;
    while (i <= F.real && j <= G.real) {
      Value a = value(Side::F, F.index(i)), b = value(Side::G, G.index(j));
      if (a == b) return ClawPair{F.index(i), G.index(j)};
      if (a < b) ++i;
      else ++j;
    }
    return std::nullopt;
  }

  std::optional<ClawPair> merge_metered(const View& F, const View& G) const {
    Index i = 1, j = 1;
    while (i <= F.real && j <= G.real) {
      if (oracle->leq(Side::F, F.index(i), Side::G, G.index(j))) {
        if (oracle->leq(Side::G, G.index(j), Side::F, F.index(i))) return ClawPair{F.index(i), G.index(j)};
        ++i;
      } else {
        ++j;
      }
    }
    return std::nullopt;
  }

  std::vector<std::uint64_t> marked(const View& F, const View& G, const Level& l) const {
    std::vector<std::uint64_t> out;
    auto box = [&](const View& a, Index p, const View& b, Index q) { return leq_box(a, p, b, q); };
    for (std::uint64_t s = 0; s < l.subproblems; ++s) {
      auto [sf, sg] = window(F, G, l.r, l.subproblems, s, box);
      if (merge_box(sf, sg)) out.push_back(s);
    }
    return out;
  }

  // Success probability of solve() when the claw-bearing subproblems are
  // solved with certainty below; exact while the next level is classical.
  double success(const View& F, const View& G) {
    auto l = plan(F.logical);
    if (!l) return merge_box(F, G) ? 1.0 : 0.0;
    auto m = marked(F, G, *l);
    if (m.empty()) return 0.0;
    double sub = 1.0;
    auto box = [&](const View& a, Index p, const View& b, Index q) { return leq_box(a, p, b, q); };
    for (auto s : m) {
      auto [sf, sg] = window(F, G, l->r, l->subproblems, s, box);
      sub = std::min(sub, success(sf, sg));
    }
    double a = double(m.size()) / double(l->subproblems);
    return sub * search_stats(a, l->budget, std::sqrt(double(l->subproblems)), schedule).success_probability;
  }

  std::optional<ClawPair> probe(const View& F, const View& G, const Level& l, std::uint64_t s, Rng& rng) {
    auto met = [&](const View& a, Index p, const View& b, Index q) { return leq_metered(a, p, b, q); };
    auto [sf, sg] = window(F, G, l.r, l.subproblems, s, met);
    return solve(sf, sg, rng, std::nullopt);
  }

  std::optional<ClawPair> solve(const View& F, const View& G, Rng& rng, std::optional<std::uint64_t> cutoff,
                                std::uint64_t* applications = nullptr) {
    auto l = plan(F.logical);
    if (!l) return merge_metered(F, G);
    std::uint64_t budget = cutoff.value_or(l->budget);
    MarkedSet ms(l->subproblems, marked(F, G, *l));
    double bound = 1.0, cap = std::sqrt(double(l->subproblems));
    std::uint64_t used = 0;
    while (used < budget) {
      std::uint64_t j = std::min<std::uint64_t>(uniform_below(rng, std::uint64_t(std::ceil(bound))), budget - used - 1);
      for (std::uint64_t i = 0; i < j; ++i) (void)probe(F, G, *l, uniform_below(rng, l->subproblems), rng);
      auto w = probe(F, G, *l, ms.measure(j, rng), rng);
      used += j + 1;
      if (w) {
        if (applications) *applications = used;
        return w;
      }
      bound = std::min(bound * schedule.lambda, cap);
    }
    if (applications) *applications = used;
    return std::nullopt;
  }
};

}  // namespace

std::uint64_t both_ordered_r(std::uint64_t n) {
  if (n < 1) throw DomainError("both_ordered_r: need n >= 1");
  double l = std::log2(static_cast<double>(n));
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(l * l - 1e-9)));
}

std::uint64_t merge_cost(std::uint64_t n) { return n == 0 ? 0 : 3 * n - 1; }

std::uint64_t both_ordered_budget(std::uint64_t n) {
  static std::mutex mu;
  static std::map<std::uint64_t, std::uint64_t> memo;
  std::lock_guard<std::mutex> lock(mu);
  return budget_impl(n, ScheduleConfig{}.cutoff_multiplier, memo);
}

std::vector<Subproblem> subproblems(const FunctionInstance& f, const FunctionInstance& g, std::uint64_t r) {
  if (!f.ordered() || !g.ordered()) throw DomainError("subproblems: both tables must be ordered");
  const std::uint64_t n = std::max(f.size(), g.size());
  if (r < 1 || r > n) throw DomainError("subproblems: need 1 <= r <= N");
  Solver sv{f, g, nullptr, {}, {}, 0, std::nullopt};
  View F{Side::F, 1, f.size(), n}, G{Side::G, 1, g.size(), n};
  const std::uint64_t k = 2 * ((n + r - 1) / r);
  auto box = [&](const View& a, Index p, const View& b, Index q) { return sv.leq_box(a, p, b, q); };
  std::vector<Subproblem> out;
  for (std::uint64_t s = 0; s < k; ++s) {
    auto [sf, sg] = sv.window(F, G, r, k, s, box);
    bool fb = s < k / 2;
    out.push_back({fb ? Side::F : Side::G, fb ? s : s - k / 2, {sf.start, sf.real}, {sg.start, sg.real}});
  }
  return out;
}

RunReport both_ordered_claw(const FunctionInstance& f, const FunctionInstance& g, Mode mode, Rng& rng,
                            const BothOrderedOptions& options) {
  if (!f.ordered() || !g.ordered()) throw DomainError("both_ordered_claw: both tables must be ordered");
  const std::uint64_t n = std::max(f.size(), g.size());
  RunReport rep;
  rep.algorithm = "both_ordered_claw";
  rep.mode = mode;
  rep.schedule = options.schedule;
  if (options.r && *options.r < 1) throw DomainError("both_ordered_claw: r must be >= 1");
  Solver sv{f, g, nullptr, options.schedule, {}, n, options.r};
  View F{Side::F, 1, f.size(), n}, G{Side::G, 1, g.size(), n};
  auto top = sv.plan(n);
  std::uint64_t budget = sv.budget(n);
  rep.params["n"] = double(n);
  rep.params["log_star"] = double(log_star(n));
  rep.params["budget"] = double(budget);
  rep.params["recursive"] = top ? 1.0 : 0.0;
  if (top) {
    rep.params["r"] = double(top->r);
    rep.params["subproblems"] = double(top->subproblems);
    rep.params["probe_budget"] = double(options.cutoff.value_or(top->budget));
  }
  if (options.cutoff) rep.params["cutoff"] = double(*options.cutoff);
  bool has_claw = !all_claws(f, g).empty();

  if (mode == Mode::Analytic) {
    // worst-case budget; a cutoff only rescales the top level
    if (top && options.cutoff)
      rep.comparisons = double(*options.cutoff) *
                        double(search_depth(n) + budget_impl(top->r, options.schedule.cutoff_multiplier, sv.memo));
    else
      rep.comparisons = double(budget);
    rep.outer_rounds = top ? double(options.cutoff.value_or(top->budget)) : 1.0;
    if (top && options.cutoff) {
      auto m = sv.marked(F, G, *top);
      rep.success_probability =
          m.empty() ? 0.0
                    : search_stats(double(m.size()) / double(top->subproblems), *options.cutoff,
                                   std::sqrt(double(top->subproblems)), options.schedule)
                          .success_probability;
    } else {
      rep.success_probability = sv.success(F, G);
    }
    rep.verdict = has_claw ? Verdict::ClawFound : Verdict::NotFound;
    return rep;
  }

  ComparisonOracle oracle(f, g, rep.ledger);
  sv.oracle = &oracle;
  std::uint64_t apps = top ? 0 : 1;
  auto w = sv.solve(F, G, rng, options.cutoff, &apps);
  rep.outer_rounds = double(apps);
  rep.comparisons = double(rep.ledger.comparisons);
  rep.verdict = Verdict::NotFound;
  if (w) {
    if (!is_claw(f, g, *w)) throw std::logic_error("both_ordered_claw: witness failed verification");
    rep.witness = w;
    rep.verdict = Verdict::ClawFound;
    rep.success_probability = 1.0;
  }
  return rep;
}

}  // namespace qclaw
