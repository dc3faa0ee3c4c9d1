// Exact expectations of the unknown-t schedule.
//
// State: distribution of the iteration bound's step index against the
// applications consumed so far. Without truncation the states collapse to
// one chain (applications only enter the expectation linearly).

#include <algorithm>
#include <vector>

#include "qclaw/amplify.hpp"

namespace qclaw {

namespace {

struct Bounds {
  double value = 1.0;
  double lambda;
  std::optional<double> cap;
  void step() {
    value *= lambda;
    if (cap) value = std::min(value, std::max(1.0, *cap));
  }
  std::uint64_t range() const { return static_cast<std::uint64_t>(std::ceil(value)); }
};

void check_a(double a) {
  if (!(a >= 0.0) || a > 1.0) throw DomainError("search_stats: success probability must lie in [0, 1]");
}

}  // namespace

double expected_applications(double a, std::optional<double> cap, const ScheduleConfig& schedule) {
  check_a(a);
  if (a == 0.0) throw DomainError("expected_applications: no solutions, the schedule never stops");
  Bounds b{1.0, schedule.lambda, cap};
  double alive = 1.0, e = 0.0;
  // each measurement succeeds with at most the cap's mean; alive decays geometrically
  for (int iter = 0; iter < 1000000 && alive > 1e-16; ++iter) {
    std::uint64_t jr = b.range();
    double q = mean_amplified_probability(a, jr);
    double mean_cost = (static_cast<double>(jr) - 1.0) / 2.0 + 1.0;
    e += alive * mean_cost;
    alive *= 1.0 - q;
    b.step();
  }
  return e;
}

SearchStats search_stats(double a, std::optional<std::uint64_t> cutoff, std::optional<double> cap,
                         const ScheduleConfig& schedule) {
  check_a(a);
  if (!cutoff) {
    if (a == 0.0) throw DomainError("search_stats: no solutions and no cutoff");
    return {expected_applications(a, cap, schedule), 1.0};
  }
  const std::uint64_t c = *cutoff;
  if (c == 0) return {0.0, 0.0};
  // no solutions: the clipped last measurement lands exactly on the cutoff
  if (a == 0.0) return {static_cast<double>(c), 0.0};

  std::vector<double> mass(c, 0.0), next(c, 0.0);
  mass[0] = 1.0;
  // all iteration counts reachable at this step share one bound; precompute p(j)
  std::vector<double> pj;
  auto prob = [&](std::uint64_t j) {
    while (pj.size() <= j) pj.push_back(amplified_probability(a, pj.size()));
    return pj[j];
  };
  Bounds b{1.0, schedule.lambda, cap};
  SearchStats st;
  std::uint64_t lo = 0;  // lowest used-count with mass
  for (std::uint64_t step = 0; step < c; ++step) {
    std::fill(next.begin(), next.end(), 0.0);
    std::uint64_t jr = b.range();
    double inv = 1.0 / static_cast<double>(jr);
    double live = 0.0;
    for (std::uint64_t u = lo; u < c; ++u) {
      double w = mass[u];
      if (w == 0.0) continue;
      for (std::uint64_t j = 0; j < jr; ++j) {
        std::uint64_t jj = std::min<std::uint64_t>(j, c - u - 1);
        double q = prob(jj);
        double wj = w * inv;
        st.expected_applications += wj * static_cast<double>(jj + 1);
        st.success_probability += wj * q;
        std::uint64_t nu = u + jj + 1;
        if (nu < c) {
          next[nu] += wj * (1.0 - q);
          live += wj * (1.0 - q);
        }
      }
    }
    mass.swap(next);
    // every measurement uses at least one application, so c steps exhaust the budget
    if (live < 1e-18) break;
    while (lo < c && mass[lo] == 0.0) ++lo;
    b.step();
  }
  return st;
}

}  // namespace qclaw
