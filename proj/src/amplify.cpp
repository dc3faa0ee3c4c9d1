#include "qclaw/amplify.hpp"

#include <algorithm>
#include <numbers>

namespace qclaw {

RotationSearch::RotationSearch(std::uint64_t space_size, std::uint64_t marked_count)
    : k_(space_size), t_(marked_count) {
  if (k_ == 0) throw DomainError("RotationSearch: empty search space");
  if (t_ > k_) throw DomainError("RotationSearch: more marked items than items");
  theta_ = std::asin(std::sqrt(static_cast<double>(t_) / static_cast<double>(k_)));
}

double RotationSearch::success_probability(std::uint64_t iterations) const {
  if (t_ == 0) return 0.0;
  if (t_ == k_) return 1.0;
  double s = std::sin((2.0 * static_cast<double>(iterations) + 1.0) * theta_);
  return s * s;
}

double amplified_probability(double a, std::uint64_t iterations) {
  if (a <= 0.0) return 0.0;
  if (a >= 1.0) return 1.0;
  double s = std::sin((2.0 * static_cast<double>(iterations) + 1.0) * std::asin(std::sqrt(a)));
  return s * s;
}

double mean_amplified_probability(double a, std::uint64_t bound) {
  if (bound == 0) throw DomainError("mean_amplified_probability: empty iteration range");
  if (a <= 0.0) return 0.0;
  if (a >= 1.0) return 1.0;
  // (1/J) sum sin^2((2j+1)th) = 1/2 - sin(4 J th) / (4 J sin(2 th))
  double th = std::asin(std::sqrt(a));
  double j = static_cast<double>(bound);
  double den = std::sin(2.0 * th);
  if (den < 1e-12) {
    double acc = 0.0;
    for (std::uint64_t i = 0; i < bound; ++i) acc += amplified_probability(a, i);
    return acc / j;
  }
  return 0.5 - std::sin(4.0 * j * th) / (4.0 * j * den);
}

double grover_success_prob(std::uint64_t k, std::uint64_t t, std::uint64_t j) {
  return RotationSearch(k, t).success_probability(j);
}

std::vector<double> statevector_trajectory(std::uint64_t k, std::uint64_t t, std::uint64_t max_iterations) {
  if (k == 0) throw DomainError("statevector_grover: empty search space");
  if (t > k) throw DomainError("statevector_grover: more marked items than items");
  if (k > kStatevectorLimit) throw ResourceError("statevector_grover: K above the explicit simulation limit");
  std::vector<double> amp(k, 1.0 / std::sqrt(static_cast<double>(k)));
  std::vector<double> out;
  out.reserve(max_iterations + 1);
  auto marked_mass = [&] {
    double m = 0.0;
    for (std::uint64_t i = 0; i < t; ++i) m += amp[i] * amp[i];
    return m;
  };
  out.push_back(marked_mass());
  for (std::uint64_t it = 0; it < max_iterations; ++it) {
    for (std::uint64_t i = 0; i < t; ++i) amp[i] = -amp[i];
    double mean = 0.0;
    for (double x : amp) mean += x;
    mean /= static_cast<double>(k);
    for (double& x : amp) x = 2.0 * mean - x;
    out.push_back(marked_mass());
  }
  return out;
}

double statevector_grover(std::uint64_t k, std::uint64_t t, std::uint64_t j) {
  return statevector_trajectory(k, t, j).back();
}

MarkedSet::MarkedSet(std::uint64_t size, std::vector<std::uint64_t> marked) : size_(size), marked_(std::move(marked)) {
  if (size_ == 0) throw DomainError("MarkedSet: empty search space");
  std::sort(marked_.begin(), marked_.end());
  marked_.erase(std::unique(marked_.begin(), marked_.end()), marked_.end());
  if (!marked_.empty() && marked_.back() >= size_) throw DomainError("MarkedSet: item outside the search space");
}

MarkedSet MarkedSet::scan(std::uint64_t size, const std::function<bool(std::uint64_t)>& truth) {
  std::vector<std::uint64_t> m;
  for (std::uint64_t i = 0; i < size; ++i)
    if (truth(i)) m.push_back(i);
  return MarkedSet(size, std::move(m));
}

bool MarkedSet::contains(std::uint64_t item) const {
  return std::binary_search(marked_.begin(), marked_.end(), item);
}

std::uint64_t MarkedSet::uniform_marked(Rng& rng) const {
  if (marked_.empty()) throw std::logic_error("MarkedSet: no marked item");
  return marked_[uniform_below(rng, marked_.size())];
}

std::uint64_t MarkedSet::uniform_unmarked(Rng& rng) const {
  std::uint64_t free = size_ - marked_.size();
  if (free == 0) throw std::logic_error("MarkedSet: no unmarked item");
  // r-th unmarked item: walk past marked items at or below the candidate
  std::uint64_t r = uniform_below(rng, free);
  std::uint64_t lo = 0, hi = marked_.size();
  while (lo < hi) {
    std::uint64_t mid = (lo + hi) / 2;
    if (marked_[mid] - mid <= r) lo = mid + 1;
    else hi = mid;
  }
  return r + lo;
}

std::uint64_t MarkedSet::measure(std::uint64_t iterations, Rng& rng) const {
  double p = RotationSearch(size_, marked_.size()).success_probability(iterations);
  if (!marked_.empty() && (marked_.size() == size_ || bernoulli(rng, p))) return uniform_marked(rng);
  return uniform_unmarked(rng);
}

SearchOutcome sample_grover(std::uint64_t k, std::uint64_t t, std::uint64_t j, Rng& rng) {
  RotationSearch rs(k, t);
  SearchOutcome out;
  out.iterations_used = j;
  out.oracle_applications = j + 1;
  out.measurements = 1;
  if (t > 0 && bernoulli(rng, rs.success_probability(j))) out.found = 1 + uniform_below(rng, t);
  return out;
}

std::uint64_t decision_cutoff(std::uint64_t space, const ScheduleConfig& schedule) {
  if (space == 0) throw DomainError("decision_cutoff: empty search space");
  return static_cast<std::uint64_t>(
      std::ceil(schedule.cutoff_multiplier * std::ceil(std::sqrt(static_cast<double>(space)))));
}

SearchOutcome qsearch(const SearchTarget& target, Rng& rng, const QSearchOptions& options) {
  const MarkedSet& ms = target.marked;
  if (!options.cutoff && ms.count() == 0)
    throw ContractError("qsearch: no cutoff given and nothing is marked; the search would run forever");
  if (options.cutoff && *options.cutoff == 0) return {};
  SearchOutcome out;
  double bound = 1.0;
  const std::uint64_t n = ms.size();
  while (!options.cutoff || out.oracle_applications < *options.cutoff) {
    std::uint64_t j = uniform_below(rng, static_cast<std::uint64_t>(std::ceil(bound)));
    if (options.cutoff) j = std::min<std::uint64_t>(j, *options.cutoff - out.oracle_applications - 1);
    // superposed iterations: one real application each, on a random representative
    for (std::uint64_t i = 0; i < j; ++i) (void)target.apply(uniform_below(rng, n));
    std::uint64_t item = ms.measure(j, rng);
    bool hit = target.apply(item);
    out.oracle_applications += j + 1;
    out.iterations_used += j;
    ++out.measurements;
    if (hit) {
      out.found = item;
      return out;
    }
    bound *= options.schedule.lambda;
    if (options.cap) bound = std::min(bound, std::max(1.0, *options.cap));
  }
  return out;
}

SearchOutcome qsearch(std::uint64_t k, const std::function<bool(std::uint64_t)>& predicate, Rng& rng,
                      std::optional<std::uint64_t> cutoff, const ScheduleConfig& schedule) {
  SearchTarget target{MarkedSet::scan(k, predicate), predicate};
  QSearchOptions opt;
  opt.cutoff = cutoff;
  opt.cap = std::sqrt(static_cast<double>(k));
  opt.schedule = schedule;
  return qsearch(target, rng, opt);
}

std::uint64_t known_iterations(double a) {
  if (!(a > 0.0) || a > 1.0) throw DomainError("known_iterations: success probability must lie in (0, 1]");
  if (a == 1.0) return 0;
  double th = std::asin(std::sqrt(a));
  double j = std::ceil(std::numbers::pi / (4.0 * th) - 0.5 - 1e-12);
  return j < 0.0 ? 0 : static_cast<std::uint64_t>(j);
}

KnownAmplification amplify_known(double a, double round_cost, Rng& rng) {
  if (round_cost < 0.0) throw DomainError("amplify_known: negative round cost");
  KnownAmplification out;
  out.iterations = known_iterations(a);
  out.success_probability = amplified_probability(a, out.iterations);
  out.applications = out.iterations + 1;
  out.cost = static_cast<double>(out.applications) * round_cost;
  out.succeeded = bernoulli(rng, out.success_probability);
  return out;
}

}  // namespace qclaw
