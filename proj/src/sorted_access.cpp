#include "qclaw/sorted_access.hpp"

#include <bit>

#include "qclaw/errors.hpp"

namespace qclaw {

namespace {

void merge_sort(std::vector<Index>& v, std::vector<Index>& tmp, std::size_t lo, std::size_t hi,
                const std::function<bool(Index, Index)>& leq) {
  if (hi - lo < 2) return;
  std::size_t mid = lo + (hi - lo + 1) / 2;  // left half takes ceil(n/2)
  merge_sort(v, tmp, lo, mid, leq);
  merge_sort(v, tmp, mid, hi, leq);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (leq(v[i], v[j])) tmp[k++] = v[i++];
    else tmp[k++] = v[j++];
  }
  while (i < mid) tmp[k++] = v[i++];
  while (j < hi) tmp[k++] = v[j++];
  std::copy(tmp.begin() + lo, tmp.begin() + hi, v.begin() + lo);
}

}  // namespace

std::vector<Index> metered_mergesort(std::vector<Index> items, const std::function<bool(Index, Index)>& leq) {
  std::vector<Index> tmp(items.size());
  merge_sort(items, tmp, 0, items.size(), leq);
  return items;
}

std::uint64_t mergesort_worst_case(std::uint64_t n) {
  if (n < 2) return 0;
  std::uint64_t c = std::bit_width(n - 1);  // ceil(log2 n)
  return n * c - (std::uint64_t{1} << c) + 1;
}

std::uint64_t search_depth(std::uint64_t n) {
  return std::bit_width(n);  // ceil(log2(n+1))
}

std::uint64_t lower_bound_fixed(std::uint64_t n, const std::function<bool(std::uint64_t)>& probe) {
  std::uint64_t depth = search_depth(n);
  std::uint64_t below = 0;  // entries known to be < v
  for (std::uint64_t b = depth; b-- > 0;) {
    std::uint64_t pos = below + (std::uint64_t{1} << b);
    if (pos <= n) {
      if (!probe(pos)) below = pos;
    } else {
      (void)probe(n);  // +inf slot: v <= inf
    }
  }
  return below + 1;
}

SortedSide::SortedSide(ComparisonOracle& oracle, Side side, std::vector<Index> items)
    : oracle_(&oracle), side_(side) {
  if (items.empty()) throw DomainError("SortedSide: empty index set");
  sorted_ = metered_mergesort(std::move(items), [&](Index a, Index b) { return oracle.leq(side, a, side, b); });
}

SortedSide SortedSide::presorted(ComparisonOracle& oracle, Side side, std::vector<Index> items) {
  if (items.empty()) throw DomainError("SortedSide: empty index set");
  SortedSide s;
  s.oracle_ = &oracle;
  s.side_ = side;
  s.sorted_ = std::move(items);
  return s;
}

std::uint64_t SortedSide::lower(Side other, Index y) const {
  return lower_bound_fixed(size(), [&](std::uint64_t pos) { return oracle_->leq(other, y, side_, at(pos)); });
}

std::optional<Index> SortedSide::find_equal(Side other, Index y) const {
  std::uint64_t p = lower(other, y);
  // v <= s_p is already known; [s_p <= v] completes equality
  std::uint64_t q = p <= size() ? p : size();
  bool eq = oracle_->leq(side_, at(q), other, y);
  if (p <= size() && eq) return at(p);
  return std::nullopt;
}

std::optional<Index> SortedSide::find_partner(Index y) const {
  std::uint64_t p = lower(side_, y);
  std::uint64_t n = size();
  std::uint64_t q0 = p <= n ? p : n;
  std::uint64_t q1 = p + 1 <= n ? p + 1 : n;
  bool eq0 = oracle_->leq(side_, at(q0), side_, y);
  bool eq1 = oracle_->leq(side_, at(q1), side_, y);
  if (p <= n && eq0 && at(p) != y) return at(p);
  if (p + 1 <= n && eq1 && at(p + 1) != y) return at(p + 1);
  return std::nullopt;
}

}  // namespace qclaw
