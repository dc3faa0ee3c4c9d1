#pragma once

// Comparison-metered sorting and fixed-schedule search.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qclaw/oracle.hpp"

namespace qclaw {

// Stable top-down mergesort of `items`; leq(a, b) must be a metered [key(a) <= key(b)].
std::vector<Index> metered_mergesort(std::vector<Index> items, const std::function<bool(Index, Index)>& leq);

// Worst-case comparison count of metered_mergesort on n items:
// n*ceil(log2 n) - 2^ceil(log2 n) + 1.
std::uint64_t mergesort_worst_case(std::uint64_t n);

// ceil(log2(n+1)), the fixed probe count of lower_bound_fixed.
std::uint64_t search_depth(std::uint64_t n);

// Leftmost position p in [1, n+1] with v <= s_p over a sorted table of n
// entries. probe(pos) must return [v <= s_pos] for pos in [1, n]. The
// schedule is oblivious: exactly search_depth(n) probes over a virtual table
// of 2^depth - 1 entries, positions past n being +inf. Probes of virtual
// positions still go out, against position n, and their answer is ignored.
std::uint64_t lower_bound_fixed(std::uint64_t n, const std::function<bool(std::uint64_t)>& probe);

// A side's index set sorted by value.
class SortedSide {
 public:
  SortedSide(ComparisonOracle& oracle, Side side, std::vector<Index> items);
  // Items already in value order (an ordered table); no comparisons.
  static SortedSide presorted(ComparisonOracle& oracle, Side side, std::vector<Index> items);

  Side side() const { return side_; }
  std::uint64_t size() const { return sorted_.size(); }
  Index at(std::uint64_t pos) const { return sorted_[pos - 1]; }  // 1-based
  const std::vector<Index>& items() const { return sorted_; }

  // Fixed cost search_depth(n) + 1: is some s in the set with value equal to (other, y)?
  std::optional<Index> find_equal(Side other, Index y) const;
  // Fixed cost search_depth(n) + 2, same side as the set: equal value at a different index.
  std::optional<Index> find_partner(Index y) const;

  std::uint64_t claw_cost() const { return search_depth(size()) + 1; }
  std::uint64_t partner_cost() const { return search_depth(size()) + 2; }

 private:
  SortedSide() = default;
  std::uint64_t lower(Side other, Index y) const;

  ComparisonOracle* oracle_ = nullptr;
  Side side_ = Side::F;
  std::vector<Index> sorted_;
};

}  // namespace qclaw
