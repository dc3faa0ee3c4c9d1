#include "qclaw/claw.hpp"
#include "qclaw/sorted_access.hpp"

namespace qclaw {

RunReport classical_sort_ed(const FunctionInstance& f) {
  RunReport r;
  r.algorithm = "classical_sort_ed";
  ComparisonOracle oracle(f, f, r.ledger);
  std::vector<Index> all(f.size());
  for (Index x = 1; x <= f.size(); ++x) all[x - 1] = x;
  SortedSide s(oracle, Side::F, std::move(all));
  r.verdict = Verdict::Distinct;
  // sorted neighbours satisfy s_i <= s_{i+1}; the reverse test is equality
  for (Index p = 1; p < s.size(); ++p) {
    if (oracle.leq(Side::F, s.at(p + 1), Side::F, s.at(p))) {
      Index a = s.at(p), b = s.at(p + 1);
      r.witness = ClawPair{std::min(a, b), std::max(a, b)};
      r.verdict = Verdict::CollisionFound;
      break;
    }
  }
  r.comparisons = double(r.ledger.comparisons);
  r.success_probability = r.witness ? 1.0 : 0.0;
  return r;
}

RunReport classical_claw(const FunctionInstance& f, const FunctionInstance& g) {
  RunReport r;
  r.algorithm = "classical_claw";
  ComparisonOracle oracle(f, g, r.ledger);
  std::vector<Index> all(f.size());
  for (Index x = 1; x <= f.size(); ++x) all[x - 1] = x;
  SortedSide s(oracle, Side::F, std::move(all));
  r.verdict = Verdict::NotFound;
  for (Index y = 1; y <= g.size(); ++y) {
    if (auto x = s.find_equal(Side::G, y)) {
      r.witness = ClawPair{*x, y};
      r.verdict = Verdict::ClawFound;
      break;
    }
  }
  r.comparisons = double(r.ledger.comparisons);
  r.success_probability = r.witness ? 1.0 : 0.0;
  return r;
}

}  // namespace qclaw
