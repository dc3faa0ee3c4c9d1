#include "qclaw/claw.hpp"
#include "qclaw/errors.hpp"

namespace qclaw {

const char* mode_name(Mode m) { return m == Mode::Sampled ? "sampled" : "analytic"; }

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::ClawFound: return "ClawFound";
    case Verdict::CollisionFound: return "CollisionFound";
    case Verdict::Distinct: return "Distinct";
    case Verdict::NotFound: return "NotFound";
  }
  return "?";
}

Mode parse_mode(const std::string& s) {
  if (s == "sampled") return Mode::Sampled;
  if (s == "analytic") return Mode::Analytic;
  throw DomainError("unknown mode '" + s + "' (expected sampled or analytic)");
}

nlohmann::json to_json(const RunReport& r) {
  nlohmann::json j;
  j["algorithm"] = r.algorithm;
  j["mode"] = mode_name(r.mode);
  j["verdict"] = verdict_name(r.verdict);
  if (r.witness) j["witness"] = {r.witness->x, r.witness->y};
  else j["witness"] = nullptr;
  j["comparisons"] = r.comparisons;
  j["outer_rounds"] = r.outer_rounds;
  j["success_probability"] = r.success_probability;
  j["ledger"] = {{"comparisons", r.ledger.comparisons},
                 {"evaluations", r.ledger.evaluations},
                 {"edge_queries", r.ledger.edge_queries}};
  j["params"] = r.params;
  j["schedule"] = {{"lambda", r.schedule.lambda},
                   {"cutoff_multiplier", r.schedule.cutoff_multiplier},
                   {"rng", r.schedule.rng_algorithm}};
  if (r.seed) j["seed"] = *r.seed;
  return j;
}

}  // namespace qclaw
