#pragma once

// Exhaustive Ambainis-relation parameters for small evaluation-model problems.
//
// Functions [N] -> [N] with N <= 8 are packed four bits per point:
// f(x) = ((code >> 4(x-1)) & 15) + 1.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

namespace qclaw {

enum class ProblemKind { ParityCollision, NoCollision, NoRange };

const char* problem_kind_name(ProblemKind k);
ProblemKind parse_problem_kind(const std::string& s);

using PackedFunction = std::uint32_t;

inline constexpr unsigned kMaxAdversaryN = 8;

PackedFunction pack_function(std::span<const int> values);
std::vector<int> unpack_function(PackedFunction f, unsigned n);

// |{(x,y) : x < y, f(x) = f(y)}|
std::uint64_t count_collisions(std::span<const int> f);

enum class Enumeration { Auto, Filter, Constructive };

struct ProblemFamily {
  ProblemKind kind;
  unsigned n;
  std::vector<PackedFunction> a;  // lexicographic order
  std::vector<PackedFunction> b;  // equals a for the symmetric kinds
  bool symmetric = false;
};

// Filter: every function of [N]^N, tested against the membership predicate.
// Constructive: depth-first generation of exactly the members (pruned on
// preimage and pair counts). Auto picks Filter while N^N <= 10^6.
ProblemFamily enumerate_family(ProblemKind kind, unsigned n, Enumeration how = Enumeration::Auto);

bool is_member(ProblemKind kind, bool b_side, std::span<const int> f);
// Parity of |C_f|; the lone domain element; the value missing from the range.
int phi(ProblemKind kind, std::span<const int> f);

struct RelationParams {
  std::uint64_t m = 0, m_prime = 0, l = 0, l_prime = 0;
  std::uint64_t relation_size = 0;
  double bound = 0.0;
};

RelationParams relation_params(const ProblemFamily& family);
double ambainis_bound(const RelationParams& p);

struct ScalingRow {
  unsigned n;
  std::uint64_t a_size, b_size;
  RelationParams params;
};

std::vector<ScalingRow> scaling_check(ProblemKind kind, std::span<const unsigned> sizes);

nlohmann::json to_json(ProblemKind kind, const ScalingRow& row);
std::string scaling_csv(ProblemKind kind, std::span<const ScalingRow> rows);

}  // namespace qclaw
