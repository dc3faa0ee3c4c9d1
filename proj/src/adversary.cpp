#include "qclaw/adversary.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <thread>

#include "qclaw/errors.hpp"

namespace qclaw {

namespace {

using Counts = std::array<int, kMaxAdversaryN + 1>;

int at(PackedFunction f, unsigned x) { return int((f >> (4 * (x - 1))) & 15u) + 1; }

PackedFunction with(PackedFunction f, unsigned x, int v) {
  unsigned s = 4 * (x - 1);
  return (f & ~(PackedFunction{15} << s)) | (PackedFunction(v - 1) << s);
}

std::size_t dense_index(PackedFunction f, unsigned n) {
  std::size_t i = 0;
  for (unsigned x = 0; x < n; ++x) i |= std::size_t((f >> (4 * x)) & 7u) << (3 * x);
  return i;
}

void check_n(ProblemKind kind, unsigned n) {
  if (n < 2 || n > kMaxAdversaryN) throw DomainError("enumerate_family: need 2 <= N <= 8");
  if (kind == ProblemKind::ParityCollision && n % 4 != 0) throw DomainError("ParityCollision needs 4 | N");
  if (kind == ProblemKind::NoCollision && n % 2 == 0) throw DomainError("NoCollision needs N odd");
  if (kind == ProblemKind::NoRange && n < 3) throw DomainError("NoRange needs N >= 3");
}

std::uint64_t target_pairs(ProblemKind kind, bool b_side, unsigned n) {
  switch (kind) {
    case ProblemKind::ParityCollision: return n / 4 + (b_side ? 1 : 0);
    case ProblemKind::NoCollision: return (n - 1) / 2;
    case ProblemKind::NoRange: return 1;
  }
  return 0;
}

struct Dfs {
  unsigned n;
  std::uint64_t pairs;
  bool pin12;  // f(1) = f(2) required
  std::vector<PackedFunction>* out;
  std::vector<int> f;
  Counts cnt{};

  void go(unsigned x, std::uint64_t made) {
    if (x > n) {
      if (made == pairs) out->push_back(pack_function(f));
      return;
    }
    for (int v = 1; v <= int(n); ++v) {
      if (cnt[v] >= 2) continue;
      std::uint64_t nm = made + std::uint64_t(cnt[v]);
      if (nm > pairs) continue;
      if (pin12 && x == 2 && v != f[0]) continue;
      if (pin12 && x > 2 && cnt[v] > 0) continue;
      // each later point adds at most one pair
      if (nm + (n - x) < pairs) continue;
      f[x - 1] = v;
      ++cnt[v];
      go(x + 1, nm);
      --cnt[v];
    }
  }
};

std::vector<PackedFunction> construct(ProblemKind kind, bool b_side, unsigned n) {
  std::vector<PackedFunction> out;
  Dfs d{n, target_pairs(kind, b_side, n), kind == ProblemKind::NoRange, &out, std::vector<int>(n), {}};
  d.go(1, 0);
  return out;
}

std::vector<PackedFunction> filter(ProblemKind kind, bool b_side, unsigned n) {
  std::vector<PackedFunction> out;
  std::vector<int> f(n, 1);
  for (;;) {
    if (is_member(kind, b_side, f)) out.push_back(pack_function(f));
    // odometer, last point fastest, matching the DFS order
    int x = int(n) - 1;
    while (x >= 0 && f[x] == int(n)) f[x--] = 1;
    if (x < 0) break;
    ++f[x];
  }
  return out;
}

struct Side {
  std::uint64_t min_degree = UINT64_MAX;
  std::uint64_t max_point = 0;
  std::uint64_t edges = 0;
};

// Walk every member's distance-1 moves into the other family.
Side scan_range(const ProblemFamily& fam, bool from_b, const std::vector<bool>& dst, std::size_t lo, std::size_t hi) {
  const auto& all = from_b ? fam.b : fam.a;
  std::span<const PackedFunction> src(all.data() + lo, hi - lo);
  const unsigned n = fam.n;
  const std::uint64_t want = target_pairs(fam.kind, !from_b, n);
  Side s;
  std::vector<int> f(n), g(n);
  for (PackedFunction code : src) {
    Counts cnt{};
    std::uint64_t pairs = 0;
    for (unsigned x = 1; x <= n; ++x) {
      f[x - 1] = at(code, x);
      pairs += std::uint64_t(cnt[f[x - 1]]++);
    }
    int pf = phi(fam.kind, f);
    std::uint64_t degree = 0;
    for (unsigned x = 1; x <= n; ++x) {
      int old = f[x - 1];
      std::uint64_t at_x = 0;
      for (int v = 1; v <= int(n); ++v) {
        if (v == old || cnt[v] >= 2) continue;
        std::uint64_t np = pairs - std::uint64_t(cnt[old] - 1) + std::uint64_t(cnt[v]);
        if (np != want) continue;
        g = f;
        g[x - 1] = v;
        if (fam.kind == ProblemKind::NoRange && g[0] != g[1]) continue;
        if (phi(fam.kind, g) == pf) continue;
        if (!dst[dense_index(with(code, x, v), n)]) continue;
        ++at_x;
      }
      degree += at_x;
      s.max_point = std::max(s.max_point, at_x);
    }
    s.min_degree = std::min(s.min_degree, degree);
    s.edges += degree;
  }
  return s;
}

Side scan(const ProblemFamily& fam, bool from_b) {
  // membership bitmap on a 3-bit-per-point recoding, 2^24 bits at N = 8
  std::vector<bool> dst(std::size_t{1} << (3 * fam.n));
  for (PackedFunction c : from_b ? fam.a : fam.b) dst[dense_index(c, fam.n)] = true;
  const std::size_t total = (from_b ? fam.b : fam.a).size();
  unsigned workers = total < 100000 ? 1u : std::max(1u, std::min(16u, std::thread::hardware_concurrency()));
  std::vector<Side> parts(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] { parts[w] = scan_range(fam, from_b, dst, total * w / workers, total * (w + 1) / workers); });
  for (auto& t : pool) t.join();
  Side s;
  for (auto& p : parts) {
    s.edges += p.edges;
    s.max_point = std::max(s.max_point, p.max_point);
    s.min_degree = std::min(s.min_degree, p.min_degree);
  }
  if (total == 0) s.min_degree = 0;
  return s;
}

}  // namespace

const char* problem_kind_name(ProblemKind k) {
  switch (k) {
    case ProblemKind::ParityCollision: return "parity-collision";
    case ProblemKind::NoCollision: return "no-collision";
    case ProblemKind::NoRange: return "no-range";
  }
  return "?";
}

ProblemKind parse_problem_kind(const std::string& s) {
  if (s == "parity-collision" || s == "parity") return ProblemKind::ParityCollision;
  if (s == "no-collision") return ProblemKind::NoCollision;
  if (s == "no-range") return ProblemKind::NoRange;
  throw DomainError("unknown problem kind '" + s + "'");
}

PackedFunction pack_function(std::span<const int> values) {
  if (values.size() > kMaxAdversaryN) throw DomainError("pack_function: N > 8");
  PackedFunction f = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] < 1 || values[i] > int(values.size())) throw DomainError("pack_function: value outside [N]");
    f |= PackedFunction(values[i] - 1) << (4 * i);
  }
  return f;
}

std::vector<int> unpack_function(PackedFunction f, unsigned n) {
  std::vector<int> v(n);
  for (unsigned x = 1; x <= n; ++x) v[x - 1] = at(f, x);
  return v;
}

std::uint64_t count_collisions(std::span<const int> f) {
  std::uint64_t c = 0;
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = i + 1; j < f.size(); ++j) c += f[i] == f[j];
  return c;
}

bool is_member(ProblemKind kind, bool b_side, std::span<const int> f) {
  const unsigned n = unsigned(f.size());
  Counts cnt{};
  for (int v : f) {
    if (v < 1 || v > int(n)) return false;
    if (++cnt[v] > 2) return false;
  }
  if (count_collisions(f) != target_pairs(kind, b_side, n)) return false;
  if (kind == ProblemKind::NoRange) return f[0] == f[1];
  return true;
}

int phi(ProblemKind kind, std::span<const int> f) {
  const int n = int(f.size());
  switch (kind) {
    case ProblemKind::ParityCollision: return int(count_collisions(f) % 2);
    case ProblemKind::NoCollision: {
      Counts cnt{};
      for (int v : f) ++cnt[v];
      for (int x = 0; x < n; ++x)
        if (cnt[f[x]] == 1) return x + 1;
      return 0;
    }
    case ProblemKind::NoRange: {
      Counts cnt{};
      for (int v : f) ++cnt[v];
      for (int v = 1; v <= n; ++v)
        if (cnt[v] == 0) return v;
      return 0;
    }
  }
  return 0;
}

ProblemFamily enumerate_family(ProblemKind kind, unsigned n, Enumeration how) {
  check_n(kind, n);
  if (how == Enumeration::Auto) how = std::pow(double(n), double(n)) <= 1e6 ? Enumeration::Filter : Enumeration::Constructive;
  auto make = how == Enumeration::Filter ? filter : construct;
  ProblemFamily fam{kind, n, make(kind, false, n), {}, kind != ProblemKind::ParityCollision};
  fam.b = fam.symmetric ? fam.a : make(kind, true, n);
  return fam;
}

RelationParams relation_params(const ProblemFamily& family) {
  Side a = scan(family, false);
  Side b = family.symmetric ? a : scan(family, true);
  if (a.edges != b.edges) throw std::logic_error("relation_params: |R| differs between the two sides");
  if (a.edges == 0) throw DegenerateError("relation_params: empty relation");
  RelationParams p;
  p.m = a.min_degree;
  p.m_prime = b.min_degree;
  p.l = a.max_point;
  p.l_prime = b.max_point;
  p.relation_size = a.edges;
  p.bound = ambainis_bound(p);
  return p;
}

double ambainis_bound(const RelationParams& p) {
  if (p.m == 0 || p.m_prime == 0 || p.l == 0 || p.l_prime == 0)
    throw DegenerateError("ambainis_bound: all parameters must be positive");
  return std::sqrt(double(p.m) * double(p.m_prime) / (double(p.l) * double(p.l_prime)));
}

std::vector<ScalingRow> scaling_check(ProblemKind kind, std::span<const unsigned> sizes) {
  std::vector<ScalingRow> rows;
  for (unsigned n : sizes) {
    ProblemFamily fam = enumerate_family(kind, n);
    rows.push_back({n, fam.a.size(), fam.b.size(), relation_params(fam)});
  }
  return rows;
}

nlohmann::json to_json(ProblemKind kind, const ScalingRow& row) {
  return {{"kind", problem_kind_name(kind)}, {"n", row.n},
          {"a_size", row.a_size},           {"b_size", row.b_size},
          {"relation_size", row.params.relation_size},
          {"m", row.params.m},              {"m_prime", row.params.m_prime},
          {"l", row.params.l},              {"l_prime", row.params.l_prime},
          {"bound", row.params.bound}};
}

std::string scaling_csv(ProblemKind kind, std::span<const ScalingRow> rows) {
  std::ostringstream os;
  os << "kind,n,a_size,b_size,relation_size,m,m_prime,l,l_prime,bound\n";
  os.precision(10);
  for (auto& r : rows)
    os << problem_kind_name(kind) << ',' << r.n << ',' << r.a_size << ',' << r.b_size << ',' << r.params.relation_size
       << ',' << r.params.m << ',' << r.params.m_prime << ',' << r.params.l << ',' << r.params.l_prime << ','
       << r.params.bound << '\n';
  return os.str();
}

}  // namespace qclaw
