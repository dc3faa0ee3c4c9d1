#include "qclaw/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "qclaw/errors.hpp"
#include "qclaw/rng.hpp"
#include "qclaw/triangle.hpp"

namespace qclaw {

namespace {

bool is_graph_algorithm(const std::string& a) {
  return a == "triangle" || a == "triangle-triples" || a == "classical-triangle";
}

bool is_pair_algorithm(const std::string& a) {
  return a == "claw" || a == "ordered" || a == "both-ordered" || a == "classical-claw";
}

const FunctionInstance& fn(const std::vector<Instance>& inst, std::size_t i) {
  if (i >= inst.size() || !std::holds_alternative<FunctionInstance>(inst[i]))
    throw DomainError("instance: expected a function table at position " + std::to_string(i));
  return std::get<FunctionInstance>(inst[i]);
}

const GraphInstance& graph(const std::vector<Instance>& inst) {
  if (inst.empty() || !std::holds_alternative<GraphInstance>(inst[0])) throw DomainError("instance: expected a graph");
  return std::get<GraphInstance>(inst[0]);
}

void fill(TrialRecord& t, const RunReport& r) {
  t.comparisons = r.comparisons;
  t.evaluations = double(r.ledger.evaluations);
  t.edge_queries = double(r.ledger.edge_queries);
  t.outer_rounds = r.outer_rounds;
  t.found = r.found();
  t.cost = r.comparisons;
  t.report = to_json(r);
}

void fill(TrialRecord& t, const TriangleResult& r) {
  t.edge_queries = r.edge_queries;
  t.outer_rounds = r.stages.outer_rounds;
  t.found = r.found();
  t.cost = r.edge_queries;
  t.report = to_json(r);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

nlohmann::json config_json(const ExperimentConfig& c) {
  nlohmann::json j = {{"algorithm", c.algorithm}, {"sizes", c.sizes},     {"trials", c.trials},
                      {"mode", mode_name(c.mode)}, {"seed", c.seed},       {"threads", c.threads},
                      {"format", c.format == Format::Csv ? "csv" : "json"}};
  auto opt = [&](const char* k, const std::optional<std::uint64_t>& v) {
    if (v) j[k] = *v;
  };
  opt("m", c.m);
  opt("ell", c.ell);
  opt("r", c.r);
  opt("k", c.k);
  opt("cutoff", c.cutoff);
  if (c.instance) j["instance"] = c.instance->string();
  j["schedule"] = {{"lambda", c.schedule.lambda},
                   {"cutoff_multiplier", c.schedule.cutoff_multiplier},
                   {"rng", c.schedule.rng_algorithm}};
  return j;
}

}  // namespace

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw DomainError("unknown format '" + s + "'");
}

const std::vector<std::string>& algorithm_names() {
  static const std::vector<std::string> names{"claw",     "ed",           "ordered",        "both-ordered",
                                              "triangle", "triangle-triples", "classical-ed", "classical-claw",
                                              "classical-triangle"};
  return names;
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t size, std::uint64_t trial) {
  return splitmix64(splitmix64(seed) ^ splitmix64(splitmix64(size) + trial));
}

std::vector<Instance> make_instance(const ExperimentConfig& c, std::uint64_t n, std::uint64_t seed) {
  const std::string& a = c.algorithm;
  if (a == "claw" || a == "classical-claw") {
    auto p = gen_planted_claw(n, c.m.value_or(n), seed);
    return {p.f, p.g};
  }
  if (a == "ordered" || a == "both-ordered") {
    auto p = gen_ordered_pair(n, c.m.value_or(n), true, seed);
    if (a == "both-ordered") return {p.f, p.g};
    std::vector<Value> gv(p.g.values().begin(), p.g.values().end());
    Rng rng = make_stream(seed, 0x51);
    shuffle(std::span<Value>(gv), rng);
    return {p.f, FunctionInstance(std::move(gv))};
  }
  if (a == "ed" || a == "classical-ed") {
    if (!c.k || a == "classical-ed") return {gen_planted_collision(n, seed)};
    if (*c.k == 2) return {gen_two_to_one(n, seed)};
    return {gen_k_repeated(n, *c.k, seed)};
  }
  if (is_graph_algorithm(a)) return {gen_planted_triangle(n, c.m.value_or(2 * n), seed)};
  throw DomainError("unknown algorithm '" + a + "'");
}

TrialRecord run_trial(const ExperimentConfig& c, const std::vector<Instance>& inst, std::uint64_t size,
                      std::uint64_t trial, std::uint64_t seed) {
  const std::string& a = c.algorithm;
  TrialRecord t;
  t.algorithm = a;
  t.n = size;
  t.mode = c.mode;
  t.trial = trial;
  t.seed = seed;
  Rng rng = make_stream(seed, 1);

  if (is_graph_algorithm(a)) {
    const GraphInstance& g = graph(inst);
    t.n = g.node_count();
    t.m = g.edges().size();
    t.witness_expected = count_triangles(g) > 0;
    TriangleResult r = a == "triangle"           ? find_triangle(g, c.mode, rng, c.cutoff, c.schedule)
                       : a == "triangle-triples" ? grover_all_triples(g, c.mode, rng, c.cutoff, c.schedule)
                                                 : classical_triangle(g);
    r.seed = seed;
    fill(t, r);
    return t;
  }

  const FunctionInstance& f = fn(inst, 0);
  t.n = f.size();
  RunReport r;
  if (is_pair_algorithm(a)) {
    const FunctionInstance& g = fn(inst, 1);
    t.m = g.size();
    t.witness_expected = !all_claws(f, g).empty();
    if (a == "claw") {
      r = generic_claw_finder(f, g, c.mode, rng, {c.ell, c.cutoff, c.schedule});
    } else if (a == "ordered") {
      r = ordered_claw(f, g, c.mode, rng, c.cutoff, c.schedule);
    } else if (a == "both-ordered") {
      r = both_ordered_claw(f, g, c.mode, rng, {c.cutoff, c.r, c.schedule});
    } else {
      r = classical_claw(f, g);
    }
  } else if (a == "ed" || a == "classical-ed") {
    t.m = f.size();
    t.witness_expected = !all_collisions(f).empty();
    if (a == "classical-ed") {
      r = classical_sort_ed(f);
    } else if (!c.k) {
      r = element_distinctness(f, c.mode, rng, ClawOptions{c.ell, c.cutoff, c.schedule});
    } else if (*c.k == 2) {
      r = collision_two_to_one(f, c.mode, rng, c.schedule);
    } else {
      r = collision_k_repeated(f, *c.k, c.mode, rng, c.schedule);
    }
  } else {
    throw DomainError("unknown algorithm '" + a + "'");
  }
  r.seed = seed;
  fill(t, r);
  return t;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  const auto& names = algorithm_names();
  if (std::find(names.begin(), names.end(), config.algorithm) == names.end())
    throw DomainError("unknown algorithm '" + config.algorithm + "'");
  if (config.trials == 0) throw DomainError("run_experiment: trials must be >= 1");
  if (config.out) {
    // fail before doing the work
    std::ofstream probe(*config.out, std::ios::app);
    if (!probe) throw DomainError("cannot write '" + config.out->string() + "'");
  }

  std::vector<Instance> fixed;
  std::vector<std::uint64_t> sizes = config.sizes;
  if (config.instance) {
    fixed = load_instances(*config.instance);
    if (fixed.empty()) throw DomainError("instance file holds no instances");
    sizes = {std::visit([](const auto& x) -> std::uint64_t {
      if constexpr (std::is_same_v<std::decay_t<decltype(x)>, GraphInstance>)
        return x.node_count();
      else
        return x.size();
    }, fixed[0])};
  }
  if (sizes.empty()) throw DomainError("run_experiment: no sizes");

  ExperimentResult res;
  res.config = config;
  res.trials.resize(sizes.size() * config.trials);
  std::size_t jobs = res.trials.size();
  std::size_t next = 0;
  std::mutex mu;
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      std::size_t job;
      {
        std::lock_guard lock(mu);
        if (next >= jobs || failure) return;
        job = next++;
      }
      std::uint64_t size = sizes[job / config.trials], trial = job % config.trials;
      try {
        std::uint64_t seed = trial_seed(config.seed, size, trial);
        auto inst = config.instance ? fixed : make_instance(config, size, seed);
        res.trials[job] = run_trial(config, inst, size, trial, seed);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  unsigned threads = std::max(1u, std::min<unsigned>(config.threads, unsigned(jobs)));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  for (std::size_t s = 0; s < sizes.size(); ++s) {
    std::vector<double> cost;
    double found = 0;
    for (std::uint64_t t = 0; t < config.trials; ++t) {
      const auto& tr = res.trials[s * config.trials + t];
      cost.push_back(tr.cost);
      found += tr.found;
    }
    res.summary.push_back({res.trials[s * config.trials].n, median(cost),
                           std::accumulate(cost.begin(), cost.end(), 0.0) / double(cost.size()),
                           found / double(cost.size())});
  }
  if (config.out) write_result(res, *config.out, config.format);
  return res;
}

std::string to_csv(const ExperimentResult& r) {
  std::ostringstream os;
  os.precision(12);
  os << "algorithm,n,m,mode,trial,seed,comparisons,evaluations,edge_queries,outer_rounds,found\n";
  for (const auto& t : r.trials)
    os << t.algorithm << ',' << t.n << ',' << t.m << ',' << mode_name(t.mode) << ',' << t.trial << ',' << t.seed << ','
       << t.comparisons << ',' << t.evaluations << ',' << t.edge_queries << ',' << t.outer_rounds << ','
       << (t.found ? 1 : 0) << '\n';
  return os.str();
}

nlohmann::json to_json(const ExperimentResult& r) {
  nlohmann::json trials = nlohmann::json::array(), summary = nlohmann::json::array();
  for (const auto& t : r.trials)
    trials.push_back({{"algorithm", t.algorithm},
                      {"n", t.n},
                      {"m", t.m},
                      {"mode", mode_name(t.mode)},
                      {"trial", t.trial},
                      {"seed", t.seed},
                      {"comparisons", t.comparisons},
                      {"evaluations", t.evaluations},
                      {"edge_queries", t.edge_queries},
                      {"outer_rounds", t.outer_rounds},
                      {"found", t.found},
                      {"report", t.report}});
  for (const auto& s : r.summary)
    summary.push_back({{"n", s.n}, {"median_cost", s.median_cost}, {"mean_cost", s.mean_cost}, {"found_rate", s.found_rate}});
  return {{"config", config_json(r.config)}, {"trials", trials}, {"summary", summary}};
}

void write_result(const ExperimentResult& r, const std::filesystem::path& path, Format format) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write '" + path.string() + "'");
  if (format == Format::Csv)
    out << to_csv(r);
  else
    out << to_json(r).dump(2) << '\n';
  if (!out) throw DomainError("write to '" + path.string() + "' failed");
}

FitResult fit_exponent(const std::vector<std::pair<double, double>>& points,
                       const std::function<double(double)>& normalize) {
  // two points already pin a line; the fit is exact there
  if (points.size() < 2) throw DomainError("fit_exponent: need at least 2 points");
  FitResult fr;
  for (auto [x, y] : points) {
    double d = normalize ? normalize(x) : 1.0;
    if (!(x > 0) || !(y > 0) || !(d > 0)) throw DomainError("fit_exponent: sizes and costs must be positive");
    fr.points.push_back({std::log2(x), std::log2(y / d)});
  }
  const double n = double(fr.points.size());
  double sx = 0, sy = 0;
  for (auto [x, y] : fr.points) sx += x, sy += y;
  double mx = sx / n, my = sy / n, sxx = 0, sxy = 0, syy = 0;
  for (auto [x, y] : fr.points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx <= 0) throw DegenerateError("fit_exponent: all sizes equal");
  fr.slope = sxy / sxx;
  fr.intercept = my - fr.slope * mx;
  double rss = 0;
  for (auto [x, y] : fr.points) {
    double e = y - (fr.intercept + fr.slope * x);
    rss += e * e;
  }
  fr.r_squared = syy > 0 ? std::clamp(1.0 - rss / syy, 0.0, 1.0) : 1.0;
  return fr;
}

FitResult fit_exponent(const ExperimentResult& r, const std::function<double(double)>& normalize) {
  std::vector<std::pair<double, double>> pts;
  for (const auto& s : r.summary) pts.push_back({double(s.n), s.median_cost});
  return fit_exponent(pts, normalize);
}

}  // namespace qclaw
