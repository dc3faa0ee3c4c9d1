// qclaw: run claw / collision / triangle experiments and adversary tables.
//
// exit codes: 0 ok, 2 a witness-bearing instance ended NotFound, 1 error

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qclaw/adversary.hpp"
#include "qclaw/errors.hpp"
#include "qclaw/harness.hpp"

using namespace qclaw;

namespace {

struct Flags {
  std::uint64_t n = 0;
  std::vector<std::uint64_t> sizes;
  std::optional<std::uint64_t> m, ell, r, k, cutoff;
  std::string mode = "sampled";
  std::uint64_t trials = 1;
  std::uint64_t seed = 1;
  std::string format = "csv";
  std::string out;
  std::string instance;
  unsigned threads = 1;
  bool classical = false;
  bool triples = false;
  std::string algorithm;
  std::string normalize = "none";
  std::string kind;
};

void common(CLI::App* sc, Flags& f, bool sweep) {
  if (sweep)
    sc->add_option("--sizes", f.sizes, "sizes to sweep")->delimiter(',')->required();
  else
    sc->add_option("--n", f.n, "size (N, or node count)");
  sc->add_option("--m", f.m, "second table size, or edge count");
  sc->add_option("--ell", f.ell, "subset size for the generic finder");
  sc->add_option("--r", f.r, "top-level block size (both-ordered)");
  sc->add_option("--k", f.k, "ed: 2 for 2-to-1, >2 for k-repeated");
  sc->add_option("--mode", f.mode, "sampled|analytic")->check(CLI::IsMember({"sampled", "analytic"}));
  sc->add_option("--trials", f.trials, "trials per size");
  sc->add_option("--seed", f.seed, "master seed");
  sc->add_option("--cutoff", f.cutoff, "cutoff override");
  sc->add_option("--format", f.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  sc->add_option("--out", f.out, "output path (default stdout)");
  sc->add_option("--instance", f.instance, "instance JSON file");
  sc->add_option("--threads", f.threads, "worker threads");
}

ExperimentConfig to_config(const Flags& f, const std::string& algorithm) {
  ExperimentConfig c;
  c.algorithm = algorithm;
  if (!f.sizes.empty())
    c.sizes = f.sizes;
  else if (f.n)
    c.sizes = {f.n};
  else if (f.instance.empty())
    throw DomainError("--n is required without --instance");
  c.trials = f.trials;
  c.mode = parse_mode(f.mode);
  c.seed = f.seed;
  c.m = f.m;
  c.ell = f.ell;
  c.r = f.r;
  c.k = f.k;
  c.cutoff = f.cutoff;
  c.format = parse_format(f.format);
  if (!f.instance.empty()) c.instance = f.instance;
  c.threads = f.threads;
  return c;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out || !(out << text)) throw DomainError("cannot write '" + path + "'");
}

int run_single(const Flags& f, const std::string& algorithm) {
  ExperimentConfig c = to_config(f, algorithm);
  ExperimentResult r = run_experiment(c);
  emit(c.format == Format::Csv ? to_csv(r) : to_json(r).dump(2) + "\n", f.out);
  for (const auto& t : r.trials)
    if (t.witness_expected && !t.found) return 2;
  return 0;
}

int run_scale(const Flags& f) {
  ExperimentConfig c = to_config(f, f.algorithm);
  ExperimentResult r = run_experiment(c);
  std::function<double(double)> norm;
  if (f.normalize == "log2") norm = [](double n) { return std::log2(n); };
  FitResult fit;
  bool fitted = r.summary.size() >= 2;
  if (fitted) fit = fit_exponent(r, norm);
  if (c.format == Format::Json) {
    auto j = to_json(r);
    if (fitted) {
      j["fit"] = {{"slope", fit.slope}, {"intercept", fit.intercept}, {"r_squared", fit.r_squared},
                  {"normalize", f.normalize}, {"points", fit.points}};
    }
    emit(j.dump(2) + "\n", f.out);
  } else {
    emit(to_csv(r), f.out);
    if (fitted)
      std::cerr << "fit: slope=" << fit.slope << " intercept=" << fit.intercept << " r2=" << fit.r_squared
                << " normalize=" << f.normalize << '\n';
  }
  return 0;
}

int run_adversary(const Flags& f) {
  ProblemKind kind = parse_problem_kind(f.kind);
  std::vector<unsigned> sizes;
  for (auto s : f.sizes) sizes.push_back(unsigned(s));
  if (sizes.empty() && f.n) sizes.push_back(unsigned(f.n));
  if (sizes.empty()) throw DomainError("adversary: give --n or --sizes");
  auto rows = scaling_check(kind, sizes);
  if (f.format == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (auto& r : rows) j.push_back(to_json(kind, r));
    emit(j.dump(2) + "\n", f.out);
  } else {
    emit(scaling_csv(kind, rows), f.out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qclaw: comparison-model claw, collision and triangle experiments"};
  app.require_subcommand(1);
  Flags f;

  auto* claw = app.add_subcommand("claw", "generic claw finder on a planted instance");
  common(claw, f, false);
  claw->add_flag("--classical", f.classical, "sort-and-search baseline");
  auto* ed = app.add_subcommand("ed", "element distinctness / collision finding");
  common(ed, f, false);
  ed->add_flag("--classical", f.classical, "sort baseline");
  auto* ordered = app.add_subcommand("ordered", "claw with f ordered");
  common(ordered, f, false);
  auto* both = app.add_subcommand("both-ordered", "claw with both tables ordered");
  common(both, f, false);
  auto* tri = app.add_subcommand("triangle", "triangle finding");
  common(tri, f, false);
  tri->add_flag("--classical", f.classical, "query every pair");
  tri->add_flag("--triples", f.triples, "search over all triples");
  auto* adv = app.add_subcommand("adversary", "exhaustive relation parameters");
  adv->add_option("--kind", f.kind, "parity-collision|no-collision|no-range")->required();
  adv->add_option("--n", f.n, "N");
  adv->add_option("--sizes", f.sizes, "several N")->delimiter(',');
  adv->add_option("--format", f.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
  adv->add_option("--out", f.out, "output path");
  auto* scale = app.add_subcommand("scale", "sweep sizes and fit the exponent");
  common(scale, f, true);
  scale->add_option("--algorithm", f.algorithm, "algorithm name")->required();
  scale->add_option("--normalize", f.normalize, "none|log2")->check(CLI::IsMember({"none", "log2"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*claw) return run_single(f, f.classical ? "classical-claw" : "claw");
    if (*ed) return run_single(f, f.classical ? "classical-ed" : "ed");
    if (*ordered) return run_single(f, "ordered");
    if (*both) return run_single(f, "both-ordered");
    if (*tri) return run_single(f, f.classical ? "classical-triangle" : f.triples ? "triangle-triples" : "triangle");
    if (*adv) return run_adversary(f);
    if (*scale) return run_scale(f);
  } catch (const std::exception& e) {
    std::cerr << "qclaw: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
