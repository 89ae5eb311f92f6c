// Benchmark front end: load or generate a problem, run one of the seven
// solvers under a unit budget, and emit a CSV trace. The `compare` subcommand
// runs several parameter sets on a shared problem/budget and emits one metric
// column per run.
//
// Exit codes: 0 success/help, 2 bad flags, 3 problem-file errors, 4 runtime.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "bap/harness.hpp"
#include "bap/problem.hpp"
#include "bap/solvers.hpp"

namespace {

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": expected a number, got '" + s + "'");
  }
}

long long parse_int(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    long long v = std::stoll(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": expected an integer, got '" + s +
                                "'");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  while (true) {
    std::size_t end = s.find(sep, begin);
    if (end == std::string::npos) {
      out.push_back(s.substr(begin));
      return out;
    }
    out.push_back(s.substr(begin, end - begin));
    begin = end + 1;
  }
}

bap::Algorithm algo_from(const std::string& s) {
  if (s == "acj") return bap::Algorithm::acj;
  if (s == "dr") return bap::Algorithm::dr;
  if (s == "dpg") return bap::Algorithm::dpg;
  if (s == "fdpg") return bap::Algorithm::fdpg;
  if (s == "pda") return bap::Algorithm::pda;
  if (s == "accpda") return bap::Algorithm::accpda;
  if (s == "ssd") return bap::Algorithm::ssd;
  throw std::invalid_argument("unknown algorithm: " + s);
}

const char* algo_name(bap::Algorithm a) {
  switch (a) {
    case bap::Algorithm::acj: return "acj";
    case bap::Algorithm::dr: return "dr";
    case bap::Algorithm::dpg: return "dpg";
    case bap::Algorithm::fdpg: return "fdpg";
    case bap::Algorithm::pda: return "pda";
    case bap::Algorithm::accpda: return "accpda";
    case bap::Algorithm::ssd: return "ssd";
  }
  return "?";
}

// `const:R` fixes eta_k = R; `sqrt` selects eta_k = 1/sqrt(k+1).
void apply_eta(const std::string& s, bap::SolverConfig& cfg) {
  if (s == "sqrt") {
    cfg.step_schedule = bap::EtaSchedule::inv_sqrt;
    cfg.eta_c = 1.0;
    return;
  }
  if (s.rfind("const:", 0) == 0) {
    cfg.step_schedule = bap::EtaSchedule::constant;
    cfg.eta_c = parse_double(s.substr(6), "--eta const");
    if (cfg.eta_c <= 0.0)
      throw std::invalid_argument("--eta const: scale must be > 0");
    return;
  }
  throw std::invalid_argument("--eta expects const:R or sqrt, got '" + s + "'");
}

std::vector<std::pair<std::size_t, std::size_t>> parse_pairs(
    const std::string& s, char sep) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& item : split(s, sep)) {
    auto parts = split(item, ':');
    if (parts.size() != 2)
      throw std::invalid_argument("pair list: expected i:j, got '" + item +
                                  "'");
    long long i = parse_int(parts[0], "pair list");
    long long j = parse_int(parts[1], "pair list");
    if (i < 0 || j < 0)
      throw std::invalid_argument("pair list: indices must be >= 0");
    out.emplace_back(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }
  return out;
}

struct ProblemOpts {
  std::string path;
  std::string builtin;
  long long n = 100;
};

bap::Problem resolve_problem(const ProblemOpts& o) {
  if (!o.path.empty()) return bap::load_problem(o.path);
  if (o.builtin == "toy") return bap::builtin_toy();
  if (o.builtin == "boxes") {
    if (o.n < 1) throw std::invalid_argument("--n must be >= 1");
    return bap::builtin_boxes(static_cast<std::size_t>(o.n));
  }
  throw std::invalid_argument("one of --problem or --builtin is required");
}

// Accepts n values (x = y = v) or 2n values (x then y).
bap::Pair resolve_start(const std::string& s, std::size_t dim) {
  if (s.empty()) return bap::zero_pair(dim);
  std::vector<double> vals;
  for (const auto& item : split(s, ','))
    vals.push_back(parse_double(item, "--start"));
  bap::Pair z = bap::zero_pair(dim);
  if (vals.size() == dim) {
    for (std::size_t j = 0; j < dim; ++j) z.x[j] = z.y[j] = vals[j];
  } else if (vals.size() == 2 * dim) {
    for (std::size_t j = 0; j < dim; ++j) {
      z.x[j] = vals[j];
      z.y[j] = vals[dim + j];
    }
  } else {
    throw std::invalid_argument(
        "--start: expected " + std::to_string(dim) + " or " +
        std::to_string(2 * dim) + " comma-separated values");
  }
  return z;
}

struct MetricOpts {
  std::string name = "known";
  double delta = 0.1;
};

bap::Metric resolve_metric(const MetricOpts& o, const bap::Problem& p) {
  if (o.name == "known") return bap::make_known_metric(p);
  return bap::make_ddelta_metric(p, o.delta);
}

struct RunSpec {
  std::string label;
  bap::SolverConfig cfg;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

// Comma-separated key=value list; the `pair` value joins i:j items with `+`.
RunSpec parse_run_spec(const std::string& s) {
  RunSpec spec;
  bool has_algorithm = false;
  for (const auto& token : split(s, ',')) {
    std::size_t eq = token.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--run: expected key=value, got '" + token +
                                  "'");
    std::string key = token.substr(0, eq);
    std::string value = token.substr(eq + 1);
    if (key == "algorithm") {
      spec.cfg.algorithm = algo_from(value);
      has_algorithm = true;
    } else if (key == "label") {
      spec.label = value;
    } else if (key == "alpha") {
      spec.cfg.alpha = parse_double(value, "--run alpha");
    } else if (key == "p") {
      spec.cfg.p = static_cast<int>(parse_int(value, "--run p"));
    } else if (key == "lambda") {
      spec.cfg.lambda_relax = parse_double(value, "--run lambda");
    } else if (key == "epsilon") {
      spec.cfg.epsilon = parse_double(value, "--run epsilon");
    } else if (key == "Ldual") {
      spec.cfg.L_dual = parse_double(value, "--run Ldual");
    } else if (key == "rho0") {
      spec.cfg.rho0 = parse_double(value, "--run rho0");
    } else if (key == "rhomax") {
      spec.cfg.rho_max = parse_double(value, "--run rhomax");
    } else if (key == "L") {
      spec.cfg.L_penalty = parse_double(value, "--run L");
    } else if (key == "eta") {
      apply_eta(value, spec.cfg);
    } else if (key == "seed") {
      spec.cfg.seed =
          static_cast<std::uint64_t>(parse_int(value, "--run seed"));
    } else if (key == "pair") {
      spec.pairs = parse_pairs(value, '+');
    } else {
      throw std::invalid_argument("--run: unknown key '" + key + "'");
    }
  }
  if (!has_algorithm)
    throw std::invalid_argument("--run: algorithm=... is required");
  if (spec.label.empty()) spec.label = algo_name(spec.cfg.algorithm);
  return spec;
}

void report(std::ostream& err, const std::string& label,
            const bap::RunResult& r) {
  err << label << ": iterations=" << r.iterations
      << " consumed=" << r.consumed << "/" << r.total_units
      << " remainder=" << r.remainder() << " final_metric=" << r.final_metric
      << "\n";
}

struct OutputTarget {
  std::ofstream file;
  std::ostream* os = &std::cout;

  explicit OutputTarget(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    os = &file;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Best-approximation benchmark: first-order solvers for closest pairs "
      "between two intersections of convex sets"};
  app.require_subcommand(0, 1);

  ProblemOpts prob;
  MetricOpts metric;
  bap::SolverConfig cfg;
  std::string algorithm, eta, start, pair_list, out_path;
  long long budget = 1800, sample_every = 1;

  auto add_problem_flags = [&](CLI::App* a) {
    auto* po = a->add_option("--problem", prob.path, "Problem JSON file");
    auto* bo = a->add_option("--builtin", prob.builtin, "Generated problem")
                   ->check(CLI::IsMember({"toy", "boxes"}));
    a->add_option("--n", prob.n, "Size of the generated boxes problem");
    po->excludes(bo);
    bo->excludes(po);
  };
  auto add_shared_flags = [&](CLI::App* a) {
    a->add_option("--budget", budget, "Total unit-operation budget");
    a->add_option("--sample-every", sample_every,
                  "Record the metric every this many units");
    a->add_option("--metric", metric.name, "Progress metric")
        ->check(CLI::IsMember({"known", "ddelta"}));
    a->add_option("--delta", metric.delta, "Feasibility weight for ddelta");
    a->add_option("--start", start,
                  "Start coordinates: n values (x=y) or 2n values (x then y)");
    a->add_option("--out", out_path, "Output CSV path (default stdout)");
  };

  add_problem_flags(&app);
  add_shared_flags(&app);
  app.add_option("--algorithm", algorithm, "Solver to run")
      ->check(CLI::IsMember(
          {"acj", "dr", "dpg", "fdpg", "pda", "accpda", "ssd"}));
  app.add_option("--alpha", cfg.alpha, "Coupling weight");
  app.add_option("--p", cfg.p, "Coupling exponent (DR)")
      ->check(CLI::IsMember({1, 2}));
  app.add_option("--lambda", cfg.lambda_relax, "Relaxation (DR)");
  app.add_option("--epsilon", cfg.epsilon, "Perturbation (DPG/FDPG)");
  app.add_option("--Ldual", cfg.L_dual,
                 "Dual step constant (DPG/FDPG); <=0 selects m/epsilon");
  app.add_option("--rho0", cfg.rho0, "Initial penalty (PDA/accPDA)");
  app.add_option("--rhomax", cfg.rho_max, "Penalty cap (PDA/accPDA)");
  app.add_option("--L", cfg.L_penalty, "Distance-penalty weight (SSD)");
  app.add_option("--eta", eta, "SSD step size: const:R or sqrt");
  app.add_option("--seed", cfg.seed, "Sampling seed (SSD)");
  app.add_option("--pair", pair_list,
                 "Fuse halfspace constraints pairwise, e.g. 0:2,1:3");

  auto* cmp = app.add_subcommand(
      "compare", "Run several configurations on a shared problem and budget");
  std::vector<std::string> run_strings;
  add_problem_flags(cmp);
  add_shared_flags(cmp);
  cmp->add_option("--run", run_strings,
                  "Run spec: algorithm=NAME[,key=value...]; keys: label, "
                  "alpha, p, lambda, epsilon, Ldual, rho0, rhomax, L, eta, "
                  "seed, pair (i:j joined with +)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    bap::Problem base = resolve_problem(prob);
    bap::Pair z0 = resolve_start(start, base.dimension);
    bap::BudgetPolicy policy{budget, sample_every};
    OutputTarget target(out_path);

    if (cmp->parsed()) {
      std::vector<RunSpec> specs;
      for (const auto& s : run_strings) specs.push_back(parse_run_spec(s));
      std::vector<std::string> labels;
      for (auto& s : specs) {
        // Keep duplicate default labels distinguishable in the header.
        int copies = 1;
        std::string label = s.label;
        while (std::find(labels.begin(), labels.end(), label) != labels.end())
          label = s.label + "#" + std::to_string(++copies);
        labels.push_back(label);
      }
      std::vector<bap::RunResult> results;
      for (std::size_t i = 0; i < specs.size(); ++i) {
        bap::Problem p = specs[i].pairs.empty()
                             ? base
                             : bap::apply_pairing(base, specs[i].pairs);
        auto solver =
            bap::make_solver(p, specs[i].cfg, z0, bap::Exec::openmp);
        results.push_back(
            bap::run(*solver, policy, resolve_metric(metric, p)));
        report(std::cerr, labels[i], results.back());
      }
      bap::write_compare_csv(*target.os, labels, results, sample_every);
      return 0;
    }

    if (algorithm.empty())
      throw std::invalid_argument("--algorithm is required");
    cfg.algorithm = algo_from(algorithm);
    if (!eta.empty()) apply_eta(eta, cfg);
    bap::Problem p = pair_list.empty()
                         ? base
                         : bap::apply_pairing(base, parse_pairs(pair_list, ','));
    auto solver = bap::make_solver(p, cfg, z0, bap::Exec::openmp);
    bap::RunResult r = bap::run(*solver, policy, resolve_metric(metric, p));
    report(std::cerr, algo_name(cfg.algorithm), r);
    bap::write_trace_csv(*target.os, r);
    return 0;
  } catch (const bap::problem_error& e) {
    std::cerr << "problem error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid arguments: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 4;
  }
}
