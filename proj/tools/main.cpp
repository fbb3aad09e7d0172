#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bvp4/acceptance.hpp"
#include "bvp4/config.hpp"
#include "bvp4/errors.hpp"
#include "bvp4/hypotheses.hpp"
#include "bvp4/kernel.hpp"
#include "bvp4/nystrom.hpp"
#include "bvp4/report.hpp"
#include "bvp4/shooting.hpp"

#ifndef BVP4_FIXTURE_DIR
#define BVP4_FIXTURE_DIR "data"
#endif

namespace {

using nlohmann::json;
using namespace bvp4;

enum Exit { ok = 0, config_error = 1, no_convergence = 2, disagreement = 3, criterion_failed = 4 };

constexpr double kTrivialSup = 1e-9;
constexpr double kAgreementTol = 1e-4;

struct Globals {
  std::string config;
  std::optional<double> theta;
  std::string out;
  bool json = false;
};

void print(const json& j, const Globals& g) { std::cout << (g.json ? j.dump() : j.dump(2)) << '\n'; }

ProblemConfig load(const Globals& g) {
  if (g.config.empty()) throw ConfigError("", "--config is required");
  ProblemConfig cfg = load_config(g.config);
  if (g.theta) cfg.theta = *g.theta;
  return cfg;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

Interval parse_interval(const std::string& text, const std::string& flag) {
  const std::vector<std::string> parts = split_list(text);
  if (parts.size() != 2) throw ConfigError("", flag + " expects LO,HI");
  try {
    return Interval{std::stod(parts[0]), std::stod(parts[1])};
  } catch (const std::exception&) {
    throw ConfigError("", flag + " expects two numbers, got '" + text + "'");
  }
}

std::string csv_path(const std::string& prefix, std::size_t i) {
  std::string base = prefix;
  if (base.size() > 4 && base.compare(base.size() - 4, 4, ".csv") == 0) base.resize(base.size() - 4);
  return base + "_" + std::to_string(i) + ".csv";
}

double fixed_point_residual(const NystromOperator& op, const GridFunction& u) {
  const Eigen::Map<const Eigen::VectorXd> v(u.values().data(), u.n());
  return op.residual(v).lpNorm<Eigen::Infinity>();
}

std::pair<double, double> shooting_parameters(const NystromOperator& op, const GridFunction& u) {
  const Eigen::Map<const Eigen::VectorXd> v(u.values().data(), u.n());
  return {u[0], op.third_derivative_at_zero(op.density(v))};
}

// ---- solve ---------------------------------------------------------------

struct SolveFlags {
  std::optional<std::string> method;
  double seed_const = 1.0;
};

int cmd_solve(const Globals& g, const SolveFlags& flags) {
  ProblemConfig cfg = load(g);
  SolveSettings s = cfg.solver;
  if (flags.method) {
    if (*flags.method == "picard") s.method = SolveMethod::picard;
    else if (*flags.method == "newton") s.method = SolveMethod::newton;
    else throw ConfigError("", "--method must be picard or newton");
  }
  s.validate();
  NystromOperator op(cfg.problem, s.grid_n);
  const GridFunction u0 = GridFunction::constant(s.grid_n, flags.seed_const);
  const GridFunction u = s.method == SolveMethod::picard ? picard_solve(op, s, u0) : newton_solve(op, s, u0);

  const std::string path = g.out.empty() ? "solution.csv" : g.out;
  write_solution_csv(path, u);
  const HypothesisReport cone = cone_check(u, cfg.theta);
  json j{{"config", cfg.name},
         {"method", s.method == SolveMethod::picard ? "picard" : "newton"},
         {"grid_n", s.grid_n},
         {"sup_norm", number_json(u.sup_norm())},
         {"residual", number_json(fixed_point_residual(op, u))},
         {"cone", to_string(cone.verdict)},
         {"csv", path}};
  if (u.sup_norm() <= kTrivialSup) {
    j["status"] = "trivial";
    std::cout << j.dump() << '\n';
    std::cerr << "error: iteration collapsed to the trivial solution u = 0\n";
    return no_convergence;
  }
  j["status"] = "converged";
  std::cout << j.dump() << '\n';
  return ok;
}

// ---- constants -----------------------------------------------------------

int cmd_constants(const Globals& g) {
  const ProblemConfig cfg = load(g);
  print(to_json(constants_report(cfg.problem, cfg.theta)), g);
  return ok;
}

// ---- check ---------------------------------------------------------------

struct CheckFlags {
  std::string hypotheses = "H1,H2,H3,H4,H5,H6";
  double rho = 1.0;
  std::optional<double> M;
};

int cmd_check(const Globals& g, const CheckFlags& flags) {
  const ProblemConfig cfg = load(g);
  const std::vector<std::string> names = split_list(flags.hypotheses);
  const char* known[] = {"C1", "C2", "C3", "H1", "H2", "H3", "H4", "H5", "H6"};
  for (const std::string& n : names)
    if (std::find(std::begin(known), std::end(known), n) == std::end(known))
      throw ConfigError("", "unknown hypothesis '" + n + "' (use C1..C3, H1..H6)");

  std::vector<HypothesisReport> reports;
  std::vector<HypothesisReport> structural;
  for (const std::string& n : names) {
    if (n[0] == 'C') {
      if (structural.empty()) structural = check_structural(cfg.problem);
      for (const HypothesisReport& r : structural)
        if (r.condition == n) reports.push_back(r);
    } else if (n == "H4") {
      const double M = flags.M ? *flags.M : constants_report(cfg.problem, cfg.theta).lambda1;
      reports.push_back(check_H4(cfg.problem, cfg.theta, flags.rho, M));
    } else if (n == "H6") {
      const double M = flags.M ? *flags.M : constants_report(cfg.problem, cfg.theta).lambda2;
      reports.push_back(check_H6(cfg.problem, cfg.theta, flags.rho, M));
    } else {
      reports.push_back(check_limit_hypothesis(cfg.problem, n, cfg.limits));
    }
  }
  bool all_ok = true;
  for (const HypothesisReport& r : reports) {
    print(to_json(r), g);
    all_ok = all_ok && r.ok();
  }
  return all_ok ? ok : criterion_failed;
}

// ---- multi / oracle ------------------------------------------------------

struct ScanFlags {
  std::string a_range = "0,2";
  std::string b_range = "-2,2";
  int grid = 40;
};

std::vector<ShootingRoot> run_scan(const ProblemConfig& cfg, const ScanFlags& flags) {
  return scan_and_refine(cfg.problem, parse_interval(flags.a_range, "--a-range"),
                         parse_interval(flags.b_range, "--b-range"), flags.grid);
}

int cmd_multi(const Globals& g, const ScanFlags& flags) {
  const ProblemConfig cfg = load(g);
  NystromOperator op(cfg.problem, cfg.solver.grid_n);
  const std::vector<GridFunction> sols = find_positive_solutions(op, cfg.solver, cfg.seeds);
  const std::vector<ShootingRoot> roots = run_scan(cfg, flags);
  const std::string prefix = g.out.empty() ? "solution" : g.out;

  bool agree = true;
  json list = json::array();
  for (std::size_t i = 0; i < sols.size(); ++i) {
    const GridFunction& u = sols[i];
    const auto [a, b] = shooting_parameters(op, u);
    double error = INFINITY;
    json item{{"sup_norm", number_json(u.sup_norm())},
              {"a", number_json(a)},
              {"b", number_json(b)},
              {"residual", number_json(fixed_point_residual(op, u))}};
    if (auto root = refine_root(cfg.problem, a, b)) {
      error = sup_distance(u, integrate_ivp(cfg.problem, root->a, root->b).sample(u.n()));
      item["shooting"] = to_json(*root);
    }
    item["agreement_error"] = number_json(error);
    agree = agree && error <= kAgreementTol;
    const std::string path = csv_path(prefix, i);
    write_solution_csv(path, u);
    item["csv"] = path;
    list.push_back(item);
  }

  // Every scan root must correspond to a Newton solution.
  json unmatched = json::array();
  for (const ShootingRoot& r : roots) {
    const GridFunction v = integrate_ivp(cfg.problem, r.a, r.b).sample(cfg.solver.grid_n);
    bool found = false;
    for (const GridFunction& u : sols) found = found || sup_distance(u, v) <= kAgreementTol;
    if (!found) unmatched.push_back(to_json(r));
  }
  agree = agree && unmatched.empty();

  json j{{"config", cfg.name},
         {"solutions", list},
         {"scan_roots", roots.size()},
         {"unmatched_scan_roots", unmatched},
         {"agree", agree}};
  print(j, g);
  if (!agree) {
    std::cerr << "error: Nystrom and shooting results disagree beyond " << kAgreementTol << '\n';
    return disagreement;
  }
  return ok;
}

int cmd_oracle(const Globals& g, const ScanFlags& flags) {
  const ProblemConfig cfg = load(g);
  const std::vector<ShootingRoot> roots = run_scan(cfg, flags);
  json list = json::array();
  for (std::size_t i = 0; i < roots.size(); ++i) {
    json item = to_json(roots[i]);
    if (!g.out.empty()) {
      const std::string path = csv_path(g.out, i);
      write_solution_csv(path, integrate_ivp(cfg.problem, roots[i].a, roots[i].b).sample(cfg.solver.grid_n));
      item["csv"] = path;
    }
    list.push_back(item);
  }
  print(json{{"config", cfg.name}, {"roots", list}}, g);
  return ok;
}

// ---- examples ------------------------------------------------------------

struct ExamplesFlags {
  std::string only;
  std::string fixtures = BVP4_FIXTURE_DIR;
};

int cmd_examples(const Globals& g, const ExamplesFlags& flags) {
  AcceptanceOptions options;
  options.only = split_list(flags.only);
  options.fixture_dir = flags.fixtures;
  if (!g.json) options.on_result = [](const CriterionResult& r) { std::cout << format_result_line(r) << std::endl; };
  const std::vector<CriterionResult> results = run_acceptance(options);
  bool failed = false;
  json list = json::array();
  for (const CriterionResult& r : results) {
    failed = failed || r.status == CriterionStatus::fail;
    list.push_back({{"id", r.id}, {"title", r.title}, {"status", to_string(r.status)}, {"detail", r.detail}});
  }
  if (g.json) std::cout << list.dump() << '\n';
  return failed ? criterion_failed : ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Positive solutions of a fourth-order BVP with integral boundary conditions"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--config", g.config, "Problem configuration (JSON)");
  app.add_option("--theta", g.theta, "Cone parameter in (0, 1/2)");
  app.add_option("--out", g.out, "Output CSV path (solve) or prefix (multi, oracle)");
  app.add_flag("--json", g.json, "Compact machine-readable stdout");

  SolveFlags solve_flags;
  CLI::App* solve = app.add_subcommand("solve", "Solve by Picard or Newton and write the solution CSV");
  solve->add_option("--method", solve_flags.method, "picard or newton (default from config)");
  solve->add_option("--seed-const", solve_flags.seed_const, "Constant initial guess")->capture_default_str();

  app.add_subcommand("constants", "Print k, Psi, Phi, Lambda1, Lambda2");

  CheckFlags check_flags;
  CLI::App* check = app.add_subcommand("check", "Check boundary data and growth hypotheses");
  check->add_option("--hypothesis", check_flags.hypotheses, "Comma list of C1..C3, H1..H6")->capture_default_str();
  check->add_option("--rho", check_flags.rho, "rho1 for H4, rho2 for H6")->capture_default_str();
  check->add_option("--M", check_flags.M, "M1 for H4, M2 for H6 (default Lambda1, Lambda2)");

  ScanFlags scan_flags;
  auto add_scan = [&scan_flags](CLI::App* sub) {
    sub->add_option("--a-range", scan_flags.a_range, "Scan range for u(0) as LO,HI")->capture_default_str();
    sub->add_option("--b-range", scan_flags.b_range, "Scan range for u'''(0) as LO,HI")->capture_default_str();
    sub->add_option("--scan-grid", scan_flags.grid, "Cells per axis")->capture_default_str()->check(CLI::PositiveNumber);
  };
  CLI::App* multi = app.add_subcommand("multi", "Multi-start Newton cross-checked by shooting");
  add_scan(multi);
  CLI::App* oracle = app.add_subcommand("oracle", "Shooting scan and Broyden refinement");
  add_scan(oracle);

  ExamplesFlags examples_flags;
  CLI::App* examples = app.add_subcommand("examples", "Run the acceptance criteria on the bundled examples");
  examples->add_option("--only", examples_flags.only, "Comma list of example ids (5.1..5.4)");
  examples->add_option("--fixtures", examples_flags.fixtures, "Directory with ex51.json .. ex54.json")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return config_error;
  }

  try {
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "solve") return cmd_solve(g, solve_flags);
    if (name == "constants") return cmd_constants(g);
    if (name == "check") return cmd_check(g, check_flags);
    if (name == "multi") return cmd_multi(g, scan_flags);
    if (name == "oracle") return cmd_oracle(g, scan_flags);
    return cmd_examples(g, examples_flags);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return config_error;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return config_error;
  } catch (const StructuralError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return config_error;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return config_error;
  } catch (const NoConvergenceError& e) {
    std::cerr << "error: " << e.what() << " (residual " << e.last_residual() << " after " << e.iterations()
              << " iterations)\n";
    return no_convergence;
  } catch (const DivergenceError& e) {
    std::cerr << "error: " << e.what() << " (sup norm " << e.sup_norm() << ")\n";
    return no_convergence;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return no_convergence;
  }
}
