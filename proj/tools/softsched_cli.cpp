// softsched: solve, generate, verify and report on soft scheduling instances.

#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "softsched/generator.hpp"
#include "softsched/io.hpp"
#include "softsched/oracle.hpp"
#include "softsched/report.hpp"
#include "softsched/search.hpp"

namespace {

using namespace softsched;

enum ExitCode : int {
  kExitOptimal = 0,
  kExitUsage = 1,
  kExitIncumbent = 2,
  kExitInfeasible = 3,
  kExitNoSolution = 4,
  kExitMismatch = 5,
};

std::atomic<bool>* g_interrupt = nullptr;

extern "C" void on_signal(int) {
  if (g_interrupt) g_interrupt->store(true, std::memory_order_relaxed);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

int exit_code_for(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return kExitOptimal;
    case SolveStatus::kFeasible: return kExitIncumbent;
    case SolveStatus::kInfeasible: return kExitInfeasible;
    case SolveStatus::kNoSolutionYet: return kExitNoSolution;
  }
  return kExitUsage;
}

struct SolveArgs {
  std::string instance;
  double time_limit = 0.0;
  std::uint64_t node_limit = 0;
  std::int64_t u_max = -1;
  std::string lb = "none";
  std::uint32_t lb_period = 1;
  std::string objective = "weighted";
  std::string ordering = "count";
  std::string out;
  bool emit_incumbents = false;
  bool no_timing = false;
};

int run_solve(const SolveArgs& args) {
  const Instance instance = parse_instance(read_file(args.instance));
  SearchConfig config;
  if (args.time_limit > 0) config.time_limit = std::chrono::duration<double>(args.time_limit);
  if (args.node_limit > 0) config.node_limit = args.node_limit;
  if (args.u_max >= 0) config.u_max = static_cast<Penalty>(args.u_max);
  config.lb_mode = args.lb == "min" ? LbMode::kMin : args.lb == "exp" ? LbMode::kExp : LbMode::kNone;
  config.lb_period = args.lb_period;
  config.ordering = args.ordering == "weight" ? VariableOrdering::kArcWeight : VariableOrdering::kArcCount;

  CancelToken cancel;
  g_interrupt = &cancel.flag();
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);

  SearchHooks hooks;
  hooks.cancel = cancel;
  if (args.emit_incumbents)
    hooks.on_incumbent = [](const Incumbent& inc) { std::cout << incumbent_record(inc) << '\n' << std::flush; };

  SolveStatus status;
  std::optional<Incumbent> best;
  SearchStats stats;
  if (args.objective == "fuzzy-restart") {
    auto r = solve_fuzzy_restart(instance, config, hooks);
    status = r.status;
    best = std::move(r.best);
    stats = r.stats;
  } else {
    auto r = solve(instance, config, hooks);
    status = r.status;
    best = std::move(r.best);
    stats = r.stats;
  }
  g_interrupt = nullptr;

  const auto solution = make_solution_file(instance, status, best, stats);
  write_output(args.out, serialize_solution(solution, !args.no_timing));
  return exit_code_for(status);
}

int run_generate(const GeneratorParams& params, const std::string& out) {
  write_output(out, serialize_instance(generate(params)));
  return 0;
}

int run_verify(const std::string& path, std::uint64_t cap) {
  const Instance instance = parse_instance(read_file(path));
  OracleOptions options;
  options.cap = cap;
  const auto oracle = enumerate_optimum(instance, Objective::kWeighted, options);
  bool ok = true;
  std::cout << "assignments enumerated: " << oracle.evaluated << '\n';
  if (oracle.feasible)
    std::cout << "weighted optimum: " << oracle.optimal_cost << " (" << oracle.optima.size() << " optima)\n";
  else
    std::cout << "weighted optimum: infeasible\n";

  for (const auto& [name, mode] : {std::pair{"none", LbMode::kNone}, {"min", LbMode::kMin}, {"exp", LbMode::kExp}}) {
    SearchConfig config;
    config.lb_mode = mode;
    const auto r = solve(instance, config);
    const bool agree = oracle.feasible ? (r.optimal() && r.best->cost == oracle.optimal_cost)
                                       : r.status == SolveStatus::kInfeasible;
    ok = ok && agree;
    std::cout << "solve lb=" << name << ": " << to_string(r.status);
    if (r.best) std::cout << " cost " << r.best->cost;
    std::cout << " nodes " << r.stats.nodes << (agree ? " [agree]" : " [MISMATCH]") << '\n';
  }

  const auto bound = verify_bound(instance, MinWeightSharing::kExclusive, options);
  if (oracle.feasible) {
    std::cout << "lower bound: base " << to_string(bound.bound_none) << ", min " << to_string(bound.bound_min)
              << " (slack " << to_string(bound.slack_min()) << "), exp " << to_string(bound.bound_exp) << " (slack "
              << to_string(bound.slack_exp()) << ")" << (bound.ok ? " [ok]" : " [VIOLATED]") << '\n';
  }
  if (!bound.ok) std::cout << "counterexample: " << bound.counterexample << '\n';
  ok = ok && bound.ok;

  if (fuzzy_defined(instance) && oracle.feasible) {
    const auto fuzzy = enumerate_optimum(instance, Objective::kFuzzy, options);
    const auto r = solve_fuzzy_restart(instance, SearchConfig{});
    const auto got = r.best ? eval_fuzzy(instance, r.best->assignment) : Rational(-1);
    const bool agree = r.status == SolveStatus::kOptimal && got == fuzzy.optimal_fuzzy;
    ok = ok && agree;
    std::cout << "fuzzy optimum: " << to_string(fuzzy.optimal_fuzzy) << ", restart search " << to_string(got)
              << " after " << r.rounds << " rounds" << (agree ? " [agree]" : " [MISMATCH]") << '\n';
  }
  return ok ? 0 : kExitMismatch;
}

int run_report(const std::string& instance_path, const std::string& solution_path) {
  const Instance instance = parse_instance(read_file(instance_path));
  const auto solution = parse_solution(read_file(solution_path));
  std::cout << "status: " << solution.status << (solution.optimal ? " (proven optimal)" : "") << '\n';
  if (solution.assignment.empty() && instance.size() > 0) {
    std::cout << "no assignment\n";
    return 0;
  }
  const auto issues = check_solution(instance, solution);
  if (issues.empty()) {
    const auto b = compute_breakdown(instance, solution.assignment);
    Penalty worst = 0;
    for (const auto u : b.per_activity_u) worst = std::max(worst, u);
    std::cout << "cost: " << solution.cost << " (initial " << b.initial_cost_sum << ", violations " << b.violation_sum
              << ")\n"
              << "worst per-activity violation: " << worst << '\n'
              << "fuzzy: " << (b.fuzzy ? to_string(*b.fuzzy) : std::string("undefined")) << '\n'
              << "violated joint enrollments: " << b.violated_pct_enrollment << "%\n"
              << "initial preference use: " << b.violated_pct_initial << "%\n";
    return 0;
  }
  for (const auto& issue : issues) std::cout << "inconsistent: " << issue << '\n';
  return kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Soft scheduling solver"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  auto* solve_cmd = app.add_subcommand("solve", "Anytime branch and bound on an instance file");
  solve_cmd->add_option("instance", solve_args.instance, "Instance JSON")->required();
  solve_cmd->add_option("--time-limit", solve_args.time_limit, "Wall-clock budget in seconds")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--node-limit", solve_args.node_limit, "Node budget")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--u-max", solve_args.u_max, "Maximal incident violation per activity")
      ->check(CLI::NonNegativeNumber);
  solve_cmd->add_option("--lb", solve_args.lb, "Resource lower bound")->check(CLI::IsMember({"none", "min", "exp"}));
  solve_cmd->add_option("--lb-period", solve_args.lb_period, "Recompute the resource bound every P levels")
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--objective", solve_args.objective, "weighted or fuzzy-restart")
      ->check(CLI::IsMember({"weighted", "fuzzy-restart"}));
  solve_cmd->add_option("--ordering", solve_args.ordering, "Most-constrained measure: count or weight")
      ->check(CLI::IsMember({"count", "weight"}));
  solve_cmd->add_option("--out", solve_args.out, "Solution file (default: standard output)");
  solve_cmd->add_flag("--emit-incumbents", solve_args.emit_incumbents, "Stream each incumbent as a JSON line");
  solve_cmd->add_flag("--no-timing", solve_args.no_timing, "Leave wall-clock fields out of the solution file");

  GeneratorParams gen;
  std::string gen_out;
  std::int32_t gen_horizon = 0;
  auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic timetabling instance");
  gen_cmd->add_option("--courses", gen.courses, "Number of courses")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--rooms", gen.rooms, "Number of rooms")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--occupancy", gen.occupancy_target, "Target average room occupancy in (0, 1]");
  gen_cmd->add_option("--seed", gen.seed, "Random seed");
  gen_cmd->add_option("--horizon", gen_horizon, "Number of time slots (default: derived from occupancy)");
  gen_cmd->add_option("--students", gen.students, "Number of students (default: 12 per course)");
  gen_cmd->add_option("--courses-per-student", gen.courses_per_student, "Courses each student takes");
  gen_cmd->add_option("--popularity-exponent", gen.popularity_exponent, "Power-law exponent of course popularity");
  gen_cmd->add_option("--max-duration", gen.max_duration, "Longest course in slots");
  gen_cmd->add_option("--preferred-fraction", gen.preferred_fraction, "Share of starts with zero initial cost");
  gen_cmd->add_option("--max-initial-cost", gen.max_initial_cost, "Largest initial cost of a start");
  gen_cmd->add_option("--out", gen_out, "Output file (default: standard output)");

  std::string verify_path;
  std::uint64_t verify_cap = kDefaultEnumerationCap;
  auto* verify_cmd = app.add_subcommand("verify", "Check the solver against brute-force enumeration");
  verify_cmd->add_option("instance", verify_path, "Instance JSON")->required();
  verify_cmd->add_option("--cap", verify_cap, "Largest domain product to enumerate");

  std::string report_instance;
  std::string report_solution;
  auto* report_cmd = app.add_subcommand("report", "Recompute and check a solution's breakdown");
  report_cmd->add_option("instance", report_instance, "Instance JSON")->required();
  report_cmd->add_option("solution", report_solution, "Solution JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*solve_cmd) return run_solve(solve_args);
    if (*gen_cmd) {
      if (gen_horizon > 0) gen.horizon = gen_horizon;
      return run_generate(gen, gen_out);
    }
    if (*verify_cmd) return run_verify(verify_path, verify_cap);
    if (*report_cmd) return run_report(report_instance, report_solution);
  } catch (const InstanceError& e) {
    std::cerr << "error [" << static_cast<int>(e.code()) << "]: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
