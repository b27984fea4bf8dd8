#include "softsched/search.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace softsched {

void SearchConfig::validate() const {
  if (time_limit && time_limit->count() <= 0) throw std::invalid_argument("time limit must be positive");
  if (node_limit && *node_limit == 0) throw std::invalid_argument("node limit must be positive");
  if (lb_period == 0) throw std::invalid_argument("lower-bound period must be positive");
}

const char* to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "optimal";
    case SolveStatus::kFeasible: return "feasible";
    case SolveStatus::kInfeasible: return "infeasible";
    case SolveStatus::kNoSolutionYet: return "no-solution";
  }
  return "unknown";
}

std::optional<ActivityId> select_variable(const Store& store, VariableOrdering ordering) {
  std::optional<ActivityId> best;
  std::uint64_t best_key = 0;
  Penalty best_min = 0;
  for (std::size_t k = 0; k < store.size(); ++k) {
    const auto i = static_cast<ActivityId>(k);
    const auto& v = store.var(i);
    if (v.is_assigned()) continue;
    const std::uint64_t key = ordering == VariableOrdering::kArcCount ? store.open_arcs(i) : store.open_arc_weight(i);
    const Penalty mp = min_penalty(v).second;
    if (!best || key > best_key || (key == best_key && mp < best_min)) {
      best = i;
      best_key = key;
      best_min = mp;
    }
  }
  return best;
}

std::vector<TimeSlot> order_values(const PreferenceVariable& var) {
  auto values = var.values();
  std::stable_sort(values.begin(), values.end(),
                   [&](TimeSlot a, TimeSlot b) { return var.penalty(a) < var.penalty(b); });
  return values;
}

namespace {

using Clock = std::chrono::steady_clock;

class BranchAndBound {
 public:
  BranchAndBound(const Instance& instance, const SearchConfig& config, const SearchHooks& hooks)
      : instance_(instance), config_(config), hooks_(hooks), store_(instance), start_(Clock::now()) {
    post_soft_disjunctives(store_, config.u_max);
    post_cumulative_max(store_);
    if (config.lb_mode == LbMode::kMin) mode_ = BoundMode::kMin;
    if (config.lb_mode == LbMode::kExp) mode_ = BoundMode::kExp;
  }

  SolveResult run() {
    if (promising(0)) dfs(0);
    SolveResult result;
    result.best = std::move(best_);
    result.stats = stats_;
    result.stats.elapsed_seconds = elapsed();
    if (aborted_)
      result.status = result.best ? SolveStatus::kFeasible : SolveStatus::kNoSolutionYet;
    else
      result.status = result.best ? SolveStatus::kOptimal : SolveStatus::kInfeasible;
    return result;
  }

 private:
  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

  bool limit_reached() {
    if (config_.node_limit && stats_.nodes >= *config_.node_limit) return true;
    if (hooks_.cancel && hooks_.cancel->requested()) return true;
    if (config_.time_limit && elapsed() >= config_.time_limit->count()) return true;
    return false;
  }

  bool promising(std::size_t depth) {
    const bool full = mode_ && depth % config_.lb_period == 0;
    const auto bound = node_lower_bound(store_, full ? mode_ : std::nullopt, config_.sharing);
    if (!bound.feasible) return false;
    return !best_ || bound.value < Rational(static_cast<std::int64_t>(best_->cost));
  }

  void leaf() {
    ++stats_.leaves;
    if (hooks_.on_leaf) hooks_.on_leaf(store_);
    auto theta = store_.assignment();
    for (std::size_t r = 0; r < instance_.resources().size(); ++r)
      if (check_atleast(instance_, r, theta)) return;
    const Penalty cost = store_.assigned_cost();
    if (best_ && cost >= best_->cost) return;
    best_ = Incumbent{std::move(theta), cost, elapsed(), stats_.nodes};
    ++stats_.incumbents;
    if (hooks_.on_incumbent) hooks_.on_incumbent(*best_);
  }

  void dfs(std::size_t depth) {
    if (limit_reached()) {
      aborted_ = true;
      return;
    }
    ++stats_.nodes;
    const auto var = select_variable(store_, config_.ordering);
    if (!var) {
      leaf();
      return;
    }
    for (const TimeSlot value : order_values(store_.var(*var))) {
      const auto mark = store_.mark();
      if (store_.assign(*var, value) == Propagation::kConsistent && promising(depth + 1)) dfs(depth + 1);
      store_.undo_to(mark);
      if (aborted_) return;
    }
  }

  const Instance& instance_;
  const SearchConfig& config_;
  const SearchHooks& hooks_;
  Store store_;
  Clock::time_point start_;
  std::optional<BoundMode> mode_;
  std::optional<Incumbent> best_;
  SearchStats stats_;
  bool aborted_ = false;
};

}  // namespace

SolveResult solve(const Instance& instance, const SearchConfig& config, const SearchHooks& hooks) {
  config.validate();
  BranchAndBound search(instance, config, hooks);
  return search.run();
}

std::optional<SearchConfig> restart_tightening(const Instance& instance, const Incumbent& previous,
                                               SearchConfig config) {
  Penalty worst = 0;
  for (const auto u : eval_u_all(instance, previous.assignment)) worst = std::max(worst, u);
  if (worst == 0) return std::nullopt;
  config.u_max = worst - 1;
  return config;
}

RestartResult solve_fuzzy_restart(const Instance& instance, const SearchConfig& config, const SearchHooks& hooks) {
  config.validate();
  const auto start = Clock::now();
  RestartResult out;
  SearchConfig round = config;
  for (;;) {
    if (config.time_limit) {
      const auto remaining = *config.time_limit - (Clock::now() - start);
      if (remaining.count() <= 0) {
        out.status = out.best ? SolveStatus::kFeasible : SolveStatus::kNoSolutionYet;
        break;
      }
      round.time_limit = remaining;
    }
    if (config.node_limit) {
      if (out.stats.nodes >= *config.node_limit) {
        out.status = out.best ? SolveStatus::kFeasible : SolveStatus::kNoSolutionYet;
        break;
      }
      round.node_limit = *config.node_limit - out.stats.nodes;
    }
    ++out.rounds;
    auto r = solve(instance, round, hooks);
    out.stats.nodes += r.stats.nodes;
    out.stats.leaves += r.stats.leaves;
    out.stats.incumbents += r.stats.incumbents;

    if (r.status == SolveStatus::kInfeasible) {
      // Nothing satisfies the tightened threshold: the previous incumbent
      // already minimizes the worst incident violation.
      out.status = out.best ? SolveStatus::kOptimal : SolveStatus::kInfeasible;
      break;
    }
    if (!r.best) {
      out.status = out.best ? SolveStatus::kFeasible : SolveStatus::kNoSolutionYet;
      break;
    }
    out.best = std::move(r.best);
    if (r.status == SolveStatus::kFeasible) {
      out.status = SolveStatus::kFeasible;
      break;
    }
    auto next = restart_tightening(instance, *out.best, round);
    if (!next) {
      out.status = SolveStatus::kOptimal;
      break;
    }
    round = *next;
  }
  out.stats.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return out;
}

}  // namespace softsched
