#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bap/problem.hpp"
#include "bap/solvers.hpp"
#include "bap/vec.hpp"

namespace bap {

struct BudgetPolicy {
  long long total_units = 0;
  long long sample_every = 1;  // record the metric every this many units
};

struct TraceRecord {
  long long unit_index = 0;
  double metric_value = 0.0;
  std::optional<Pair> iterate;  // stored only when requested
};

using Metric = std::function<double(const Pair&)>;

struct RunResult {
  std::vector<TraceRecord> records;
  long long consumed = 0;
  long long total_units = 0;
  long long iterations = 0;
  Pair final_primal;
  double final_metric = 0.0;

  // Unspent units: nonzero when the next step would not fit (ACJ's growing
  // sweeps). Reported, never rounded away.
  long long remainder() const { return total_units - consumed; }
};

// Steps the solver until the next step would exceed the budget. Each step
// consuming u units fills the u unit slots it covers with its final metric
// value (the repetition rule), so the trace has floor(consumed/sample_every)
// rows. Throws std::invalid_argument for an invalid policy and
// std::runtime_error when the budget is below the first step's cost.
RunResult run(Solver& solver, const BudgetPolicy& budget, const Metric& metric,
              bool keep_iterates = false);

// pair_norm(z - solution); symmetric in its arguments.
double metric_known(const Pair& z, const Pair& solution);

// |x - y| + (1/delta) * sum_i sqrt(d_{A_i}(x)^2 + d_{B_i}(y)^2).
double metric_ddelta(const Pair& z, const Problem& p, double delta);

// Throws problem_error when the problem has no known solution.
Metric make_known_metric(const Problem& p);
Metric make_ddelta_metric(const Problem& p, double delta = 0.1);

// "unit,metric" header then one row per record, 17 significant digits.
// with_iterates appends x0..x{n-1},y0..y{n-1} columns (records must carry
// iterates).
void write_trace_csv(std::ostream& os, const RunResult& r,
                     bool with_iterates = false);

// One unit column plus one metric column per run, labeled. Runs share the
// sample grid; shorter runs are padded by repeating their last metric.
void write_compare_csv(std::ostream& os, const std::vector<std::string>& labels,
                       const std::vector<RunResult>& runs,
                       long long sample_every);

}  // namespace bap
