#include "bap/harness.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "bap/sets.hpp"

namespace bap {

RunResult run(Solver& solver, const BudgetPolicy& budget, const Metric& metric,
              bool keep_iterates) {
  if (budget.total_units <= 0)
    throw std::invalid_argument("budget: total_units must be positive");
  if (budget.sample_every <= 0)
    throw std::invalid_argument("budget: sample_every must be positive");
  if (budget.sample_every > budget.total_units)
    throw std::invalid_argument(
        "budget: sample_every must not exceed total_units");
  if (!metric) throw std::invalid_argument("budget: metric is empty");
  if (solver.next_step_cost() > budget.total_units)
    throw std::runtime_error("budget is below the cost of the first step");

  RunResult r;
  r.total_units = budget.total_units;
  const long long s = budget.sample_every;
  long long consumed = 0;
  while (true) {
    long long next = solver.next_step_cost();
    if (consumed + next > budget.total_units) break;
    long long used = solver.step();
    long long prev = consumed;
    consumed += used;
    // A step spanning several units owns every sample slot it covers, so each
    // slot in (prev, consumed] lands on the same post-step value. Steps that
    // cover no slot skip the metric evaluation entirely.
    if (consumed / s > prev / s) {
      double value = metric(solver.primal());
      for (long long u = (prev / s + 1) * s; u <= consumed; u += s) {
        TraceRecord rec;
        rec.unit_index = u;
        rec.metric_value = value;
        if (keep_iterates) rec.iterate = solver.primal();
        r.records.push_back(std::move(rec));
      }
    }
  }
  r.consumed = consumed;
  r.iterations = solver.iterations();
  r.final_primal = solver.primal();
  r.final_metric = metric(r.final_primal);
  return r;
}

double metric_known(const Pair& z, const Pair& solution) {
  return pair_norm(pair_sub(z, solution));
}

double metric_ddelta(const Pair& z, const Problem& p, double delta) {
  if (delta <= 0.0) throw std::invalid_argument("ddelta: delta must be > 0");
  double gap = 0.0;
  for (std::size_t j = 0; j < z.dim(); ++j) {
    double d = z.x[j] - z.y[j];
    gap += d * d;
  }
  double penalty = 0.0;
  for (std::size_t i = 0; i < p.m(); ++i) {
    double da = distance(p.A(i), z.x);
    double db = distance(p.B(i), z.y);
    penalty += std::sqrt(da * da + db * db);
  }
  return std::sqrt(gap) + penalty / delta;
}

Metric make_known_metric(const Problem& p) {
  if (!p.known_solution)
    throw problem_error("known metric requires a problem with a recorded solution");
  Pair sol = *p.known_solution;
  return [sol = std::move(sol)](const Pair& z) { return metric_known(z, sol); };
}

Metric make_ddelta_metric(const Problem& p, double delta) {
  if (delta <= 0.0) throw std::invalid_argument("ddelta: delta must be > 0");
  return [copy = p, delta](const Pair& z) {
    return metric_ddelta(z, copy, delta);
  };
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_trace_csv(std::ostream& os, const RunResult& r, bool with_iterates) {
  os << "unit,metric";
  if (with_iterates) {
    std::size_t n = r.final_primal.dim();
    for (std::size_t j = 0; j < n; ++j) os << ",x" << j;
    for (std::size_t j = 0; j < n; ++j) os << ",y" << j;
  }
  os << "\n";
  for (const auto& rec : r.records) {
    os << rec.unit_index << "," << fmt(rec.metric_value);
    if (with_iterates) {
      if (!rec.iterate)
        throw std::invalid_argument("trace csv: record carries no iterate");
      for (std::size_t j = 0; j < rec.iterate->dim(); ++j)
        os << "," << fmt(rec.iterate->x[j]);
      for (std::size_t j = 0; j < rec.iterate->dim(); ++j)
        os << "," << fmt(rec.iterate->y[j]);
    }
    os << "\n";
  }
}

void write_compare_csv(std::ostream& os, const std::vector<std::string>& labels,
                       const std::vector<RunResult>& runs,
                       long long sample_every) {
  if (labels.size() != runs.size())
    throw std::invalid_argument("compare csv: one label per run required");
  if (runs.empty()) throw std::invalid_argument("compare csv: no runs");
  if (sample_every <= 0)
    throw std::invalid_argument("compare csv: sample_every must be positive");

  os << "unit";
  for (const auto& l : labels) os << "," << l;
  os << "\n";

  std::size_t rows = 0;
  for (const auto& r : runs) rows = std::max(rows, r.records.size());
  for (std::size_t t = 0; t < rows; ++t) {
    os << (static_cast<long long>(t) + 1) * sample_every;
    for (const auto& r : runs) {
      double v;
      if (t < r.records.size())
        v = r.records[t].metric_value;
      else if (!r.records.empty())
        v = r.records.back().metric_value;
      else
        v = r.final_metric;
      os << "," << fmt(v);
    }
    os << "\n";
  }
}

}  // namespace bap
