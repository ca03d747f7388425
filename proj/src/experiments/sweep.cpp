#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>

#include "wdro/distort.hpp"
#include "wdro/errors.hpp"
#include "wdro/experiments.hpp"
#include "wdro/risk.hpp"

namespace wdro {

const char* to_string(Method method) {
  switch (method) {
    case Method::kSaa: return "SAA";
    case Method::kRowGen: return "RowGen";
    case Method::kDistort: return "Distort";
  }
  return "unknown";
}

Method method_from_string(const std::string& name) {
  for (Method m : {Method::kSaa, Method::kRowGen, Method::kDistort}) {
    if (name == to_string(m)) return m;
  }
  throw InvalidInput("unknown method '" + name + "' (expected SAA, RowGen or Distort)");
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
  if (name == "exp1") return ExperimentKind::kExp1;
  if (name == "exp2") return ExperimentKind::kExp2;
  throw InvalidInput("unknown experiment '" + name + "' (expected exp1 or exp2)");
}

Vector arithmetic_grid(double step, int count) {
  Vector grid;
  for (int k = 1; k <= count; ++k) grid.push_back(step * k);
  return grid;
}

ExperimentConfig default_config(ExperimentKind kind) {
  ExperimentConfig c;
  c.kind = kind;
  if (kind == ExperimentKind::kExp1) {
    c.alpha = 0.1;
    c.epsilons = arithmetic_grid(0.0025, 40);
    c.methods = {Method::kSaa, Method::kRowGen, Method::kDistort};
  } else {
    c.alpha = 0.5;
    c.epsilons = arithmetic_grid(0.025, 40);
    c.methods = {Method::kSaa, Method::kDistort};
  }
  return c;
}

namespace {

void validate(const ExperimentConfig& c) {
  if (c.n < 1 || c.N < 1 || c.samples < 1) throw InvalidInput("n, N and samples must be >= 1");
  if (!(c.alpha > 0.0 && c.alpha <= 1.0)) throw InvalidInput("alpha must lie in (0, 1]");
  if (c.mc_draws < 1) throw InvalidInput("the Monte Carlo sample size must be >= 1");
  if (!(c.level > 0.0 && c.level <= 1.0)) throw InvalidInput("quantile level must lie in (0, 1]");
  if (c.methods.empty()) throw InvalidInput("at least one method is required");
  for (double e : c.epsilons) {
    if (!(e >= 0.0) || !std::isfinite(e)) throw InvalidInput("epsilon grid values must be finite and >= 0");
  }
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

struct Task {
  int sample;
  int eps_index;  // -1 for the sample-average solve shared by every epsilon
  Method method;
};

struct Outcome {
  Binary x;
  double solve_ms = 0.0;
  std::string status;
};

Outcome run_task(const Task& task, const ExperimentConfig& c, const FeasibleSet& problem,
                 const EmpiricalDistribution& dist, const SupportSet& support, Execution inner) {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  try {
    SolveResult result;
    const double eps = task.eps_index < 0 ? 0.0 : c.epsilons[task.eps_index];
    switch (task.method) {
      case Method::kSaa: result = solve_cvar(problem, dist, c.alpha, c.gap_tol); break;
      case Method::kRowGen: {
        RowGenOptions options = c.rowgen;
        options.adversary.execution = inner;
        RowGenTrace trace;
        result = solve_distr_rowgen(problem, dist, support, AmbiguitySpec::make(eps, c.q),
                                    RiskSpec(c.alpha, dist.size()), options, &trace);
        if (trace.termination != "gap") out.status = trace.termination;
        break;
      }
      case Method::kDistort:
        // At epsilon = 0 the ball is the sample itself and nothing is distorted.
        result = eps == 0.0 ? solve_with_custom_c(problem, dist, support, kNoDistortion, c.alpha, c.gap_tol)
                            : solve_distr_approx(problem, dist, support, AmbiguitySpec::make(eps, c.q), c.alpha,
                                                 c.gap_tol)
                                  .solution;
        break;
    }
    out.x = result.x;
    if (out.status.empty()) out.status = milp::to_string(result.status);
  } catch (const std::exception&) {
    out.x.clear();
    out.status = "error";
  }
  out.solve_ms = elapsed_ms(start);
  return out;
}

}  // namespace

SweepResult run_experiment(const ExperimentConfig& config, Execution execution) {
  validate(config);
  SweepResult result;
  result.config = config;
  result.instance = generate_instance(config.n, derive_seed(config.seed, {0}));
  const FeasibleSet problem = encode(result.instance.knapsack);
  const SupportSet support = result.instance.support();
  std::vector<EmpiricalDistribution> samples;
  for (int s = 0; s < config.samples; ++s) {
    samples.push_back(sample_costs(result.instance, config.N, derive_seed(config.seed, {1, std::uint64_t(s)})));
  }

  const bool outer_parallel = execution == Execution::kParallel;
  const Execution inner = outer_parallel ? Execution::kSerial : Execution::kParallel;
  const int grid = static_cast<int>(config.epsilons.size());
  const bool has_saa = std::find(config.methods.begin(), config.methods.end(), Method::kSaa) != config.methods.end();

  std::vector<Task> tasks;
  for (int s = 0; s < config.samples; ++s) {
    if (has_saa) tasks.push_back({s, -1, Method::kSaa});
    for (int e = 0; e < grid; ++e) {
      for (Method m : config.methods) {
        if (m != Method::kSaa) tasks.push_back({s, e, m});
      }
    }
  }
  std::vector<Outcome> outcomes(tasks.size());
  const auto solve = [&](std::size_t k) {
    outcomes[k] = run_task(tasks[k], config, problem, samples[tasks[k].sample], support, inner);
  };
  if (outer_parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t k = 0; k < tasks.size(); ++k) solve(k);
  } else {
    for (std::size_t k = 0; k < tasks.size(); ++k) solve(k);
  }

  // Records in (sample, epsilon, method) order; the sample-average solution
  // is repeated in every epsilon cell.
  std::size_t k = 0;
  for (int s = 0; s < config.samples; ++s) {
    const Outcome* saa = has_saa ? &outcomes[k++] : nullptr;
    for (int e = 0; e < grid; ++e) {
      for (Method m : config.methods) {
        const Outcome& o = m == Method::kSaa ? *saa : outcomes[k++];
        SweepRecord r;
        r.sample_id = s;
        r.epsilon = config.epsilons[e];
        r.method = m;
        r.x = o.x;
        r.solve_ms = o.solve_ms;
        r.status = o.status;
        r.objective = r.x.empty() ? std::numeric_limits<double>::quiet_NaN()
                                  : cvar_discrete(samples[s], r.x, config.alpha);
        r.q90 = std::numeric_limits<double>::quiet_NaN();
        result.records.push_back(std::move(r));
      }
    }
  }

  // Every method in a cell is evaluated on the same draws; equal solutions
  // within a cell share one evaluation.
  std::map<std::pair<std::size_t, Binary>, std::size_t> index;
  std::vector<std::pair<std::size_t, const Binary*>> evals;  // (cell, x)
  std::vector<std::size_t> eval_of(result.records.size(), 0);
  const std::size_t per_cell = config.methods.size();
  for (std::size_t i = 0; i < result.records.size(); ++i) {
    if (result.records[i].x.empty()) continue;
    const std::size_t cell = i / per_cell;
    auto [it, inserted] = index.try_emplace({cell, result.records[i].x}, evals.size());
    if (inserted) evals.emplace_back(cell, &result.records[i].x);
    eval_of[i] = it->second;
  }
  Vector quantiles(evals.size());
  const auto evaluate = [&](std::size_t v) {
    const std::size_t cell = evals[v].first;
    const auto s = static_cast<std::uint64_t>(cell / grid);
    const auto e = static_cast<std::uint64_t>(cell % grid);
    quantiles[v] = estimate_quantile(*evals[v].second, result.instance, config.level, config.mc_draws,
                                     derive_seed(config.seed, {2, s, e}), inner);
  };
  if (outer_parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t v = 0; v < evals.size(); ++v) evaluate(v);
  } else {
    for (std::size_t v = 0; v < evals.size(); ++v) evaluate(v);
  }
  for (std::size_t i = 0; i < result.records.size(); ++i) {
    if (!result.records[i].x.empty()) result.records[i].q90 = quantiles[eval_of[i]];
  }
  return result;
}

void write_csv(const SweepResult& result, std::ostream& out, bool with_timing) {
  out << "sample_id,epsilon,method,objective,q90,solve_ms,status\n";
  out << std::setprecision(12);
  for (const auto& r : result.records) {
    out << r.sample_id << ',' << r.epsilon << ',' << to_string(r.method) << ',' << r.objective << ',' << r.q90
        << ',';
    if (with_timing) {
      out << std::fixed << std::setprecision(3) << r.solve_ms << std::defaultfloat << std::setprecision(12);
    } else {
      out << 0;
    }
    out << ',' << r.status << '\n';
  }
}

}  // namespace wdro
