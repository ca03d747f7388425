// Acceptance run: one PASS/FAIL line per criterion, exit status = number of
// failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "support/brute_force.hpp"
#include "wdro/distort.hpp"
#include "wdro/experiments.hpp"
#include "wdro/io.hpp"
#include "wdro/parallel.hpp"
#include "wdro/problems.hpp"
#include "wdro/risk.hpp"
#include "wdro/rowgen.hpp"
#include "wdro/unrestricted.hpp"
#include "wdro/worst_case.hpp"

namespace wdro {
namespace {

std::string num(double v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

using testing::brute_minimize;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
double uniform(std::mt19937_64& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

FeasibleSet random_problem(std::mt19937_64& rng, int n) {
  return rng() % 2 == 0 ? encode(testing::random_knapsack(rng, n)) : encode(testing::random_rep_selection(rng, n));
}

Binary random_binary(std::mt19937_64& rng, int n) {
  Binary x(n);
  for (int& v : x) v = static_cast<int>(rng() % 2);
  return x;
}

Binary random_feasible(std::mt19937_64& rng, const FeasibleSet& problem) {
  const auto all = testing::enumerate_feasible(problem);
  return all[rng() % all.size()];
}

std::string worst_mismatch(double found, double expected) {
  std::ostringstream s;
  s << "got " << found << ", expected " << expected;
  return s.str();
}

// 1. CVaR equals its linear-programming dual form.
Outcome cvar_duality() {
  std::mt19937_64 rng(101);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const int n = uniform_int(rng, 1, 20), N = uniform_int(rng, 1, 10);
    const EmpiricalDistribution d(testing::random_samples(rng, n, N, testing::random_upper(rng, n), trial % 3 == 0));
    const Binary x = random_binary(rng, n);
    const double alpha = trial % 2 == 0 ? uniform_int(rng, 1, N) / static_cast<double>(N) : uniform(rng, 0.01, 1.0);
    const double a = cvar_discrete(d, x, alpha), b = cvar_lp(d, x, alpha);
    worst = std::max(worst, std::abs(a - b) / std::max(1.0, std::abs(a)));
  }
  return {worst <= 1e-8, "500 triples, max relative difference " + num(worst)};
}

// 2. The CVaR mixed-integer model against enumeration.
Outcome cvar_mip_vs_enumeration() {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = uniform_int(rng, 2, 12), N = uniform_int(rng, 1, 5);
    const FeasibleSet X = random_problem(rng, n);
    const EmpiricalDistribution d(testing::random_samples(rng, n, N, testing::random_upper(rng, n), trial % 2 == 0));
    const double alpha = uniform(rng, 0.05, 1.0);
    const auto mip = solve_cvar(X, d, alpha);
    const auto oracle = brute_minimize(X, [&](const Binary& x) { return cvar_discrete(d, x, alpha); });
    if (std::abs(mip.objective - oracle.value) > 1e-6) {
      return {false, "trial " + std::to_string(trial) + ": " + worst_mismatch(mip.objective, oracle.value)};
    }
  }
  return {true, "100 knapsack/selection instances"};
}

// 3. Unrestricted-support solver against enumeration of the closed-form value.
Outcome unrestricted_consistency() {
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = uniform_int(rng, 2, 12), N = uniform_int(rng, 1, 4);
    const FeasibleSet X = random_problem(rng, n);
    const EmpiricalDistribution d(testing::random_samples(rng, n, N, testing::random_upper(rng, n)));
    const double alpha = uniform(rng, 0.05, 1.0);
    const Norm q = trial % 2 == 0 ? Norm::kL1 : Norm::kLInf;
    const auto spec = AmbiguitySpec::make(uniform(rng, 0.0, 0.5), q);
    const auto r = solve_distr_unrestricted(X, d, spec, alpha);
    const auto oracle = brute_minimize(X, [&](const Binary& x) { return worst_value_unrestricted(x, d, spec, alpha); });
    if (std::abs(r.objective - oracle.value) > 1e-6) {
      return {false, "trial " + std::to_string(trial) + ": " + worst_mismatch(r.objective, oracle.value)};
    }
    if (q == Norm::kL1) {
      const auto cvar = solve_cvar(X, d, alpha);
      if (std::abs(cvar_discrete(d, r.x, alpha) - cvar.objective) > 1e-6) {
        return {false, "trial " + std::to_string(trial) + ": q=1 argmin is not a CVaR minimizer"};
      }
    }
  }
  return {true, "100 instances, q in {1, inf}"};
}

// 4. Box support with q = 1: adversary vs closed form, two-solve vs brute force.
Outcome box_q1_cross_oracle() {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = uniform_int(rng, 2, 8), N = uniform_int(rng, 1, 4), l = uniform_int(rng, 1, N);
    const double alpha = static_cast<double>(l) / N;
    const FeasibleSet X = random_problem(rng, n);
    const Vector upper = testing::random_upper(rng, n);
    const SupportSet box = SupportSet::box(Vector(n, 0.0), upper);
    const EmpiricalDistribution d(testing::random_samples(rng, n, N, upper, trial % 2 == 0));
    const double eps = uniform(rng, 0.0, 0.6);
    const auto spec = AmbiguitySpec::make(eps, Norm::kL1);
    const RiskSpec risk(alpha, N);
    const Binary x = random_feasible(rng, X);
    const double adversary = worst_distribution(x, d, box, spec, risk).value;
    const double closed = closed_form_box_q1(x, d, upper, eps, l);
    if (std::abs(adversary - closed) > 1e-6) {
      return {false, "trial " + std::to_string(trial) + " adversary: " + worst_mismatch(adversary, closed)};
    }
    const auto two = solve_box_q1_two_solve(X, d, box, eps, alpha);
    const auto oracle =
        brute_minimize(X, [&](const Binary& y) { return worst_distribution(y, d, box, spec, risk).value; });
    if (std::abs(two.objective - oracle.value) > 1e-6) {
      return {false, "trial " + std::to_string(trial) + " two-solve: " + worst_mismatch(two.objective, oracle.value)};
    }
  }
  return {true, "100 box instances"};
}

// 5. Row generation against brute force, with monotone bounds.
Outcome row_generation() {
  std::mt19937_64 rng(505);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = uniform_int(rng, 2, 12), N = uniform_int(rng, 1, 4), l = uniform_int(rng, 1, N);
    const FeasibleSet X = random_problem(rng, n);
    const Vector upper = testing::random_upper(rng, n);
    const SupportSet box = SupportSet::box(Vector(n, 0.0), upper);
    const EmpiricalDistribution d(testing::random_samples(rng, n, N, upper));
    const auto spec = AmbiguitySpec::make(uniform(rng, 0.0, 0.5), trial % 2 == 0 ? Norm::kL1 : Norm::kLInf);
    const RiskSpec risk(static_cast<double>(l) / N, N);
    RowGenOptions options;
    options.rel_gap = 1e-4;
    RowGenTrace trace;
    const auto r = solve_distr_rowgen(X, d, box, spec, risk, options, &trace);
    const double certified = worst_distribution(r.x, d, box, spec, risk).value;
    const auto oracle =
        brute_minimize(X, [&](const Binary& y) { return worst_distribution(y, d, box, spec, risk).value; });
    const double rel = (certified - oracle.value) / std::max(1e-12, std::abs(oracle.value));
    worst = std::max(worst, rel);
    if (rel > 1e-4 || trace.termination != "gap") {
      return {false, "trial " + std::to_string(trial) + ": " + worst_mismatch(certified, oracle.value) + " (" +
                         trace.termination + ")"};
    }
    for (std::size_t k = 1; k < trace.iterations.size(); ++k) {
      if (trace.iterations[k].lower < trace.iterations[k - 1].lower ||
          trace.iterations[k].upper > trace.iterations[k - 1].upper) {
        return {false, "trial " + std::to_string(trial) + ": non-monotone bounds"};
      }
    }
  }
  return {true, "50 instances, worst relative excess " + num(worst)};
}

// 6. Min-max selection reduces to CVaR selection.
Outcome reduction() {
  std::mt19937_64 rng(606);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = uniform_int(rng, 2, 8), K = uniform_int(rng, 1, 3);
    const RepSelectionInstance rs = testing::random_rep_selection(rng, n);
    const auto scenarios = testing::random_samples(rng, n, K, Vector(n, 10.0), trial % 2 == 0);
    const double alpha = std::array<double, 3>{0.3, 0.5, 0.7}[trial % 3];
    const ReducedInstance red = reduce_minmax_rs_to_cvar_rs(rs, scenarios, alpha);
    if (!((red.l - 1.0) / red.N < alpha && alpha <= static_cast<double>(red.l) / red.N + kFractionTol)) {
      return {false, "trial " + std::to_string(trial) + ": (l, N) does not bracket alpha"};
    }
    const auto minmax = brute_minimize(encode(rs), [&](const Binary& x) {
      double m = 0.0;
      for (const auto& s : scenarios) m = std::max(m, cost_of(s, x));
      return m;
    });
    const double cvar = solve_cvar(encode(red.problem), red.distribution, red.alpha).objective;
    if (std::abs(cvar - red.value_map(minmax.value)) > 1e-6 * std::max(1.0, std::abs(cvar))) {
      return {false, "trial " + std::to_string(trial) + ": " + worst_mismatch(cvar, red.value_map(minmax.value))};
    }
  }
  return {true, "50 selection instances, alpha in {0.3, 0.5, 0.7}"};
}

// 7. The distortion guarantee.
Outcome distortion_guarantee() {
  std::mt19937_64 rng(707);
  double tightest = milp::kInf;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = uniform_int(rng, 2, 10), N = uniform_int(rng, 1, 4), l = uniform_int(rng, 1, N);
    const double alpha = static_cast<double>(l) / N;
    const FeasibleSet X = random_problem(rng, n);
    const Vector upper = testing::random_upper(rng, n);
    const SupportSet box = SupportSet::box(Vector(n, 0.0), upper);
    const EmpiricalDistribution d(testing::random_samples(rng, n, N, upper));
    const auto spec = AmbiguitySpec::make(uniform(rng, 0.01, 0.5), trial % 2 == 0 ? Norm::kL1 : Norm::kLInf);
    const RiskSpec risk(alpha, N);
    const auto a = solve_distr_approx(X, d, box, spec, alpha);
    const double achieved = worst_distribution(a.solution.x, d, box, spec, risk).value;
    const auto oracle =
        brute_minimize(X, [&](const Binary& y) { return worst_distribution(y, d, box, spec, risk).value; });
    if (!a.certified || std::abs(a.b - 1.0) > 1e-12 || std::abs(a.certified_ratio - a.plan.c) > 1e-12) {
      return {false, "trial " + std::to_string(trial) + ": box certificate should be b = 1, ratio = c"};
    }
    if (achieved > a.certified_ratio * oracle.value + 1e-9) {
      return {false, "trial " + std::to_string(trial) + ": ratio " + num(achieved / oracle.value) +
                         " exceeds " + num(a.certified_ratio)};
    }
    if (oracle.value > 0) tightest = std::min(tightest, a.certified_ratio - achieved / oracle.value);
  }
  return {true, "50 box instances, smallest slack to the certified ratio " + num(tightest)};
}

// 8. Approximation ratios of the mean-based heuristics.
Outcome heuristic_ratios() {
  std::mt19937_64 rng(808);
  double worst_mean = 0.0, worst_gamma = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = uniform_int(rng, 2, 10), N = uniform_int(rng, 1, 6);
    const FeasibleSet X = random_problem(rng, n);
    const EmpiricalDistribution d(testing::random_samples(rng, n, N, testing::random_upper(rng, n)));
    const double alpha = uniform(rng, 0.05, 1.0);
    const double bound = std::min<double>(N, 1.0 / alpha);
    const auto opt = brute_minimize(X, [&](const Binary& x) { return cvar_discrete(d, x, alpha); });
    const auto h = mean_heuristic(X, d, alpha);
    const double mean_value = cvar_discrete(d, h.solution.x, alpha);
    const auto spec = AmbiguitySpec::make(uniform(rng, 0.0, 0.5), trial % 3 == 0 ? Norm::kL2 : Norm::kLInf);
    const auto opt_u =
        brute_minimize(X, [&](const Binary& x) { return worst_value_unrestricted(x, d, spec, alpha); });
    const auto g = gamma_approx_heuristic(X, d, spec, alpha);
    const double gamma_value = worst_value_unrestricted(g.solution.x, d, spec, alpha);
    const double r1 = opt.value > 0 ? mean_value / opt.value : (mean_value <= 1e-12 ? 1.0 : milp::kInf);
    const double r2 = opt_u.value > 0 ? gamma_value / opt_u.value : (gamma_value <= 1e-12 ? 1.0 : milp::kInf);
    worst_mean = std::max(worst_mean, r1 / bound);
    worst_gamma = std::max(worst_gamma, r2 / bound);
    if (r1 > bound * (1 + 1e-9) || r2 > bound * (1 + 1e-9)) {
      return {false, "trial " + std::to_string(trial) + ": ratios " + num(r1) + ", " +
                         num(r2) + " exceed " + std::to_string(bound)};
    }
  }
  return {true, "100 instances, largest ratio/bound " + num(std::max(worst_mean, worst_gamma))};
}

// Pinned seed for the reduced sweep; changing it requires review.
constexpr std::uint64_t kSweepSeed = 20240601;

ExperimentConfig reduced_exp1() {
  ExperimentConfig c = default_config(ExperimentKind::kExp1);
  c.n = 40;
  c.N = 15;
  c.samples = 5;
  c.mc_draws = 20000;
  c.epsilons = arithmetic_grid(0.01, 10);
  c.q = Norm::kLInf;
  c.alpha = 0.2;
  c.seed = kSweepSeed;
  // Cells that have not converged by then record "max_iter" with their
  // certified upper bound.
  c.rowgen.max_iter = 50;
  return c;
}

// 9. Distortion beats the sample-average solution at some radius.
Outcome qualitative_sweep() {
  const SweepResult r = run_experiment(reduced_exp1());
  int improved = 0, errors = 0;
  std::ostringstream detail;
  for (int s = 0; s < r.config.samples; ++s) {
    double saa = milp::kInf, best = milp::kInf;
    for (const auto& rec : r.records) {
      if (rec.sample_id != s) continue;
      if (rec.status == "error") ++errors;
      if (rec.method == Method::kSaa) saa = rec.q90;
      if (rec.method == Method::kDistort) best = std::min(best, rec.q90);
    }
    if (best <= saa) ++improved;
    detail << (s == 0 ? "" : "; ") << "sample " << s << " SAA " << saa << " best Distort " << best;
  }
  return {improved >= 3 && errors == 0,
          std::to_string(improved) + "/5 samples improved, " + std::to_string(errors) + " errors (" + detail.str() +
              ")"};
}

// 10. Byte-identical outputs across repeated runs and thread counts.
Outcome determinism() {
  std::mt19937_64 rng(1010);
  const int n = 10, N = 4;
  const FeasibleSet X = encode(testing::random_knapsack(rng, n));
  const Vector upper = testing::random_upper(rng, n);
  const SupportSet box = SupportSet::box(Vector(n, 0.0), upper);
  const EmpiricalDistribution d(testing::random_samples(rng, n, N, upper));
  const auto spec_inf = AmbiguitySpec::make(0.2, Norm::kLInf);
  const auto spec_2 = AmbiguitySpec::make(0.2, Norm::kL2);
  const RiskSpec risk(0.5, N);

  auto snapshot = [&](int threads, Execution mode) {
    set_thread_count(threads);
    Json all;
    all["cvar"] = to_json(solve_cvar(X, d, 0.5));
    RowGenOptions options;
    options.adversary.execution = mode;
    RowGenTrace trace;
    all["rowgen"] = to_json(solve_distr_rowgen(X, d, box, spec_inf, risk, options, &trace));
    all["trace"] = to_json(trace);
    all["two_solve"] = to_json(solve_box_q1_two_solve(X, d, box, 0.2, 0.5));
    all["lambda"] = to_json(solve_lambda_family(X, d, spec_2, 0.5, 1e-9, mode).best);
    all["approx"] = to_json(solve_distr_approx(X, d, box, spec_inf, 0.5).solution);
    AdversaryOptions adv;
    adv.execution = mode;
    all["worst"] = to_json(worst_distribution(Binary(n, 1), d, box, spec_2, risk, adv));
    ExperimentConfig c = default_config(ExperimentKind::kExp1);
    c.n = 12;
    c.N = 5;
    c.samples = 2;
    c.alpha = 0.2;
    c.mc_draws = 2000;
    c.epsilons = {0.0, 0.05, 0.1};
    std::ostringstream csv;
    write_csv(run_experiment(c, mode), csv);
    all["csv"] = csv.str();
    return all.dump();
  };
  const std::string a = snapshot(1, Execution::kSerial);
  const std::string b = snapshot(4, Execution::kParallel);
  const std::string c = snapshot(4, Execution::kParallel);
  set_thread_count(0);
  return {a == b && b == c, a == b && b == c ? "solver JSON and sweep CSV identical for 1 and 4 threads"
                                             : "outputs differ between runs"};
}

}  // namespace
}  // namespace wdro

int main() {
  using Check = std::function<wdro::Outcome()>;
  const std::vector<std::pair<const char*, Check>> criteria = {
      {"cvar duality", wdro::cvar_duality},
      {"cvar MIP vs enumeration", wdro::cvar_mip_vs_enumeration},
      {"unrestricted support vs enumeration", wdro::unrestricted_consistency},
      {"box q=1 closed form and two-solve", wdro::box_q1_cross_oracle},
      {"row generation vs brute force", wdro::row_generation},
      {"min-max selection reduction", wdro::reduction},
      {"distortion guarantee", wdro::distortion_guarantee},
      {"heuristic approximation ratios", wdro::heuristic_ratios},
      {"reduced sweep: distortion vs SAA quantile", wdro::qualitative_sweep},
      {"determinism", wdro::determinism},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    wdro::Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %zu (%s): %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", k + 1, criteria[k].first,
                o.detail.c_str(), seconds);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  return failed;
}
