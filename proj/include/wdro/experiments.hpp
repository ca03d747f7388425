#pragma once

// Random knapsack instances with truncated-normal item costs, Monte Carlo
// quantile evaluation and the epsilon sweeps comparing the sample-average
// solution with the robust ones.

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "wdro/model.hpp"
#include "wdro/parallel.hpp"
#include "wdro/problems.hpp"
#include "wdro/rowgen.hpp"

namespace wdro {

// Normal(mean, sd) conditioned on [lower, upper].
struct ItemLaw {
  double mean = 0.0;
  double sd = 0.0;
  double lower = 0.0;
  double upper = 0.0;
};

struct GeneratedInstance {
  KnapsackInstance knapsack;
  Vector shift;   // alpha_i in xi_low = max(0, w_i - alpha_i)
  Vector spread;  // beta_i in xi_high = xi_low + 2 beta_i
  std::vector<ItemLaw> laws;
  std::uint64_t seed = 0;

  int size() const { return static_cast<int>(laws.size()); }
  SupportSet support() const;
};

// Deterministic child seed for a path of indices below `base`.
std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path);

GeneratedInstance generate_instance(int n, std::uint64_t seed);

// Rejection from the parent normal, or inverse-CDF sampling when the
// acceptance probability is below 1%. Degenerate laws are point masses.
class ItemSampler {
 public:
  explicit ItemSampler(const ItemLaw& law);

  double operator()(std::mt19937_64& rng) const;
  double acceptance() const { return acceptance_; }

 private:
  ItemLaw law_;
  bool point_mass_ = false;
  bool mirrored_ = false;  // interval lies above the mean; sample its mirror image
  double a_ = 0.0;         // standardized interval, after mirroring
  double b_ = 0.0;
  double cdf_a_ = 0.0;
  double cdf_b_ = 0.0;
  double acceptance_ = 1.0;
};

double sample_item(const ItemLaw& law, std::mt19937_64& rng);
double acceptance_probability(const ItemLaw& law);

EmpiricalDistribution sample_costs(const GeneratedInstance& instance, int N, std::uint64_t seed);

// Order statistic ceil(level M) of xi^T x over M fresh draws. Draws come in
// fixed blocks with one stream per (block, item), so the value does not
// depend on the thread count and equal seeds give paired draws for every x.
double estimate_quantile(const Binary& x, const GeneratedInstance& instance, double level, std::int64_t draws,
                         std::uint64_t seed, Execution execution = Execution::kParallel);

// The M cost draws behind estimate_quantile, in draw order.
Vector simulate_costs(const Binary& x, const GeneratedInstance& instance, std::int64_t draws, std::uint64_t seed,
                      Execution execution = Execution::kParallel);

enum class Method { kSaa, kRowGen, kDistort };
const char* to_string(Method method);
Method method_from_string(const std::string& name);

enum class ExperimentKind { kExp1, kExp2 };
ExperimentKind experiment_kind_from_string(const std::string& name);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kExp1;
  int n = 100;
  int N = 30;
  int samples = 10;
  double alpha = 0.1;
  Vector epsilons;
  Norm q = Norm::kLInf;
  std::vector<Method> methods;
  std::uint64_t seed = 1;
  std::int64_t mc_draws = 100000;
  double level = 0.9;
  double gap_tol = 1e-9;
  RowGenOptions rowgen;
};

// exp1: alpha 0.1, epsilon = 0.0025 k up to 0.1, all three methods.
// exp2: alpha 0.5, epsilon = 0.0025 k up to 1, SAA and Distort.
ExperimentConfig default_config(ExperimentKind kind);
Vector arithmetic_grid(double step, int count);

struct SweepRecord {
  int sample_id = 0;
  double epsilon = 0.0;
  Method method = Method::kSaa;
  Binary x;
  double objective = 0.0;  // empirical CVaR of x on the sample
  double q90 = 0.0;
  double solve_ms = 0.0;
  std::string status;
};

struct SweepResult {
  ExperimentConfig config;
  GeneratedInstance instance;
  std::vector<SweepRecord> records;  // ordered by (sample, epsilon, method)
};

SweepResult run_experiment(const ExperimentConfig& config, Execution execution = Execution::kParallel);

// sample_id,epsilon,method,objective,q90,solve_ms,status. Without timing the
// solve_ms column is written as 0 so that reruns are byte-identical.
void write_csv(const SweepResult& result, std::ostream& out, bool with_timing = false);

// One quantile-versus-epsilon chart per sample plus the average over samples;
// returns the written paths.
std::vector<std::string> write_plots(const SweepResult& result, const std::string& directory);

}  // namespace wdro
