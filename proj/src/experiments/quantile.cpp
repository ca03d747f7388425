#include <algorithm>
#include <cmath>

#include "wdro/errors.hpp"
#include "wdro/experiments.hpp"

namespace wdro {

namespace {

constexpr std::int64_t kBlock = 4096;

void fill_block(const Binary& x, const std::vector<ItemSampler>& samplers, std::uint64_t seed, std::int64_t block,
                double* out, std::int64_t len) {
  std::fill(out, out + len, 0.0);
  for (std::size_t j = 0; j < samplers.size(); ++j) {
    if (x[j] == 0) continue;
    std::mt19937_64 rng(derive_seed(seed, {static_cast<std::uint64_t>(block), static_cast<std::uint64_t>(j)}));
    for (std::int64_t k = 0; k < len; ++k) out[k] += samplers[j](rng);
  }
}

}  // namespace

Vector simulate_costs(const Binary& x, const GeneratedInstance& instance, std::int64_t draws, std::uint64_t seed,
                      Execution execution) {
  if (draws < 1) throw InvalidInput("the Monte Carlo sample size must be >= 1");
  if (static_cast<int>(x.size()) != instance.size()) throw InvalidInput("solution dimension mismatch");
  const std::vector<ItemSampler> samplers(instance.laws.begin(), instance.laws.end());
  Vector costs(static_cast<std::size_t>(draws));
  const std::int64_t blocks = (draws + kBlock - 1) / kBlock;
  if (execution == Execution::kSerial) {
    for (std::int64_t b = 0; b < blocks; ++b) {
      fill_block(x, samplers, seed, b, &costs[b * kBlock], std::min(kBlock, draws - b * kBlock));
    }
  } else {
#pragma omp parallel for schedule(static)
    for (std::int64_t b = 0; b < blocks; ++b) {
      fill_block(x, samplers, seed, b, &costs[b * kBlock], std::min(kBlock, draws - b * kBlock));
    }
  }
  return costs;
}

double estimate_quantile(const Binary& x, const GeneratedInstance& instance, double level, std::int64_t draws,
                         std::uint64_t seed, Execution execution) {
  if (!(level > 0.0 && level <= 1.0)) throw InvalidInput("quantile level must lie in (0, 1]");
  Vector costs = simulate_costs(x, instance, draws, seed, execution);
  auto rank = static_cast<std::int64_t>(std::ceil(level * static_cast<double>(draws) - 1e-9));
  rank = std::clamp<std::int64_t>(rank, 1, draws);
  std::nth_element(costs.begin(), costs.begin() + (rank - 1), costs.end());
  return costs[rank - 1];
}

}  // namespace wdro
