#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>
#include <utility>

#include <boost/math/distributions/normal.hpp>

#include "wdro/errors.hpp"
#include "wdro/experiments.hpp"

namespace wdro {

std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> path) {
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32)};
  for (std::uint64_t p : path) {
    words.push_back(static_cast<std::uint32_t>(p));
    words.push_back(static_cast<std::uint32_t>(p >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

SupportSet GeneratedInstance::support() const {
  Vector lo(laws.size()), hi(laws.size());
  for (std::size_t j = 0; j < laws.size(); ++j) {
    lo[j] = laws[j].lower;
    hi[j] = laws[j].upper;
  }
  return SupportSet::box(std::move(lo), std::move(hi));
}

GeneratedInstance generate_instance(int n, std::uint64_t seed) {
  if (n < 1) throw InvalidInput("instance size n must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  GeneratedInstance g;
  g.seed = seed;
  g.knapsack.weights.resize(n);
  g.shift.resize(n);
  g.spread.resize(n);
  for (double& w : g.knapsack.weights) w = unit(rng);
  for (double& a : g.shift) a = unit(rng);
  for (double& b : g.spread) b = unit(rng);
  g.knapsack.capacity = 0.4 * std::accumulate(g.knapsack.weights.begin(), g.knapsack.weights.end(), 0.0);
  for (int j = 0; j < n; ++j) {
    const double w = g.knapsack.weights[j];
    const double lo = std::max(0.0, w - g.shift[j]);
    g.laws.push_back(ItemLaw{w, 0.7 * w, lo, lo + 2.0 * g.spread[j]});
  }
  return g;
}

namespace {

const boost::math::normal& standard_normal() {
  static const boost::math::normal z(0.0, 1.0);
  return z;
}

}  // namespace

ItemSampler::ItemSampler(const ItemLaw& law) : law_(law) {
  if (law.sd <= 0.0 || law.upper <= law.lower) {
    point_mass_ = true;
    return;
  }
  a_ = (law.lower - law.mean) / law.sd;
  b_ = (law.upper - law.mean) / law.sd;
  // CDF differences keep their precision in the lower tail.
  mirrored_ = a_ > 0.0;
  if (mirrored_) std::tie(a_, b_) = std::pair(-b_, -a_);
  cdf_a_ = boost::math::cdf(standard_normal(), a_);
  cdf_b_ = boost::math::cdf(standard_normal(), b_);
  acceptance_ = cdf_b_ - cdf_a_;
}

double ItemSampler::operator()(std::mt19937_64& rng) const {
  if (point_mass_) return std::clamp(law_.mean, law_.lower, law_.upper);
  if (acceptance_ >= 0.01) {
    std::normal_distribution<double> parent(law_.mean, law_.sd);
    while (true) {
      const double v = parent(rng);
      if (v >= law_.lower && v <= law_.upper) return v;
    }
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double z;
  if (cdf_b_ > cdf_a_ && cdf_a_ > 0.0) {
    const double u = std::clamp(cdf_a_ + unit(rng) * (cdf_b_ - cdf_a_), cdf_a_, cdf_b_);
    z = boost::math::quantile(standard_normal(), u);
  } else {
    // The CDF underflows on the whole interval; its mass sits at the end
    // nearest the mean.
    z = b_;
  }
  return std::clamp(law_.mean + (mirrored_ ? -z : z) * law_.sd, law_.lower, law_.upper);
}

double acceptance_probability(const ItemLaw& law) { return ItemSampler(law).acceptance(); }

double sample_item(const ItemLaw& law, std::mt19937_64& rng) { return ItemSampler(law)(rng); }

EmpiricalDistribution sample_costs(const GeneratedInstance& instance, int N, std::uint64_t seed) {
  if (N < 1) throw InvalidInput("sample size N must be >= 1");
  std::mt19937_64 rng(seed);
  const std::vector<ItemSampler> samplers(instance.laws.begin(), instance.laws.end());
  std::vector<Vector> realizations(N, Vector(instance.size()));
  for (auto& xi : realizations) {
    for (int j = 0; j < instance.size(); ++j) xi[j] = samplers[j](rng);
  }
  return EmpiricalDistribution(std::move(realizations));
}

}  // namespace wdro
