#include "wdro/worst_case.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "worst_case_internal.hpp"
#include "wdro/errors.hpp"
#include "wdro/risk.hpp"

namespace wdro {

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  std::int64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    const std::int64_t num = n - k + i;
    if (c > kMax / num) return kMax;
    c = c * num / i;
  }
  return c;
}

namespace {

// All k-subsets of {0..n-1} in lexicographic order, flattened.
std::vector<int> all_subsets(int n, int k, std::int64_t count) {
  std::vector<int> flat;
  flat.reserve(static_cast<std::size_t>(count) * k);
  std::vector<int> comb(k);
  for (int i = 0; i < k; ++i) comb[i] = i;
  while (true) {
    flat.insert(flat.end(), comb.begin(), comb.end());
    int i = k - 1;
    while (i >= 0 && comb[i] == n - k + i) --i;
    if (i < 0) break;
    ++comb[i];
    for (int j = i + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
  }
  return flat;
}

class SubsetScorer {
 public:
  SubsetScorer(const Binary& x, const EmpiricalDistribution& dist, const SupportSet& support, double budget,
               Norm q, const AdversaryOptions& options)
      : x_(x), dist_(dist), support_(support), budget_(budget), q_(q), options_(options) {
    base_ = dist.costs(x);
    if (support.kind() == SupportKind::kBox) {
      const auto coords = detail::support_of(x);
      for (int i = 0; i < dist.size(); ++i) rows_.push_back(detail::make_headroom_row(dist[i], support.upper(), coords));
    }
  }

  // l * (value of the best lift of this subset).
  double score(const int* subset, int l) const {
    double base = 0.0;
    for (int a = 0; a < l; ++a) base += base_[subset[a]];
    if (support_.kind() != SupportKind::kBox) {
      const std::vector<int> members(subset, subset + l);
      return base + polytope_lift(x_, members, dist_, support_, budget_, q_, options_).gain;
    }
    if (q_ == Norm::kL1) {
      double room = 0.0;
      for (int a = 0; a < l; ++a) room += rows_[subset[a]].total;
      return base + std::min(budget_, room);
    }
    std::vector<const detail::HeadroomRow*> ptrs(l);
    for (int a = 0; a < l; ++a) ptrs[a] = &rows_[subset[a]];
    const auto alloc = q_ == Norm::kLInf
                           ? detail::allocate_linf(ptrs, budget_)
                           : detail::allocate_l2(ptrs, budget_, options_.tolerance, options_.frank_wolfe_iterations);
    return base + alloc.gain;
  }

 private:
  const Binary& x_;
  const EmpiricalDistribution& dist_;
  const SupportSet& support_;
  double budget_;
  Norm q_;
  const AdversaryOptions& options_;
  Vector base_;
  std::vector<detail::HeadroomRow> rows_;
};

std::int64_t best_subset(const SubsetScorer& scorer, const std::vector<int>& flat, int l, std::int64_t count,
                         Execution execution) {
  Vector scores(static_cast<std::size_t>(count));
  if (execution == Execution::kSerial) {
    for (std::int64_t s = 0; s < count; ++s) scores[s] = scorer.score(&flat[s * l], l);
  } else {
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 64)
    for (std::int64_t s = 0; s < count; ++s) {
      try {
        scores[s] = scorer.score(&flat[s * l], l);
      } catch (...) {
#pragma omp critical(wdro_subset_failure)
        if (!failure) failure = std::current_exception();
      }
    }
    if (failure) std::rethrow_exception(failure);
  }
  std::int64_t best = 0;
  for (std::int64_t s = 1; s < count; ++s) {
    if (scores[s] > scores[best]) best = s;
  }
  return best;
}

WorstCaseCertificate assemble(const Binary& x, const EmpiricalDistribution& dist, const SupportSet* support,
                              double alpha, Norm q, const std::vector<int>& subset,
                              const std::vector<Vector>& deltas) {
  std::vector<Vector> moved = dist.realizations();
  double used = 0.0;
  for (std::size_t a = 0; a < subset.size(); ++a) {
    Vector& xi = moved[subset[a]];
    for (std::size_t j = 0; j < xi.size(); ++j) {
      double v = xi[j] + deltas[a][j];
      if (support != nullptr) v = std::clamp(v, support->lower()[j], std::max(support->lower()[j], support->upper()[j]));
      xi[j] = std::max(0.0, v);
    }
    Vector diff(xi.size());
    for (std::size_t j = 0; j < xi.size(); ++j) diff[j] = xi[j] - dist[subset[a]][j];
    used += norm(diff, q);
  }
  std::vector<int> sorted_subset = subset;
  std::sort(sorted_subset.begin(), sorted_subset.end());
  EmpiricalDistribution out(std::move(moved));
  const double value = cvar_discrete(out, x, alpha);
  return WorstCaseCertificate{std::move(out), value, std::move(sorted_subset), used};
}

}  // namespace

WorstCaseCertificate worst_distribution(const Binary& x, const EmpiricalDistribution& dist,
                                        const SupportSet& support, const AmbiguitySpec& spec,
                                        const RiskSpec& risk, const AdversaryOptions& options) {
  if (!support.bounded()) {
    throw InvalidInput("the subset adversary needs a bounded support; use the unrestricted closed form");
  }
  if (!risk.is_exact_fraction()) {
    throw InvalidInput("the adversary needs alpha = l/N exactly; round alpha to a multiple of 1/N");
  }
  if (risk.sample_size() != dist.size()) throw InvalidInput("risk spec and distribution disagree on N");
  if (static_cast<int>(x.size()) != dist.dimension()) throw InvalidInput("solution dimension mismatch");
  if (!validate_support_membership(dist, support)) throw InvalidInput("samples must lie in the support");
  AmbiguitySpec::make(spec.epsilon, spec.q);

  const int N = dist.size();
  const int l = risk.l();
  const double budget = N * spec.epsilon;
  const std::int64_t count = binomial(N, l);

  std::vector<int> subset;
  std::vector<Vector> deltas;
  if (count <= options.enumeration_limit) {
    const std::vector<int> flat = all_subsets(N, l, count);
    const SubsetScorer scorer(x, dist, support, budget, spec.q, options);
    const std::int64_t best = best_subset(scorer, flat, l, count, options.execution);
    subset.assign(flat.begin() + best * l, flat.begin() + (best + 1) * l);
    const Lift lift = support.kind() == SupportKind::kBox
                          ? inner_lift(x, subset, dist, support, budget, spec.q, options)
                          : polytope_lift(x, subset, dist, support, budget, spec.q, options);
    deltas = lift.deltas;
  } else {
    auto selection = detail::solve_selection_program(x, dist, support, budget, spec.q, l, options);
    subset = std::move(selection.subset);
    deltas = std::move(selection.deltas);
  }
  return assemble(x, dist, &support, risk.alpha(), spec.q, subset, deltas);
}

double closed_form_box_q1(const Binary& x, const EmpiricalDistribution& dist, const Vector& upper, double epsilon,
                          int l) {
  const int N = dist.size();
  if (l < 1 || l > N) throw InvalidInput("l must lie in 1..N");
  if (static_cast<int>(upper.size()) != dist.dimension()) throw InvalidInput("upper bound has the wrong dimension");
  if (!(epsilon >= 0.0)) throw InvalidInput("epsilon must be nonnegative");
  const auto box = SupportSet::box(Vector(upper.size(), 0.0), upper);
  if (!validate_support_membership(dist, box)) throw InvalidInput("samples must lie in [0, b]");
  const double cvar = cvar_discrete(dist, x, static_cast<double>(l) / N);
  return std::min(cost_of(upper, x), cvar + N * epsilon / l);
}

double unrestricted_gamma(double alpha, int N) {
  risk_bracket(alpha, N);
  return alpha * N < 1.0 - kFractionTol ? static_cast<double>(N) : 1.0 / alpha;
}

double worst_value_unrestricted(const Binary& x, const EmpiricalDistribution& dist, const AmbiguitySpec& spec,
                                double alpha) {
  AmbiguitySpec::make(spec.epsilon, spec.q);
  return cvar_discrete(dist, x, alpha) +
         unrestricted_gamma(alpha, dist.size()) * spec.epsilon * dual_norm_of_binary(x, spec.q);
}

WorstCaseCertificate worst_distribution_unrestricted(const Binary& x, const EmpiricalDistribution& dist,
                                                     const AmbiguitySpec& spec, double alpha) {
  AmbiguitySpec::make(spec.epsilon, spec.q);
  const int N = dist.size();
  const auto coords = detail::support_of(x);
  const int top = descending_order(dist.costs(x)).front();
  Vector delta(dist.dimension(), 0.0);
  const double budget = N * spec.epsilon;
  if (!coords.empty() && budget > 0.0) {
    switch (spec.q) {
      case Norm::kL1: delta[coords.front()] = budget; break;
      case Norm::kLInf:
        for (int j : coords) delta[j] = budget;
        break;
      case Norm::kL2:
        for (int j : coords) delta[j] = budget / std::sqrt(static_cast<double>(coords.size()));
        break;
    }
  }
  return assemble(x, dist, nullptr, alpha, spec.q, {top}, {delta});
}

}  // namespace wdro
