#pragma once

// Row generation for bounded supports: the master minimizes z subject to
// zeta^T x <= z over a growing set of cuts, and the adversary supplies the
// worst distribution of each master solution as a new cut.

#include <iosfwd>
#include <string>
#include <vector>

#include "wdro/model.hpp"
#include "wdro/worst_case.hpp"

namespace wdro {

struct Cut {
  Vector zeta;       // average of l support points
  int iteration = 0; // 0 for the initial cut
  Binary source;     // master solution that produced it; empty for the initial cut
};

struct RowGenIteration {
  int iteration = 0;
  double lower = 0.0;
  double upper = 0.0;
  double gap = 0.0;
  Binary x;
  double adversary_value = 0.0;
  double adversary_ms = 0.0;
  bool duplicate_cut = false;
};

struct RowGenTrace {
  std::vector<Cut> cuts;
  std::vector<RowGenIteration> iterations;
  std::string termination;  // "gap", "max_iter" or "stalled"
};

struct RowGenOptions {
  double rel_gap = 1e-4;
  int max_iter = 200;
  double master_gap_tol = 1e-9;
  AdversaryOptions adversary;
};

// Requires alpha = l/N exactly and a bounded support. The objective is the
// certified worst-case CVaR of the incumbent, the bound the master value.
SolveResult solve_distr_rowgen(const FeasibleSet& problem, const EmpiricalDistribution& dist,
                               const SupportSet& support, const AmbiguitySpec& spec, const RiskSpec& risk,
                               const RowGenOptions& options = {}, RowGenTrace* trace = nullptr);

// Average of the l costliest realizations of the certificate under x (ties by
// index).
Vector generate_cut(const WorstCaseCertificate& certificate, const Binary& x, int l);

// iteration,z_lb,z_ub,gap,adversary_ms
void write_trace_csv(const RowGenTrace& trace, std::ostream& out);

}  // namespace wdro
