#pragma once

#include <memory>
#include <vector>

#include "wdro/milp.hpp"

namespace wdro::milp::detail {

// solve_lp with the variable bounds of `lp` replaced by `lower`/`upper`.
// Used by branch-and-bound to avoid copying the constraint matrix per node.
SolveReport solve_lp_bounds(const LinearProgram& lp, const std::vector<double>& lower,
                            const std::vector<double>& upper, const SimplexOptions& options);

// Final tableau of an optimal solve, reusable as a starting basis after the
// bounds change.
class WarmState;

struct WarmSolve {
  SolveReport report;
  std::shared_ptr<const WarmState> state;  // set when the solve is optimal
};

WarmSolve solve_lp_warm(const LinearProgram& lp, const std::vector<double>& lower,
                        const std::vector<double>& upper, const SimplexOptions& options,
                        const WarmState* start);

std::size_t footprint(const WarmState& state);

}  // namespace wdro::milp::detail
