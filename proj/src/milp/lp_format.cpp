#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "wdro/milp.hpp"

namespace wdro::milp {

namespace {

void write_terms(std::ostream& out, const std::vector<double>& coeffs) {
  bool first = true;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    const double a = coeffs[j];
    if (a == 0.0) continue;
    if (first) {
      out << (a < 0 ? "- " : "");
    } else {
      out << (a < 0 ? " - " : " + ");
    }
    out << std::abs(a) << " x" << j;
    first = false;
  }
  if (first) out << "0 x0";
}

}  // namespace

void write_lp_text(const MixedModel& model, std::ostream& out) {
  const auto& lp = model.lp;
  out << std::setprecision(17);
  out << "Minimize\n obj: ";
  write_terms(out, lp.objective);
  out << "\nSubject To\n";
  for (int i = 0; i < lp.num_rows(); ++i) {
    const auto& row = lp.rows[i];
    out << " c" << i << ": ";
    write_terms(out, row.coeffs);
    switch (row.relation) {
      case Relation::kLessEqual: out << " <= "; break;
      case Relation::kGreaterEqual: out << " >= "; break;
      case Relation::kEqual: out << " = "; break;
    }
    out << row.rhs << "\n";
  }
  const std::unordered_set<int> binary(model.binaries.begin(), model.binaries.end());
  out << "Bounds\n";
  for (int j = 0; j < lp.num_vars(); ++j) {
    if (binary.count(j) != 0) continue;
    const double lo = lp.lower[j];
    const double hi = lp.upper[j];
    if (std::isinf(lo) && std::isinf(hi)) {
      out << " x" << j << " free\n";
    } else if (std::isinf(hi)) {
      out << " x" << j << " >= " << lo << "\n";
    } else if (std::isinf(lo)) {
      out << " -inf <= x" << j << " <= " << hi << "\n";
    } else {
      out << " " << lo << " <= x" << j << " <= " << hi << "\n";
    }
  }
  if (!model.binaries.empty()) {
    out << "Binaries\n";
    for (int j : model.binaries) out << " x" << j << "\n";
  }
  out << "End\n";
}

std::string to_lp_text(const MixedModel& model) {
  std::ostringstream out;
  write_lp_text(model, out);
  return out.str();
}

}  // namespace wdro::milp
