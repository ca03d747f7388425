#pragma once

// JSON exchange format for instances and solver outputs.
//
// Instance document:
//   { "n": 3,
//     "support": {"type": "box", "lower": [...], "upper": [...]},
//     "feasible_set": {"tag": "knapsack", "weights": [...], "capacity": 1.2},
//     "samples": [[...], ...], "alpha": 0.5, "epsilon": 0.1, "q": "inf" }
// Supports: unrestricted | box | polytope ("rows": [{"normal", "offset"}]).
// Feasible sets: knapsack | rep_selection ("groups") | dag_shortest_path
// ("vertices", "arcs", "source", "sink") | generic ("constraints":
// [{"coeffs", "sense": "<=" | ">=" | "=", "rhs"}]).

#include <optional>
#include <string>

#include "json.hpp"
#include "wdro/distort.hpp"
#include "wdro/problems.hpp"
#include "wdro/rowgen.hpp"
#include "wdro/worst_case.hpp"

namespace wdro {

using Json = nlohmann::ordered_json;

struct InstanceDocument {
  int n = 0;
  SupportSet support;
  FeasibleSet problem;
  std::optional<KnapsackInstance> knapsack;
  std::optional<RepSelectionInstance> rep_selection;
  std::optional<DagShortestPathInstance> dag;
  std::vector<Vector> samples;
  double alpha = 1.0;
  double epsilon = 0.0;
  Norm q = Norm::kL1;

  EmpiricalDistribution distribution() const;
  AmbiguitySpec ambiguity() const { return AmbiguitySpec::make(epsilon, q); }
};

// All structural errors surface as InvalidInput naming the offending field.
InstanceDocument parse_instance(const Json& doc);
Json to_json(const InstanceDocument& doc);

Json support_to_json(const SupportSet& support);
Json knapsack_to_json(const KnapsackInstance& instance);
Json rep_selection_to_json(const RepSelectionInstance& instance);
Json dag_to_json(const DagShortestPathInstance& instance);
Json norm_to_json(Norm q);
Norm norm_from_json(const Json& value);

// wall_ms is only written with timing so that outputs are reproducible.
Json to_json(const SolveResult& result, bool with_timing = false);
Json to_json(const WorstCaseCertificate& certificate);
Json to_json(const DistortionPlan& plan);
Json to_json(const RowGenTrace& trace, bool with_timing = false);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& value);

}  // namespace wdro
