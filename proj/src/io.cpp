#include <cmath>
#include <fstream>

#include "wdro/errors.hpp"
#include "wdro/io.hpp"

namespace wdro {

namespace {

const Json& field(const Json& obj, const char* name, const std::string& where) {
  if (!obj.is_object() || !obj.contains(name)) throw InvalidInput(where + ": missing field '" + name + "'");
  return obj.at(name);
}

double number(const Json& v, const std::string& what) {
  if (!v.is_number()) throw InvalidInput(what + " must be a number");
  return v.get<double>();
}

int integer(const Json& v, const std::string& what) {
  if (!v.is_number_integer()) throw InvalidInput(what + " must be an integer");
  return v.get<int>();
}

Vector vector_of(const Json& v, const std::string& what) {
  if (!v.is_array()) throw InvalidInput(what + " must be an array of numbers");
  Vector out;
  for (const auto& e : v) out.push_back(number(e, what + " entry"));
  return out;
}

SupportSet parse_support(const Json& s, int n) {
  const std::string type = field(s, "type", "support").get<std::string>();
  if (type == "unrestricted") return SupportSet::unrestricted(n);
  if (type == "box") {
    return SupportSet::box(vector_of(field(s, "lower", "support"), "support.lower"),
                           vector_of(field(s, "upper", "support"), "support.upper"));
  }
  if (type == "polytope") {
    std::vector<HalfSpace> rows;
    for (const auto& r : field(s, "rows", "support")) {
      rows.push_back(HalfSpace{vector_of(field(r, "normal", "support.rows"), "support.rows.normal"),
                               number(field(r, "offset", "support.rows"), "support.rows.offset")});
    }
    return SupportSet::polytope(n, std::move(rows));
  }
  throw InvalidInput("support.type must be unrestricted, box or polytope, got '" + type + "'");
}

milp::Relation relation_from(const std::string& sense) {
  if (sense == "<=") return milp::Relation::kLessEqual;
  if (sense == ">=") return milp::Relation::kGreaterEqual;
  if (sense == "=") return milp::Relation::kEqual;
  throw InvalidInput("constraint sense must be <=, >= or =, got '" + sense + "'");
}

const char* sense_of(milp::Relation r) {
  switch (r) {
    case milp::Relation::kLessEqual: return "<=";
    case milp::Relation::kGreaterEqual: return ">=";
    case milp::Relation::kEqual: return "=";
  }
  return "?";
}

}  // namespace

EmpiricalDistribution InstanceDocument::distribution() const {
  if (samples.empty()) throw InvalidInput("the instance has no samples");
  return EmpiricalDistribution(samples);
}

Json norm_to_json(Norm q) {
  switch (q) {
    case Norm::kL1: return 1;
    case Norm::kL2: return 2;
    case Norm::kLInf: return "inf";
  }
  return nullptr;
}

Norm norm_from_json(const Json& value) {
  if (value.is_string()) {
    if (value.get<std::string>() == "inf") return Norm::kLInf;
  } else if (value.is_number()) {
    const double q = value.get<double>();
    if (q == 1.0) return Norm::kL1;
    if (q == 2.0) return Norm::kL2;
    if (std::isinf(q)) return Norm::kLInf;
  }
  throw InvalidInput("q must be 1, 2 or \"inf\"");
}

InstanceDocument parse_instance(const Json& doc) {
  try {
    if (!doc.is_object()) throw InvalidInput("instance document must be a JSON object");
    const int n = integer(field(doc, "n", "instance"), "n");
    if (n < 1) throw InvalidInput("n must be >= 1");
    SupportSet support = doc.contains("support") ? parse_support(doc.at("support"), n) : SupportSet::unrestricted(n);
    const Json& fs = field(doc, "feasible_set", "instance");
    const std::string tag = field(fs, "tag", "feasible_set").get<std::string>();
    std::optional<KnapsackInstance> knapsack;
    std::optional<RepSelectionInstance> rs;
    std::optional<DagShortestPathInstance> dag;
    std::optional<FeasibleSet> problem;
    if (tag == "knapsack") {
      knapsack = KnapsackInstance{vector_of(field(fs, "weights", "feasible_set"), "feasible_set.weights"),
                                  number(field(fs, "capacity", "feasible_set"), "feasible_set.capacity")};
      problem = encode(*knapsack);
    } else if (tag == "rep_selection") {
      rs = RepSelectionInstance{n, field(fs, "groups", "feasible_set").get<std::vector<std::vector<int>>>()};
      problem = encode(*rs);
    } else if (tag == "dag_shortest_path") {
      dag = DagShortestPathInstance{integer(field(fs, "vertices", "feasible_set"), "feasible_set.vertices"),
                                    field(fs, "arcs", "feasible_set").get<std::vector<std::pair<int, int>>>(),
                                    integer(field(fs, "source", "feasible_set"), "feasible_set.source"),
                                    integer(field(fs, "sink", "feasible_set"), "feasible_set.sink")};
      problem = encode(*dag);
    } else if (tag == "generic") {
      std::vector<milp::LinearRow> rows;
      for (const auto& c : field(fs, "constraints", "feasible_set")) {
        rows.push_back(milp::LinearRow{vector_of(field(c, "coeffs", "constraint"), "constraint.coeffs"),
                                       relation_from(field(c, "sense", "constraint").get<std::string>()),
                                       number(field(c, "rhs", "constraint"), "constraint.rhs")});
      }
      problem = FeasibleSet(n, std::move(rows));
    } else {
      throw InvalidInput("feasible_set.tag must be knapsack, rep_selection, dag_shortest_path or generic, got '" +
                         tag + "'");
    }
    if (problem->dimension() != n) throw InvalidInput("feasible_set dimension does not match n");

    InstanceDocument out{.n = n, .support = std::move(support), .problem = std::move(*problem)};
    out.knapsack = std::move(knapsack);
    out.rep_selection = std::move(rs);
    out.dag = std::move(dag);
    if (doc.contains("samples")) {
      for (const auto& s : doc.at("samples")) {
        out.samples.push_back(vector_of(s, "samples"));
        if (static_cast<int>(out.samples.back().size()) != n) throw InvalidInput("sample dimension does not match n");
      }
      if (!out.samples.empty()) {
        if (!validate_support_membership(out.distribution(), out.support)) {
          throw InvalidInput("a sample lies outside the support");
        }
      }
    }
    if (doc.contains("alpha")) out.alpha = number(doc.at("alpha"), "alpha");
    if (doc.contains("epsilon")) out.epsilon = number(doc.at("epsilon"), "epsilon");
    if (doc.contains("q")) out.q = norm_from_json(doc.at("q"));
    if (!(out.alpha > 0.0 && out.alpha <= 1.0)) throw InvalidInput("alpha must lie in (0, 1]");
    AmbiguitySpec::make(out.epsilon, out.q);
    return out;
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("malformed instance document: ") + e.what());
  }
}

Json support_to_json(const SupportSet& support) {
  switch (support.kind()) {
    case SupportKind::kUnrestricted: return {{"type", "unrestricted"}};
    case SupportKind::kBox: return {{"type", "box"}, {"lower", support.lower()}, {"upper", support.upper()}};
    case SupportKind::kPolytope: {
      Json rows = Json::array();
      for (const auto& h : support.halfspaces()) rows.push_back({{"normal", h.normal}, {"offset", h.offset}});
      return {{"type", "polytope"}, {"rows", rows}};
    }
  }
  return nullptr;
}

Json knapsack_to_json(const KnapsackInstance& k) {
  return {{"tag", "knapsack"}, {"weights", k.weights}, {"capacity", k.capacity}};
}

Json rep_selection_to_json(const RepSelectionInstance& rs) {
  return {{"tag", "rep_selection"}, {"groups", rs.groups}};
}

Json dag_to_json(const DagShortestPathInstance& g) {
  return {{"tag", "dag_shortest_path"}, {"vertices", g.vertices}, {"arcs", g.arcs}, {"source", g.source},
          {"sink", g.sink}};
}

Json to_json(const InstanceDocument& doc) {
  Json fs;
  if (doc.knapsack) {
    fs = knapsack_to_json(*doc.knapsack);
  } else if (doc.rep_selection) {
    fs = rep_selection_to_json(*doc.rep_selection);
  } else if (doc.dag) {
    fs = dag_to_json(*doc.dag);
  } else {
    Json rows = Json::array();
    for (const auto& r : doc.problem.constraints()) {
      rows.push_back({{"coeffs", r.coeffs}, {"sense", sense_of(r.relation)}, {"rhs", r.rhs}});
    }
    fs = {{"tag", "generic"}, {"constraints", rows}};
  }
  return {{"n", doc.n},           {"support", support_to_json(doc.support)},
          {"feasible_set", fs},   {"samples", doc.samples},
          {"alpha", doc.alpha},   {"epsilon", doc.epsilon},
          {"q", norm_to_json(doc.q)}};
}

Json to_json(const SolveResult& r, bool with_timing) {
  Json out = {{"status", milp::to_string(r.status)},
              {"x", r.x},
              {"objective", r.has_solution() ? Json(r.objective) : Json(nullptr)},
              {"bound", std::isfinite(r.bound) ? Json(r.bound) : Json(nullptr)},
              {"nodes", r.nodes}};
  if (with_timing) out["wall_ms"] = r.wall_ms;
  return out;
}

Json to_json(const WorstCaseCertificate& c) {
  return {{"value", c.value},
          {"budget_used", c.budget_used},
          {"active_subset", c.active_subset},
          {"distribution", c.distribution.realizations()}};
}

Json to_json(const DistortionPlan& p) {
  return {{"xi_bar", p.xi_bar},
          {"c", std::isfinite(p.c) ? Json(p.c) : Json("inf")},
          {"zeta", p.zeta},
          {"distorted", p.distorted.realizations()}};
}

Json to_json(const RowGenTrace& t, bool with_timing) {
  Json iterations = Json::array();
  for (const auto& it : t.iterations) {
    Json row = {{"iteration", it.iteration}, {"z_lb", it.lower},       {"z_ub", it.upper},
                {"gap", it.gap},             {"x", it.x},               {"adversary_value", it.adversary_value},
                {"duplicate_cut", it.duplicate_cut}};
    if (with_timing) row["adversary_ms"] = it.adversary_ms;
    iterations.push_back(std::move(row));
  }
  return {{"termination", t.termination}, {"cuts", t.cuts.size()}, {"iterations", iterations}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& value) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path);
  out << value.dump(2) << "\n";
}

}  // namespace wdro
