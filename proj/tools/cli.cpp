#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "wdro/distort.hpp"
#include "wdro/errors.hpp"
#include "wdro/experiments.hpp"
#include "wdro/io.hpp"
#include "wdro/parallel.hpp"
#include "wdro/problems.hpp"
#include "wdro/risk.hpp"
#include "wdro/rowgen.hpp"
#include "wdro/unrestricted.hpp"
#include "wdro/worst_case.hpp"

namespace wdro::cli {

namespace {

constexpr const char* kOutputDirVar = "WDRO_OUTPUT_DIR";

std::filesystem::path output_root() {
  const char* dir = std::getenv(kOutputDirVar);
  return dir != nullptr && *dir != '\0' ? std::filesystem::path(dir) : std::filesystem::path(".");
}

// Relative output paths land under $WDRO_OUTPUT_DIR when it is set.
std::filesystem::path resolve(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative()) p = output_root() / p;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  return p;
}

void emit(const Json& value, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << value.dump(2) << "\n";
  } else {
    write_json_file(resolve(path).string(), value);
  }
}

Norm parse_norm(const std::string& text) {
  if (text == "1") return Norm::kL1;
  if (text == "2") return Norm::kL2;
  if (text == "inf") return Norm::kLInf;
  throw InvalidInput("--q must be 1, 2 or inf");
}

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

Vector parse_numbers(const std::string& text) {
  Vector values;
  for (const auto& part : split(text)) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(part, &used));
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::logic_error&) {
      throw InvalidInput("not a number: '" + part + "'");
    }
  }
  return values;
}

// Options shared by the commands that read an instance document.
struct InstanceArgs {
  std::string input;
  std::string output;
  std::optional<double> alpha;
  std::optional<double> epsilon;
  std::string q;

  void attach(CLI::App* app) {
    app->add_option("instance", input, "instance JSON document")->required();
    app->add_option("-o,--output", output, "write JSON here instead of stdout");
    app->add_option("--alpha", alpha, "override the document's risk level");
    app->add_option("--epsilon", epsilon, "override the document's Wasserstein radius");
    app->add_option("--q", q, "override the ground norm: 1, 2 or inf");
  }

  InstanceDocument load() const {
    Json doc = read_json_file(input);
    if (alpha) doc["alpha"] = *alpha;
    if (epsilon) doc["epsilon"] = *epsilon;
    if (!q.empty()) doc["q"] = norm_to_json(parse_norm(q));
    return parse_instance(doc);
  }
};

struct Settings {
  bool timing = false;
  double gap_tol = 1e-9;
};

Binary parse_solution(const std::string& x_text, const std::string& solution_file, int n) {
  Binary x;
  if (!solution_file.empty()) {
    const Json doc = read_json_file(solution_file);
    const Json& field = doc.contains("x") ? doc.at("x") : doc.at("result").at("x");
    x = field.get<Binary>();
  } else {
    for (double v : parse_numbers(x_text)) {
      if (v != 0.0 && v != 1.0) throw InvalidInput("--x entries must be 0 or 1");
      x.push_back(static_cast<int>(v));
    }
  }
  if (static_cast<int>(x.size()) != n) throw InvalidInput("solution length does not match n");
  return x;
}

void add_gen(CLI::App& app, Settings&, std::ostream& out) {
  auto* cmd = app.add_subcommand("gen", "generate a random knapsack instance with truncated-normal costs");
  auto n = std::make_shared<int>(100);
  auto N = std::make_shared<int>(30);
  auto seed = std::make_shared<std::uint64_t>(1);
  auto alpha = std::make_shared<double>(0.1);
  auto epsilon = std::make_shared<double>(0.0);
  auto q = std::make_shared<std::string>("inf");
  auto support = std::make_shared<std::string>("box");
  auto output = std::make_shared<std::string>();
  cmd->add_option("--n", *n, "number of items");
  cmd->add_option("--N", *N, "sample size");
  cmd->add_option("--seed", *seed, "random seed");
  cmd->add_option("--alpha", *alpha, "risk level stored in the document");
  cmd->add_option("--epsilon", *epsilon, "Wasserstein radius stored in the document");
  cmd->add_option("--q", *q, "ground norm: 1, 2 or inf");
  cmd->add_option("--support", *support, "box (cost intervals) or unrestricted")
      ->check(CLI::IsMember({"box", "unrestricted"}));
  cmd->add_option("-o,--output", *output, "write JSON here instead of stdout");
  cmd->callback([=, &out] {
    const GeneratedInstance g = generate_instance(*n, *seed);
    const EmpiricalDistribution d = sample_costs(g, *N, derive_seed(*seed, {1}));
    Json doc = {{"n", *n},
                {"support", *support == "box" ? support_to_json(g.support()) : Json{{"type", "unrestricted"}}},
                {"feasible_set", knapsack_to_json(g.knapsack)},
                {"samples", d.realizations()},
                {"alpha", *alpha},
                {"epsilon", *epsilon},
                {"q", norm_to_json(parse_norm(*q))}};
    parse_instance(doc);
    emit(doc, *output, out);
  });
}

void add_solve_cvar(CLI::App& app, Settings& settings, std::ostream& out) {
  auto* cmd = app.add_subcommand("solve-cvar", "minimize the empirical CVaR");
  auto args = std::make_shared<InstanceArgs>();
  args->attach(cmd);
  cmd->callback([=, &settings, &out] {
    const auto doc = args->load();
    const SolveResult r = solve_cvar(doc.problem, doc.distribution(), doc.alpha, settings.gap_tol);
    emit({{"method", "cvar"}, {"result", to_json(r, settings.timing)}}, args->output, out);
  });
}

void add_solve_distr(CLI::App& app, Settings& settings, std::ostream& out) {
  auto* cmd = app.add_subcommand("solve-distr", "minimize the worst-case CVaR over the Wasserstein ball");
  auto args = std::make_shared<InstanceArgs>();
  args->attach(cmd);
  auto method = std::make_shared<std::string>("auto");
  auto rel_gap = std::make_shared<double>(1e-4);
  auto max_iter = std::make_shared<int>(200);
  auto trace_csv = std::make_shared<std::string>();
  cmd->add_option("--method", *method,
                  "auto picks thm4 for unrestricted supports, two-solve for boxes with q=1 and alpha=l/N, "
                  "rowgen otherwise")
      ->check(CLI::IsMember({"auto", "thm4", "two-solve", "rowgen"}));
  cmd->add_option("--rel-gap", *rel_gap, "row generation relative gap");
  cmd->add_option("--max-iter", *max_iter, "row generation iteration limit");
  cmd->add_option("--trace", *trace_csv, "write the row generation trace CSV here");
  cmd->callback([=, &settings, &out] {
    const auto doc = args->load();
    const auto dist = doc.distribution();
    const RiskSpec risk(doc.alpha, dist.size());
    std::string chosen = *method;
    if (chosen == "auto") {
      if (doc.support.kind() == SupportKind::kUnrestricted) {
        chosen = "thm4";
      } else if (doc.support.kind() == SupportKind::kBox && doc.q == Norm::kL1 && risk.is_exact_fraction()) {
        chosen = "two-solve";
      } else {
        chosen = "rowgen";
      }
    }
    Json result;
    if (chosen == "thm4") {
      if (doc.support.kind() != SupportKind::kUnrestricted) {
        throw InvalidInput("thm4 needs an unrestricted support");
      }
      result = {{"method", chosen},
                {"result", to_json(solve_distr_unrestricted(doc.problem, dist, doc.ambiguity(), doc.alpha,
                                                            settings.gap_tol),
                                   settings.timing)}};
    } else if (chosen == "two-solve") {
      if (doc.support.kind() != SupportKind::kBox || doc.q != Norm::kL1 || !risk.is_exact_fraction()) {
        throw InvalidInput("two-solve needs a box support, q = 1 and alpha = l/N");
      }
      TwoSolveReport report;
      const SolveResult r = solve_box_q1_two_solve(doc.problem, dist, doc.support, doc.epsilon, doc.alpha,
                                                   settings.gap_tol, &report);
      result = {{"method", chosen},
                {"result", to_json(r, settings.timing)},
                {"cap_value", report.cap_value},
                {"cvar_value", report.cvar_value},
                {"cvar_won", report.cvar_won}};
    } else {
      RowGenOptions options;
      options.rel_gap = *rel_gap;
      options.max_iter = *max_iter;
      RowGenTrace trace;
      const SolveResult r =
          solve_distr_rowgen(doc.problem, dist, doc.support, doc.ambiguity(), risk, options, &trace);
      if (!trace_csv->empty()) {
        std::ofstream csv(resolve(*trace_csv));
        if (!csv) throw InvalidInput("cannot write " + *trace_csv);
        write_trace_csv(trace, csv);
      }
      result = {{"method", "rowgen"}, {"result", to_json(r, settings.timing)},
                {"trace", to_json(trace, settings.timing)}};
    }
    emit(result, args->output, out);
  });
}

void add_worst_dist(CLI::App& app, Settings&, std::ostream& out) {
  auto* cmd = app.add_subcommand("worst-dist", "worst distribution in the ball for a fixed solution x");
  auto args = std::make_shared<InstanceArgs>();
  args->attach(cmd);
  auto x_text = std::make_shared<std::string>();
  auto solution = std::make_shared<std::string>();
  auto* x_opt = cmd->add_option("--x", *x_text, "comma-separated 0/1 entries");
  auto* s_opt = cmd->add_option("--solution", *solution, "JSON output of a solve command");
  x_opt->excludes(s_opt);
  cmd->callback([=, &out] {
    if (x_text->empty() && solution->empty()) throw InvalidInput("give --x or --solution");
    const auto doc = args->load();
    const auto dist = doc.distribution();
    const Binary x = parse_solution(*x_text, *solution, doc.n);
    const WorstCaseCertificate cert =
        doc.support.kind() == SupportKind::kUnrestricted
            ? worst_distribution_unrestricted(x, dist, doc.ambiguity(), doc.alpha)
            : worst_distribution(x, dist, doc.support, doc.ambiguity(), RiskSpec(doc.alpha, dist.size()));
    emit({{"x", x}, {"certificate", to_json(cert)}}, args->output, out);
  });
}

void add_approx(CLI::App& app, Settings& settings, std::ostream& out) {
  auto* cmd = app.add_subcommand("approx", "solve on the distorted sample");
  auto args = std::make_shared<InstanceArgs>();
  args->attach(cmd);
  auto anchor = std::make_shared<std::string>("max-total");
  auto c = std::make_shared<std::optional<double>>();
  cmd->add_option("--anchor", *anchor, "max-total or closest")->check(CLI::IsMember({"max-total", "closest"}));
  cmd->add_option("--c", *c, "use this distortion factor instead of the certified one");
  cmd->callback([=, &settings, &out] {
    const auto doc = args->load();
    const auto dist = doc.distribution();
    const AnchorStrategy strategy = *anchor == "closest" ? AnchorStrategy::kClosestToZeta : AnchorStrategy::kMaxTotal;
    if (c->has_value()) {
      const DistortionPlan plan = build_plan_with_c(dist, doc.support, **c, doc.q, strategy);
      const SolveResult r = solve_cvar(doc.problem, plan.distorted, doc.alpha, settings.gap_tol);
      emit({{"result", to_json(r, settings.timing)}, {"plan", to_json(plan)}}, args->output, out);
      return;
    }
    const ApproxResult a =
        solve_distr_approx(doc.problem, dist, doc.support, doc.ambiguity(), doc.alpha, settings.gap_tol, strategy);
    emit({{"result", to_json(a.solution, settings.timing)},
          {"plan", to_json(a.plan)},
          {"b", a.b},
          {"certified_ratio", std::isfinite(a.certified_ratio) ? Json(a.certified_ratio) : Json("inf")},
          {"certified", a.certified}},
         args->output, out);
  });
}

void add_reduce(CLI::App& app, Settings&, std::ostream& out) {
  auto* cmd = app.add_subcommand(
      "reduce", "turn min-max representatives selection (samples = scenarios) into a CVaR instance");
  auto args = std::make_shared<InstanceArgs>();
  args->attach(cmd);
  cmd->callback([=, &out] {
    const auto doc = args->load();
    if (!doc.rep_selection) throw InvalidInput("reduce needs a rep_selection instance");
    if (doc.samples.empty()) throw InvalidInput("reduce needs at least one scenario in samples");
    const ReducedInstance r = reduce_minmax_rs_to_cvar_rs(*doc.rep_selection, doc.samples, doc.alpha);
    Json reduced = {{"n", r.problem.n},
                    {"support", {{"type", "unrestricted"}}},
                    {"feasible_set", rep_selection_to_json(r.problem)},
                    {"samples", r.distribution.realizations()},
                    {"alpha", r.alpha},
                    {"epsilon", 0.0},
                    {"q", norm_to_json(Norm::kL1)},
                    {"reduction", {{"big_m", r.big_m}, {"l", r.l}, {"N", r.N}}}};
    emit(reduced, args->output, out);
  });
}

void add_experiment(CLI::App& app, Settings& settings, std::ostream& out) {
  auto* cmd = app.add_subcommand("experiment", "epsilon sweep comparing SAA with the robust methods");
  auto kind = std::make_shared<std::string>();
  auto seed = std::make_shared<std::uint64_t>(1);
  auto n = std::make_shared<std::optional<int>>();
  auto N = std::make_shared<std::optional<int>>();
  auto samples = std::make_shared<std::optional<int>>();
  auto alpha = std::make_shared<std::optional<double>>();
  auto draws = std::make_shared<std::optional<std::int64_t>>();
  auto epsilons = std::make_shared<std::string>();
  auto methods = std::make_shared<std::string>();
  auto q = std::make_shared<std::string>();
  auto out_dir = std::make_shared<std::string>();
  auto plots = std::make_shared<bool>(true);
  auto rowgen_iter = std::make_shared<std::optional<int>>();
  auto rowgen_gap = std::make_shared<std::optional<double>>();
  cmd->add_option("kind", *kind, "exp1 or exp2")->required()->check(CLI::IsMember({"exp1", "exp2"}));
  cmd->add_option("--seed", *seed, "master seed");
  cmd->add_option("--n", *n, "number of items");
  cmd->add_option("--N", *N, "sample size");
  cmd->add_option("--samples", *samples, "number of independent samples");
  cmd->add_option("--alpha", *alpha, "risk level");
  cmd->add_option("--mc-draws", *draws, "Monte Carlo draws per quantile estimate");
  cmd->add_option("--epsilons", *epsilons, "comma-separated radius grid");
  cmd->add_option("--methods", *methods, "comma-separated subset of SAA,RowGen,Distort");
  cmd->add_option("--q", *q, "ground norm: 1, 2 or inf");
  cmd->add_option("--out-dir", *out_dir, "directory for the CSV and plots (default $WDRO_OUTPUT_DIR or .)");
  cmd->add_option("--rowgen-max-iter", *rowgen_iter, "row generation iteration limit per cell");
  cmd->add_option("--rowgen-gap", *rowgen_gap, "row generation relative gap");
  cmd->add_flag("!--no-plots", *plots, "skip the SVG charts");
  cmd->callback([=, &settings, &out] {
    ExperimentConfig c = default_config(experiment_kind_from_string(*kind));
    c.seed = *seed;
    if (*n) c.n = **n;
    if (*N) c.N = **N;
    if (*samples) c.samples = **samples;
    if (*alpha) c.alpha = **alpha;
    if (*draws) c.mc_draws = **draws;
    if (!epsilons->empty()) c.epsilons = parse_numbers(*epsilons);
    if (!methods->empty()) {
      c.methods.clear();
      for (const auto& m : split(*methods)) c.methods.push_back(method_from_string(m));
    }
    if (!q->empty()) c.q = parse_norm(*q);
    if (*rowgen_iter) c.rowgen.max_iter = **rowgen_iter;
    if (*rowgen_gap) c.rowgen.rel_gap = **rowgen_gap;
    c.gap_tol = settings.gap_tol;
    const SweepResult result = run_experiment(c);
    const std::filesystem::path dir = out_dir->empty() ? output_root() : std::filesystem::path(*out_dir);
    std::filesystem::create_directories(dir);
    const std::filesystem::path csv_path = dir / (*kind + "_seed" + std::to_string(*seed) + ".csv");
    std::ofstream csv(csv_path);
    if (!csv) throw InvalidInput("cannot write " + csv_path.string());
    write_csv(result, csv, settings.timing);
    out << csv_path.string() << "\n";
    if (*plots) {
      for (const auto& p : write_plots(result, (dir / (*kind + "_seed" + std::to_string(*seed) + "_plots")).string())) {
        out << p << "\n";
      }
    }
  });
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Distributionally robust CVaR minimization over binary feasible sets"};
  app.require_subcommand(1);
  Settings settings;
  app.add_option_function<int>(
         "--jobs", [](int jobs) { set_thread_count(jobs); },
         "worker threads (default: all cores); results do not depend on it")
      ->check(CLI::PositiveNumber);
  app.add_flag("--timing", settings.timing, "include wall-clock times in the outputs");
  app.add_option("--gap-tol", settings.gap_tol, "absolute optimality gap for the mixed-integer solves");
  add_gen(app, settings, out);
  add_solve_cvar(app, settings, out);
  add_solve_distr(app, settings, out);
  add_worst_dist(app, settings, out);
  add_approx(app, settings, out);
  add_reduce(app, settings, out);
  add_experiment(app, settings, out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 1;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const SolverFailure& e) {
    err << "solver failure: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "solver failure: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace wdro::cli
