#include "commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <fstream>
#include <functional>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "geomax/analysis.hpp"
#include "geomax/ascent.hpp"
#include "geomax/canonicalize.hpp"
#include "geomax/closest_product.hpp"
#include "geomax/io.hpp"
#include "geomax/subspace.hpp"
#include "geomax/zoo.hpp"
#include "repro.hpp"

namespace geomax::cli {

namespace {

using nlohmann::ordered_json;

struct SeesawFlags {
  int restarts = 0;
  int sweeps = 0;
  std::uint64_t seed = 0;
  int jobs = 1;

  void add(CLI::App* app) {
    app->add_option("--restarts", restarts, "See-saw restarts per evaluation (0: scale with dimension)")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--sweeps", sweeps, "See-saw sweeps per restart (0: scale with dimension)")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--seed", seed, "Random seed");
    app->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  }

  SeesawConfig config(const SystemShape& shape) const {
    SeesawConfig cfg = SeesawConfig::defaults_for(shape);
    if (restarts > 0) cfg.restarts = restarts;
    if (sweeps > 0) cfg.sweeps_max = sweeps;
    cfg.seed = seed;
    cfg.jobs = jobs;
    return cfg;
  }
};

struct AscentFlags {
  std::string dims;
  double theta = 0.01;
  double theta_min = 1e-7;
  double gamma = 0.9;
  std::string variant = "momentum";
  std::string direction_mode = "normalized";
  int iters = 20000;
  int window = 400;
  SeesawFlags seesaw;
  std::string out;
  std::string trace;

  void add(CLI::App* app) {
    app->add_option("--dims", dims, "Local dimensions, comma separated (e.g. 2,2,2)")->required();
    app->add_option("--theta", theta, "Initial step size")->check(CLI::PositiveNumber);
    app->add_option("--theta-min", theta_min, "Stop once the step falls below this")->check(CLI::PositiveNumber);
    app->add_option("--gamma", gamma, "Momentum coefficient")->check(CLI::Range(0.0, 1.0));
    app->add_option("--variant", variant, "plain | momentum | nesterov");
    app->add_option("--direction-mode", direction_mode, "normalized | projected");
    app->add_option("--iters", iters, "Maximum iterations")->check(CLI::NonNegativeNumber);
    app->add_option("--window", window, "Stagnation window before the step is halved")->check(CLI::PositiveNumber);
    seesaw.add(app);
    app->add_option("--out", out, "Output file (default: stdout)");
    app->add_option("--trace", trace, "Write the per-iteration trace as CSV");
  }

  AscentConfig config(const SystemShape& shape) const {
    AscentConfig cfg = AscentConfig::defaults_for(shape);
    cfg.theta0 = theta;
    cfg.theta_min = theta_min;
    cfg.gamma = gamma;
    const auto v = parse_variant(variant);
    if (!v) throw CLI::ValidationError("--variant", "unknown variant '" + variant + "'");
    cfg.variant = *v;
    const auto m = parse_direction_mode(direction_mode);
    if (!m) throw CLI::ValidationError("--direction-mode", "unknown direction mode '" + direction_mode + "'");
    cfg.direction_mode = *m;
    cfg.iters_max = iters;
    cfg.stagnation_window = window;
    cfg.seesaw = seesaw.config(shape);
    cfg.validate();
    return cfg;
  }
};

SystemShape parse_dims(const std::string& text) {
  std::vector<int> dims;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int d = 0;
    try {
      d = std::stoi(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) throw CLI::ValidationError("--dims", "'" + text + "' is not a list of integers");
    dims.push_back(d);
  }
  if (dims.empty()) throw CLI::ValidationError("--dims", "empty");
  return SystemShape(std::move(dims));
}

std::string read_input(const std::string& path, std::istream& in) {
  return path == "-" ? read_all(in) : read_file(path);
}

void write_output(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path);
  f << text;
}

std::string dims_string(const SystemShape& shape) {
  std::string s;
  for (int p = 0; p < shape.parties(); ++p) {
    if (p) s += ',';
    s += std::to_string(shape.dim(p));
  }
  return s;
}

ordered_json matrix_json(const CMatrix& m) { return ordered_json::parse(matrix_to_json(m)); }

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geometric measure of entanglement: evaluation, ascent and canonicalisation", "geomax"};
  app.set_config("--config", "", "key = value file with [subcommand] sections; flags override it");
  app.require_subcommand(1);

  std::function<int()> action;

  // measure
  auto* measure = app.add_subcommand("measure", "Geometric measure of a state file");
  std::string measure_file = "-";
  bool measure_renorm = false;
  SeesawFlags measure_flags;
  measure->add_option("file", measure_file, "State JSON (default: stdin)");
  measure->add_flag("--renormalize", measure_renorm, "Accept and renormalise states whose norm is not 1");
  measure_flags.add(measure);
  measure->callback([&] {
    action = [&] {
      const PureState s = parse_state_json(read_input(measure_file, in), measure_renorm);
      const auto bpa = best_product_approximation(s, measure_flags.config(s.shape()));
      out << "dims = " << dims_string(s.shape()) << "\n";
      out << "g = " << format_double(bpa.g) << "\n";
      out << "lambda = " << format_double(bpa.lambda) << "\n";
      return int{kExitOk};
    };
  });

  // maximize
  auto* maximize = app.add_subcommand("maximize", "Run the entanglement ascent from a random state");
  AscentFlags max_flags;
  int runs = 1;
  max_flags.add(maximize);
  maximize->add_option("--runs", runs, "Independent runs with seeds seed, seed+1, ...; the best is kept")
      ->check(CLI::PositiveNumber);
  maximize->callback([&] {
    action = [&] {
      const SystemShape shape = parse_dims(max_flags.dims);
      AscentConfig cfg = max_flags.config(shape);
      std::vector<std::uint64_t> seeds;
      for (int i = 0; i < runs; ++i) seeds.push_back(max_flags.seesaw.seed + static_cast<std::uint64_t>(i));
      std::vector<AscentTrace> traces;
      if (runs == 1) {
        cfg.seesaw.seed = max_flags.seesaw.seed;
        traces.push_back(run_ascent(random_pure_state(shape, max_flags.seesaw.seed), cfg));
      } else {
        cfg.seesaw.jobs = 1;
        traces = run_campaign(shape, cfg, seeds, max_flags.seesaw.jobs);
      }
      std::size_t best = 0;
      for (std::size_t i = 1; i < traces.size(); ++i) {
        if (traces[i].best_g > traces[best].best_g) best = i;
      }
      const AscentTrace& tr = traces[best];
      const std::string json = state_to_json(tr.final_state);
      std::ostream& summary = max_flags.out.empty() ? err : out;
      if (max_flags.out.empty()) {
        out << json;
      } else {
        write_output(max_flags.out, json);
      }
      if (!max_flags.trace.empty()) {
        std::ostringstream csv;
        write_trace_csv(tr, csv);
        write_output(max_flags.trace, csv.str());
      }
      summary << "seed = " << seeds[best] << "\n";
      summary << "g = " << format_double(tr.best_g) << "\n";
      summary << "iterations = " << tr.records.size() - 1 << "\n";
      summary << "status = " << to_string(tr.status) << "\n";
      if (!tr.diagnostic.empty()) summary << "diagnostic = " << tr.diagnostic << "\n";
      return int{tr.status == AscentStatus::converged ? kExitOk : kExitNotConverged};
    };
  });

  // subspace
  auto* subspace = app.add_subcommand("subspace", "Ascent over rank-k subspaces");
  AscentFlags sub_flags;
  int rank = 2;
  sub_flags.add(subspace);
  subspace->add_option("--k", rank, "Subspace dimension")->check(CLI::PositiveNumber);
  subspace->callback([&] {
    action = [&] {
      const SystemShape shape = parse_dims(sub_flags.dims);
      const AscentConfig cfg = sub_flags.config(shape);
      const auto tr = run_subspace_ascent(shape, rank, cfg, sub_flags.seesaw.seed);
      const std::string json = projector_to_json(tr.best);
      std::ostream& summary = sub_flags.out.empty() ? err : out;
      if (sub_flags.out.empty()) {
        out << json;
      } else {
        write_output(sub_flags.out, json);
      }
      if (!sub_flags.trace.empty()) {
        std::string csv = "iter,measure,theta\n";
        for (const auto& r : tr.records) {
          csv += std::to_string(r.iter) + "," + format_double(r.measure) + "," + format_double(r.theta) + "\n";
        }
        write_output(sub_flags.trace, csv);
      }
      summary << "measure = " << format_double(tr.best_measure) << "\n";
      summary << "iterations = " << tr.records.size() - 1 << "\n";
      summary << "status = " << to_string(tr.status) << "\n";
      return int{tr.status == AscentStatus::converged ? kExitOk : kExitNotConverged};
    };
  });

  // canon
  auto* canon = app.add_subcommand("canon", "Local-unitary canonicalisation of a state");
  std::string canon_file = "-";
  std::string guess_file;
  bool do_sparsify = false;
  bool canon_renorm = false;
  bool pretty = false;
  std::string canon_out;
  SearchBudget budget;
  canon->add_option("file", canon_file, "State JSON (default: stdin)");
  auto* guess_opt = canon->add_option("--guess", guess_file, "Compare against this state up to local unitaries");
  auto* sparse_opt = canon->add_flag("--sparsify", do_sparsify, "Minimise the l1 norm over local unitaries");
  guess_opt->excludes(sparse_opt);
  canon->add_flag("--renormalize", canon_renorm, "Accept and renormalise states whose norm is not 1");
  canon->add_flag("--pretty", pretty, "With --sparsify: print the amplitude table instead of JSON");
  canon->add_option("--out", canon_out, "With --sparsify: write the transformed state here");
  canon->add_option("--evaluations", budget.evaluations, "Objective evaluation budget")->check(CLI::PositiveNumber);
  canon->add_option("--restarts", budget.restarts, "Search restarts")->check(CLI::PositiveNumber);
  canon->add_option("--seed", budget.seed, "Random seed");
  canon->add_option("--jobs", budget.jobs, "Worker threads")->check(CLI::PositiveNumber);
  canon->callback([&] {
    if (guess_file.empty() && !do_sparsify) throw CLI::ValidationError("canon", "one of --guess or --sparsify is required");
    action = [&] {
      const PureState s = parse_state_json(read_input(canon_file, in), canon_renorm);
      ordered_json report;
      bool converged = false;
      if (!guess_file.empty()) {
        const PureState g = parse_state_json(read_file(guess_file), canon_renorm);
        const auto r = lu_fidelity(s, g, budget);
        report["fidelity"] = r.fidelity;
        report["equal"] = r.equal;
        report["converged"] = r.converged;
        report["unitaries"] = ordered_json::array();
        for (const auto& u : r.unitaries) report["unitaries"].push_back(matrix_json(u));
        converged = r.converged;
        out << report.dump(2) << "\n";
      } else {
        const auto r = sparsify(s, budget);
        converged = r.converged;
        if (!canon_out.empty()) write_output(canon_out, state_to_json(r.state));
        if (pretty) {
          out << "l1 = " << format_double(r.l1) << "\n" << pretty_print(r.state);
        } else {
          report["l1"] = r.l1;
          report["converged"] = r.converged;
          report["unitaries"] = ordered_json::array();
          for (const auto& u : r.unitaries) report["unitaries"].push_back(matrix_json(u));
          report["state"] = ordered_json::parse(state_to_json(r.state));
          out << report.dump(2) << "\n";
        }
      }
      return int{converged ? kExitOk : kExitNotConverged};
    };
  });

  // zoo
  auto* zoo = app.add_subcommand("zoo", "Reference states");
  zoo->require_subcommand(1);
  auto* zoo_list = zoo->add_subcommand("list", "List the catalogue");
  auto* zoo_emit = zoo->add_subcommand("emit", "Write a catalogue state as JSON");
  std::string zoo_name;
  zoo_emit->add_option("name", zoo_name, "Catalogue name")->required();
  zoo_list->callback([&] {
    action = [&] {
      for (const auto& e : zoo_catalog()) {
        out << e.name << "\t" << dims_string(e.make().shape()) << "\t" << e.description << "\n";
      }
      return int{kExitOk};
    };
  });
  zoo_emit->callback([&] {
    action = [&] {
      out << state_to_json(zoo_state(zoo_name));
      return int{kExitOk};
    };
  });

  // analyze
  auto* analyze = app.add_subcommand("analyze", "Marginal-spectrum report for a state");
  std::string analyze_file = "-";
  bool analyze_renorm = false;
  SeesawFlags analyze_flags;
  analyze->add_option("file", analyze_file, "State JSON (default: stdin)");
  analyze->add_flag("--renormalize", analyze_renorm, "Accept and renormalise states whose norm is not 1");
  analyze_flags.add(analyze);
  analyze->callback([&] {
    action = [&] {
      const PureState s = parse_state_json(read_input(analyze_file, in), analyze_renorm);
      const int n = s.shape().parties();
      ordered_json report;
      report["dims"] = s.shape().dims();
      report["g_estimate"] = best_product_approximation(s, analyze_flags.config(s.shape())).g;
      report["uniformity"] = ordered_json::array();
      report["spectra"] = ordered_json::object();
      for (int k = 1; k <= n / 2; ++k) {
        ordered_json u;
        u["k"] = k;
        u["uniform"] = is_k_uniform(s, k);
        u["max_deviation"] = max_flatness_deviation(s, k);
        u["spectrum_spread"] = max_spectrum_spread(s, k);
        report["uniformity"].push_back(u);
        ordered_json level = ordered_json::object();
        for (const auto& [subset, spectrum] : marginal_spectra(s, k)) {
          std::string key;
          for (std::size_t i = 0; i < subset.size(); ++i) key += (i ? "," : "") + std::to_string(subset[i]);
          level[key] = spectrum;
        }
        report["spectra"][std::to_string(k)] = level;
      }
      const auto mms = mms_report(s);
      report["is_ame"] = is_ame(s);
      report["is_mms"] = mms.is_mms;
      report["k_star"] = mms.k_star;
      out << report.dump(2) << "\n";
      return int{kExitOk};
    };
  });

  // repro
  auto* repro = app.add_subcommand("repro", "Reproduce reference results and report PASS/FAIL");
  std::string suite;
  ReproOptions ropt;
  repro->add_option("suite", suite, "table1 | bipartite | subspaces | extended")
      ->required()
      ->check(CLI::IsMember({"table1", "bipartite", "subspaces", "extended"}));
  repro->add_option("--seed", ropt.seed, "Random seed");
  repro->add_option("--jobs", ropt.jobs, "Worker threads")->check(CLI::PositiveNumber);
  repro->callback([&] {
    action = [&] {
      ropt.progress = &err;
      std::vector<ReproRow> rows;
      if (suite == "table1") rows = repro_table1(ropt);
      if (suite == "bipartite") rows = repro_bipartite(ropt);
      if (suite == "subspaces") rows = repro_subspaces(ropt);
      if (suite == "extended") rows = repro_extended(ropt);
      print_rows(rows, out);
      const bool ok = std::all_of(rows.begin(), rows.end(), [](const ReproRow& r) { return r.pass(); });
      return int{ok ? kExitOk : kExitNotConverged};
    };
  });

  for (auto* sub : {measure, maximize, subspace, canon, zoo, analyze, repro}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    return action ? action() : int{kExitUsage};
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace geomax::cli
