#include "ite/cli.hpp"

#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ite/curves.hpp"
#include "ite/error.hpp"
#include "ite/experiments.hpp"
#include "ite/io.hpp"
#include "ite/model.hpp"
#include "ite/radial_oracle.hpp"

namespace ite {

namespace {

bool is_config_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPositiveDefinite:
    case ErrorCode::NoConvergence:
    case ErrorCode::AsymmetricAssembly:
    case ErrorCode::BracketInvalid:
    case ErrorCode::DegenerateInterior:
    case ErrorCode::NonPositiveArgument:
      return false;
    default:
      return true;
  }
}

void write_error(std::ostream& err, std::string_view code, const std::string& message) {
  err << dump_json({{"error", code}, {"message", message}}, -1) << '\n';
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

int emit_experiment(const ExperimentResult& r, const std::string& path, std::ostream& out) {
  emit(path, dump_json(r.to_json()) + "\n", out);
  return r.verdict() == Verdict::Fail ? kExitFail : kExitOk;
}

nlohmann::json radial_json(const RadialProblem& p, int ell_max, double lambda_max, const TEList& list) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : list.entries) {
    entries.push_back({{"lambda", e.lambda}, {"ell", e.ell}, {"degeneracy", e.degeneracy}});
  }
  return {{"problem", to_string(p.kind)},
          {"dim", p.dim},
          {"radius", p.radius},
          {"v0", p.v0},
          {"ell_max", ell_max},
          {"lambda_max", lambda_max},
          {"transmission_eigenvalues", entries},
          {"weighted_count", list.weighted_count(lambda_max)}};
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Transmission eigenvalues by quadratic-form sweeps and radial Bessel determinants", "ite"};
  app.require_subcommand(1);

  std::string config, out_path, out_curves, out_report;
  int threads = 0;

  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep the eigenvalue curves of a problem file");
  sweep_cmd->add_option("--config", config, "problem JSON")->required();
  sweep_cmd->add_option("--out-curves", out_curves, "curve table CSV")->required();
  sweep_cmd->add_option("--out-report", out_report, "eigenvalue report JSON");
  sweep_cmd->add_option("--threads", threads, "worker threads (0 = hardware)");

  auto* find_cmd = app.add_subcommand("find", "Locate transmission eigenvalues of a problem file");
  find_cmd->add_option("--config", config, "problem JSON")->required();
  find_cmd->add_option("--out", out_path, "eigenvalue report JSON (stdout if omitted)");
  find_cmd->add_option("--threads", threads, "worker threads (0 = hardware)");

  std::string problem = "helmholtz";
  RadialProblem radial{ProblemKind::Helmholtz, 3, 1.0, 0.5, 0};
  int lmax = -1;
  double lambda_max = 0.0;
  auto* radial_cmd = app.add_subcommand("radial", "Radial determinant eigenvalues of a ball");
  radial_cmd->add_option("--problem", problem, "schrodinger | helmholtz");
  radial_cmd->add_option("--dim", radial.dim, "ball dimension 1..3")->required();
  radial_cmd->add_option("--radius", radial.radius)->required();
  radial_cmd->add_option("--v0", radial.v0)->required();
  radial_cmd->add_option("--lmax", lmax, "largest angular order (-1 = adaptive)");
  radial_cmd->add_option("--lambda-max", lambda_max)->required();
  radial_cmd->add_option("--out", out_path);

  ScalingParams scaling;
  bool no_galerkin = false;
  std::string scaling_problem = "helmholtz";
  auto* scaling_cmd = app.add_subcommand("scaling", "First eigenvalue under dilation of the ball");
  scaling_cmd->add_option("--problem", scaling_problem);
  scaling_cmd->add_option("--dim", scaling.dim);
  scaling_cmd->add_option("--radius", scaling.radius);
  scaling_cmd->add_option("--v0", scaling.v0);
  scaling_cmd->add_option("--eps", scaling.epsilons, "dilation factors");
  scaling_cmd->add_option("--tol", scaling.oracle_tol);
  scaling_cmd->add_flag("--no-galerkin", no_galerkin, "skip the interval repeat");
  scaling_cmd->add_option("--galerkin-tol", scaling.galerkin_tol);
  scaling_cmd->add_option("--cells", scaling.cells);
  scaling_cmd->add_option("--curves", scaling.num_curves);
  scaling_cmd->add_option("--steps", scaling.steps);
  scaling_cmd->add_option("--out", out_path);

  CountingParams counting;
  auto* count_cmd = app.add_subcommand("count", "Growth of the eigenvalue counting function");
  count_cmd->add_option("--dim", counting.dim);
  count_cmd->add_option("--radius", counting.radius);
  count_cmd->add_option("--v0", counting.v0);
  count_cmd->add_option("--x", counting.x_values, "count thresholds");
  count_cmd->add_option("--lmax", counting.ell_max, "largest angular order (-1 = adaptive)");
  count_cmd->add_option("--slope-tol", counting.slope_tol);
  count_cmd->add_option("--out", out_path);

  PackingParams packing;
  auto* packing_cmd = app.add_subcommand("packing", "Galerkin count against the packing prediction");
  packing_cmd->add_option("--length", packing.length);
  packing_cmd->add_option("--v0", packing.v0);
  packing_cmd->add_option("--x", packing.x);
  packing_cmd->add_option("--slack", packing.slack);
  packing_cmd->add_option("--cells", packing.cells, "cells on (0, L) (0 = automatic)");
  packing_cmd->add_option("--curves", packing.num_curves);
  packing_cmd->add_option("--steps", packing.steps);
  packing_cmd->add_option("--out", out_path);

  TruncationParams trunc;
  std::string trunc_problem = "helmholtz";
  auto* trunc_cmd = app.add_subcommand("truncation", "Eigenvalue drift across chain truncations");
  trunc_cmd->add_option("--problem", trunc_problem);
  trunc_cmd->add_option("--counts", trunc.counts, "ascending interval counts");
  trunc_cmd->add_option("--start", trunc.chain.start);
  trunc_cmd->add_option("--gap", trunc.chain.gap);
  trunc_cmd->add_option("--first-length", trunc.chain.first_length);
  trunc_cmd->add_option("--decay-ratio", trunc.chain.decay_ratio);
  trunc_cmd->add_option("--c", trunc.potential.c);
  trunc_cmd->add_option("--alpha", trunc.potential.alpha);
  trunc_cmd->add_option("--lambda-min", trunc.lambda_lo);
  trunc_cmd->add_option("--lambda-max", trunc.lambda_hi);
  trunc_cmd->add_option("--cells", trunc.discretization.cells_per_interval);
  trunc_cmd->add_option("--curves", trunc.discretization.num_curves);
  trunc_cmd->add_option("--steps", trunc.steps);
  trunc_cmd->add_option("--out", out_path);

  HypothesisParams hyp;
  auto* hyp_cmd = app.add_subcommand("hypothesis", "Schrodinger radial determinant sign-change scan");
  hyp_cmd->add_option("--dim", hyp.dim);
  hyp_cmd->add_option("--radius", hyp.radius);
  hyp_cmd->add_option("--v0", hyp.v0);
  hyp_cmd->add_option("--lambda-max", hyp.lambda_max);
  hyp_cmd->add_option("--steps", hyp.steps);
  hyp_cmd->add_option("--lmax", hyp.ell_max, "largest angular order (-1 = adaptive)");
  hyp_cmd->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    write_error(err, to_string(ErrorCode::InvalidConfig), e.what());
    return kExitConfig;
  }

  try {
    if (*sweep_cmd) {
      const auto problem_v = validate_problem(load_problem_file(config));
      if (out_report.empty()) {
        const auto m = assemble_problem(problem_v);
        write_text_file(out_curves, curve_table_csv(sweep(problem_v, m, problem_v.sweep, threads)));
      } else {
        const auto r = find_transmission_eigenvalues(problem_v, threads);
        write_text_file(out_curves, curve_table_csv(r.table));
        write_text_file(out_report, dump_json(report_to_json(r.report)) + "\n");
      }
      return kExitOk;
    }
    if (*find_cmd) {
      const auto r = find_transmission_eigenvalues(validate_problem(load_problem_file(config)), threads);
      emit(out_path, dump_json(report_to_json(r.report)) + "\n", out);
      return kExitOk;
    }
    if (*radial_cmd) {
      radial.kind = problem_kind_from_string(problem);
      validate_radial(radial);
      const int ell_max = lmax >= 0 ? lmax : adaptive_ell_max(radial.dim, radial.radius, lambda_max);
      const TEList list = te_list_up_to(radial, lambda_max, ell_max);
      emit(out_path, dump_json(radial_json(radial, ell_max, lambda_max, list)) + "\n", out);
      return kExitOk;
    }
    if (*scaling_cmd) {
      scaling.kind = problem_kind_from_string(scaling_problem);
      scaling.galerkin = !no_galerkin;
      return emit_experiment(scaling_check(scaling), out_path, out);
    }
    if (*count_cmd) return emit_experiment(counting_experiment(counting), out_path, out);
    if (*packing_cmd) return emit_experiment(packing_bound_check(packing), out_path, out);
    if (*trunc_cmd) {
      trunc.kind = problem_kind_from_string(trunc_problem);
      return emit_experiment(truncation_stability(trunc), out_path, out);
    }
    if (*hyp_cmd) return emit_experiment(hypothesis_scan(hyp), out_path, out);
  } catch (const Error& e) {
    write_error(err, to_string(e.code()), e.what());
    return is_config_error(e.code()) ? kExitConfig : kExitRuntime;
  } catch (const std::exception& e) {
    write_error(err, "Internal", e.what());
    return kExitRuntime;
  }
  return kExitConfig;
}

}  // namespace ite
