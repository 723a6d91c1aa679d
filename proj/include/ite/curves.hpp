#pragma once

// Eigenvalue curves mu_nu(lambda) of the pencil A(lambda) v = mu Mw v over a
// lambda grid, their zero crossings, and the resulting eigenvalue report.
//
// Curves are tracked by sorted index: the nu-th smallest eigenvalue is a
// continuous function of lambda even where analytic branches intersect, so a
// sign change of the sorted curve always brackets a singular A(lambda).

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ite/assembly.hpp"
#include "ite/model.hpp"

namespace ite {

struct CurveTable {
  std::vector<double> lambdas;
  std::vector<std::vector<double>> values;  // values[i][nu], ascending in nu

  int num_curves() const { return values.empty() ? 0 : static_cast<int>(values.front().size()); }
};

// threads <= 0 picks std::thread::hardware_concurrency().
CurveTable sweep_grid(ProblemKind kind, const FormMatrices& matrices, const std::vector<double>& grid,
                      int num_curves, int threads = 0);
CurveTable sweep(const ValidatedProblem& problem, const FormMatrices& matrices, const SweepConfig& config,
                 int threads = 0);

struct Bracket {
  int curve_index = 1;  // 1-based
  double left = 0.0;
  double right = 0.0;
};

inline constexpr double kExactZeroRelTol = 1e-12;

std::vector<Bracket> find_crossings(const CurveTable& table);

// nu-th smallest eigenvalue of (A(lambda), Mw), nu 1-based.
double sorted_eigenvalue(ProblemKind kind, const FormMatrices& matrices, int curve_index, double lambda);

// Bisection on a scalar function whose endpoint signs differ.  Throws
// BracketInvalid otherwise.  Returns the midpoint of the final bracket.
double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol);

double refine(ProblemKind kind, const FormMatrices& matrices, const Bracket& bracket, double refine_tol);

struct RefinedCrossing {
  int curve_index = 1;
  double lambda = 0.0;
  double residual = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

struct TEReportEntry {
  double lambda = 0.0;
  int curve_index = 1;
  int multiplicity_estimate = 1;
  double residual = 0.0;
  // Union of the grid brackets of the merged crossings.
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

struct TEReportMetadata {
  std::string problem_hash;
  ProblemKind kind = ProblemKind::Helmholtz;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  int steps = 0;
  int num_curves = 0;
  int cells_per_interval = 0;
  double refine_tol = 0.0;
  double cluster_tol = 0.0;
};

struct TEReport {
  std::vector<TEReportEntry> entries;
  TEReportMetadata metadata;

  std::vector<double> lambdas() const;
  // Sum of multiplicity estimates of entries with lo <= lambda <= hi.
  int weighted_count(double lo, double hi) const;
};

// Crossings closer than cluster_tol merge into one entry; Helmholtz entries
// with |lambda| < cluster_tol are dropped.
TEReport report(ProblemKind kind, std::vector<RefinedCrossing> crossings, double cluster_tol);

struct FindResult {
  CurveTable table;
  TEReport report;
};

// Assemble, sweep, detect, refine, report.
FindResult find_transmission_eigenvalues(const ValidatedProblem& problem, int threads = 0);
FormMatrices assemble_problem(const ValidatedProblem& problem);

std::string problem_hash(const ValidatedProblem& problem);
std::string curve_table_csv(const CurveTable& table);
nlohmann::json report_to_json(const TEReport& report);

}  // namespace ite
