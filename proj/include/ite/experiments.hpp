#pragma once

// Experiment drivers built on the radial oracle and the Galerkin pipeline.
// Each returns an ExperimentResult whose JSON form is
// {"name", "inputs", "tables", "verdict", "margins", "summary"}.

#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

#include "ite/model.hpp"

namespace ite {

enum class Verdict { Pass, Fail, ReportOnly };
std::string to_string(Verdict v);

struct Table {
  std::string label;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

// One judged quantity.  pass is decided by the driver against tolerance.
struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ExperimentResult {
  std::string name;
  nlohmann::json inputs = nlohmann::json::object();
  std::vector<Table> tables;
  std::vector<Check> checks;
  bool report_only = false;
  std::string summary;

  // ReportOnly if report_only, else Pass iff every check passes (and there is
  // at least one).
  Verdict verdict() const;
  const Check* find_check(const std::string& name) const;
  nlohmann::json to_json() const;
};

struct ScalingParams {
  ProblemKind kind = ProblemKind::Helmholtz;
  int dim = 1;
  double radius = std::numbers::pi;
  double v0 = 0.75;
  std::vector<double> epsilons = {0.5};
  double oracle_tol = 1e-8;
  // Galerkin repeat on (-R, R) and (-eps R, eps R) with the window scaled by
  // 1 / eps^2.
  bool galerkin = true;
  double galerkin_tol = 1e-3;
  int cells = 64;
  int num_curves = 12;
  int steps = 400;
  double window_lo = 0.5;
  double window_hi = 10.0;
};
ExperimentResult scaling_check(const ScalingParams& p);

struct CountingParams {
  int dim = 3;
  double radius = std::numbers::pi;
  double v0 = 0.75;
  std::vector<double> x_values = {50.0, 100.0, 200.0, 400.0};
  int ell_max = -1;  // < 0: adaptive at the largest x
  double slope_tol = 0.3;
};
ExperimentResult counting_experiment(const CountingParams& p);

struct PackingParams {
  double length = 4.0 * std::numbers::pi;
  double v0 = 0.75;
  double x = 16.0;
  double slack = 0.8;
  int cells = 0;  // <= 0: 32 cells per pi of length
  int num_curves = 12;
  int steps = 400;
};
// Number of disjoint translates of the scaled 1-D ball whose first oracle
// eigenvalue equals x that fit in (0, L).
int packing_prediction(double length, double v0, double x);
ExperimentResult packing_bound_check(const PackingParams& p);

struct TruncationParams {
  ProblemKind kind = ProblemKind::Helmholtz;
  ShrinkingChain chain{1, 0.0, 1.0, 2.0, 0.5};  // count is overridden per run
  PowerDecayPotential potential{1.0, 4.0};
  std::vector<int> counts = {2, 4, 6};
  double lambda_lo = 0.5;
  double lambda_hi = 400.0;
  DiscretizationConfig discretization{32, 8, 12};
  int steps = 400;
  double refine_tol = 1e-8;
};
// Drift between consecutive counts: the largest distance from an eigenvalue
// of the shorter chain to the nearest eigenvalue of the longer one (0 when
// either list is empty).
double list_drift(const std::vector<double>& from, const std::vector<double>& to);
ExperimentResult truncation_stability(const TruncationParams& p);

struct HypothesisParams {
  int dim = 1;
  double radius = std::numbers::pi;
  double v0 = 0.75;
  double lambda_max = 50.0;
  int steps = 2000;
  int ell_max = -1;  // < 0: adaptive at lambda_max
};
ExperimentResult hypothesis_scan(const HypothesisParams& p);

}  // namespace ite
