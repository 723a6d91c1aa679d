#include "ite/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ite/curves.hpp"
#include "ite/error.hpp"
#include "ite/io.hpp"
#include "ite/radial_oracle.hpp"

namespace ite {

namespace {

constexpr double kScanFloor = 1e-6;

void require(bool ok, ErrorCode code, const std::string& msg) {
  if (!ok) throw Error(code, msg);
}

void require_contrast(double v0) {
  require(v0 > 0.0 && std::isfinite(v0), ErrorCode::NonPositivePotential, "v0 must be > 0");
  require(v0 < 1.0, ErrorCode::InvalidConfig, "v0 must lie in (0, 1)");
}

// Smallest oracle eigenvalue over all angular orders, widening the window
// until one shows up.
double first_oracle_te(const RadialProblem& p) {
  double x = 16.0 / (p.radius * p.radius);
  for (int i = 0; i < 40; ++i, x *= 2.0) {
    const TEList list = te_list_up_to(p, x, adaptive_ell_max(p.dim, p.radius, x));
    if (!list.entries.empty()) return list.first();
  }
  throw Error(ErrorCode::InsufficientCounts, "no oracle eigenvalue found");
}

TEReport galerkin_report(ProblemKind kind, std::vector<Interval> intervals, const PotentialSpec& potential,
                         const WeightKind& weight, const DiscretizationConfig& disc, const SweepConfig& sweep) {
  ProblemSpec spec;
  spec.kind = kind;
  spec.domain = IntervalUnion{std::move(intervals)};
  spec.potential = potential;
  spec.weight = weight;
  spec.discretization = disc;
  spec.sweep = sweep;
  return find_transmission_eigenvalues(validate_problem(spec)).report;
}

Table report_table(const std::string& label, const TEReport& r) {
  Table t{label, {"lambda", "curve_index", "multiplicity_estimate", "residual"}, {}};
  for (const auto& e : r.entries) {
    t.rows.push_back({e.lambda, static_cast<double>(e.curve_index), static_cast<double>(e.multiplicity_estimate),
                      e.residual});
  }
  return t;
}

// Short label for a check name, e.g. 0.5 -> "0.5".
std::string format_eps(double eps) {
  std::ostringstream os;
  os << eps;
  return os.str();
}

double relative_error(double value, double expected) { return std::abs(value - expected) / std::abs(expected); }

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "Pass";
    case Verdict::Fail: return "Fail";
    case Verdict::ReportOnly: return "Report-only";
  }
  return "?";
}

Verdict ExperimentResult::verdict() const {
  if (report_only) return Verdict::ReportOnly;
  if (checks.empty()) return Verdict::Fail;
  for (const auto& c : checks)
    if (!c.pass) return Verdict::Fail;
  return Verdict::Pass;
}

const Check* ExperimentResult::find_check(const std::string& check_name) const {
  for (const auto& c : checks)
    if (c.name == check_name) return &c;
  return nullptr;
}

nlohmann::json ExperimentResult::to_json() const {
  nlohmann::json tabs = nlohmann::json::array();
  for (const auto& t : tables) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : t.rows) rows.push_back(r);
    tabs.push_back({{"label", t.label}, {"columns", t.columns}, {"rows", rows}});
  }
  nlohmann::json margins = nlohmann::json::object();
  for (const auto& c : checks) {
    margins[c.name] = {{"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass}};
  }
  return {{"name", name},       {"inputs", inputs},   {"tables", tabs},
          {"verdict", to_string(verdict())}, {"margins", margins}, {"summary", summary}};
}

ExperimentResult scaling_check(const ScalingParams& p) {
  require(p.kind == ProblemKind::Helmholtz, ErrorCode::InvalidConfig, "scaling check needs the Helmholtz kind");
  require_contrast(p.v0);
  require(!p.epsilons.empty(), ErrorCode::InvalidConfig, "at least one epsilon is needed");
  for (double e : p.epsilons) require(e > 0.0 && std::isfinite(e), ErrorCode::InvalidConfig, "epsilon must be > 0");

  ExperimentResult out;
  out.name = "scaling";
  out.inputs = {{"problem", to_string(p.kind)}, {"dim", p.dim},           {"radius", p.radius},
                {"v0", p.v0},                   {"epsilons", p.epsilons}, {"oracle_tol", p.oracle_tol},
                {"galerkin", p.galerkin},       {"galerkin_tol", p.galerkin_tol}};

  RadialProblem base{p.kind, p.dim, p.radius, p.v0, 0};
  const double lambda1 = first_oracle_te(base);
  Table oracle{"oracle", {"epsilon", "first_te", "predicted", "relative_error"}, {}};
  oracle.rows.push_back({1.0, lambda1, lambda1, 0.0});
  for (double eps : p.epsilons) {
    RadialProblem scaled = base;
    scaled.radius = eps * p.radius;
    const double got = first_oracle_te(scaled);
    const double predicted = lambda1 / (eps * eps);
    const double err = relative_error(got, predicted);
    oracle.rows.push_back({eps, got, predicted, err});
    out.checks.push_back({"oracle_eps_" + format_eps(eps), err, p.oracle_tol, err <= p.oracle_tol});
  }
  out.tables.push_back(std::move(oracle));

  if (p.galerkin) {
    out.inputs["galerkin_setup"] = {{"cells", p.cells}, {"num_curves", p.num_curves}, {"steps", p.steps},
                                    {"window", {p.window_lo, p.window_hi}}};
    const DiscretizationConfig disc{p.cells, 8, p.num_curves};
    auto first_on = [&](double half_width, double scale) {
      const SweepConfig sweep{p.window_lo * scale, p.window_hi * scale, p.steps, 1e-8 * scale, 1e-6 * scale};
      const auto r = galerkin_report(p.kind, {{-half_width, half_width}}, ConstantPotential{p.v0}, Unweighted{},
                                     disc, sweep);
      return r.entries.empty() ? std::numeric_limits<double>::quiet_NaN() : r.entries.front().lambda;
    };
    const double g1 = first_on(p.radius, 1.0);
    Table galerkin{"galerkin", {"epsilon", "first_te", "predicted", "relative_error"}, {}};
    galerkin.rows.push_back({1.0, g1, g1, 0.0});
    for (double eps : p.epsilons) {
      const double got = first_on(eps * p.radius, 1.0 / (eps * eps));
      const double predicted = g1 / (eps * eps);
      const double err = relative_error(got, predicted);
      galerkin.rows.push_back({eps, got, predicted, err});
      // NaN compares false, so a missing eigenvalue fails.
      out.checks.push_back({"galerkin_eps_" + format_eps(eps), err, p.galerkin_tol, err <= p.galerkin_tol});
    }
    out.tables.push_back(std::move(galerkin));
  }
  out.summary = "first eigenvalue " + format_double(lambda1) + " at radius " + format_double(p.radius);
  return out;
}

ExperimentResult counting_experiment(const CountingParams& p) {
  require_contrast(p.v0);
  require(p.x_values.size() >= 2, ErrorCode::InvalidConfig, "counting needs at least two x values");
  for (double x : p.x_values) require(x > 0.0 && std::isfinite(x), ErrorCode::InvalidConfig, "x must be > 0");

  const double x_max = *std::max_element(p.x_values.begin(), p.x_values.end());
  const int ell_max = p.ell_max >= 0 ? p.ell_max : adaptive_ell_max(p.dim, p.radius, x_max);
  const TEList list = te_list_up_to({ProblemKind::Helmholtz, p.dim, p.radius, p.v0, 0}, x_max, ell_max);

  ExperimentResult out;
  out.name = "count";
  out.inputs = {{"problem", "helmholtz"}, {"dim", p.dim},         {"radius", p.radius},      {"v0", p.v0},
                {"x_values", p.x_values}, {"ell_max", ell_max}, {"slope_tol", p.slope_tol}};

  Table counts{"counts", {"x", "N"}, {}};
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (double x : p.x_values) {
    const long n = list.weighted_count(x);
    if (n < 5) {
      throw Error(ErrorCode::InsufficientCounts, "N(" + format_double(x) + ") = " + std::to_string(n) + " < 5");
    }
    counts.rows.push_back({x, static_cast<double>(n)});
    const double lx = std::log(x), ly = std::log(static_cast<double>(n));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double m = static_cast<double>(p.x_values.size());
  const double denom = m * sxx - sx * sx;
  require(denom > 0.0, ErrorCode::InvalidConfig, "x values must not all coincide");
  const double slope = (m * sxy - sx * sy) / denom;
  const double expected = 0.5 * p.dim;
  out.tables.push_back(std::move(counts));
  out.checks.push_back({"slope", slope, p.slope_tol, std::abs(slope - expected) <= p.slope_tol});
  out.inputs["expected_slope"] = expected;
  out.summary = "fitted slope " + format_double(slope) + ", expected " + format_double(expected);
  return out;
}

int packing_prediction(double length, double v0, double x) {
  require(length > 0.0, ErrorCode::InvalidConfig, "length must be > 0");
  require(x > 0.0, ErrorCode::InvalidConfig, "x must be > 0");
  require_contrast(v0);
  // First eigenvalue of the unit 1-D ball; radius rho has lambda_1 / rho^2.
  const double unit = first_oracle_te({ProblemKind::Helmholtz, 1, 1.0, v0, 0});
  const double half_width = std::sqrt(unit / x);
  // Guard against the bisection landing a hair above an exact fit.
  return static_cast<int>(std::floor(length / (2.0 * half_width) + 1e-9));
}

ExperimentResult packing_bound_check(const PackingParams& p) {
  const int prediction = packing_prediction(p.length, p.v0, p.x);
  const int cells = p.cells > 0 ? p.cells : static_cast<int>(std::ceil(32.0 * p.length / std::numbers::pi));
  const double lo = 0.02 * p.x;
  const auto r = galerkin_report(ProblemKind::Helmholtz, {{0.0, p.length}}, ConstantPotential{p.v0}, Unweighted{},
                                 {cells, 8, p.num_curves}, {lo, p.x, p.steps, 1e-8, 1e-6});
  const int observed = r.weighted_count(0.0, p.x);

  ExperimentResult out;
  out.name = "packing";
  out.inputs = {{"length", p.length}, {"v0", p.v0},         {"x", p.x},         {"slack", p.slack},
                {"cells", cells},     {"num_curves", p.num_curves}, {"steps", p.steps}, {"window", {lo, p.x}}};
  out.tables.push_back(report_table("galerkin", r));
  out.tables.push_back({"count", {"prediction", "observed", "threshold"},
                        {{static_cast<double>(prediction), static_cast<double>(observed), p.slack * prediction}}});
  const double ratio = prediction > 0 ? observed / static_cast<double>(prediction) : std::numeric_limits<double>::infinity();
  out.checks.push_back({"observed_over_prediction", ratio, p.slack, observed >= p.slack * prediction});
  out.summary = "observed " + std::to_string(observed) + " vs prediction " + std::to_string(prediction) +
                " (slack " + format_double(p.slack) + " absorbs discretization)";
  return out;
}

double list_drift(const std::vector<double>& from, const std::vector<double>& to) {
  if (from.empty() || to.empty()) return 0.0;
  double drift = 0.0;
  for (double a : from) {
    double best = std::numeric_limits<double>::infinity();
    for (double b : to) best = std::min(best, std::abs(a - b));
    drift = std::max(drift, best);
  }
  return drift;
}

ExperimentResult truncation_stability(const TruncationParams& p) {
  require(!p.counts.empty(), ErrorCode::InvalidConfig, "counts must not be empty");
  for (std::size_t i = 0; i < p.counts.size(); ++i) {
    require(p.counts[i] >= 1, ErrorCode::InvalidConfig, "counts must be >= 1");
    require(i == 0 || p.counts[i] >= p.counts[i - 1], ErrorCode::InvalidConfig, "counts must be ascending");
  }

  ExperimentResult out;
  out.name = "truncation";
  out.report_only = true;
  out.inputs = {{"problem", to_string(p.kind)},
                {"chain",
                 {{"start", p.chain.start},
                  {"gap", p.chain.gap},
                  {"first_length", p.chain.first_length},
                  {"decay_ratio", p.chain.decay_ratio}}},
                {"potential", {{"type", "power_decay"}, {"c", p.potential.c}, {"alpha", p.potential.alpha}}},
                {"counts", p.counts},
                {"window", {p.lambda_lo, p.lambda_hi}},
                {"cells_per_interval", p.discretization.cells_per_interval},
                {"num_curves", p.discretization.num_curves},
                {"steps", p.steps}};

  Table lists{"eigenvalues", {"count", "lambda", "curve_index", "multiplicity_estimate", "residual"}, {}};
  Table drift{"drift", {"count_from", "count_to", "max_drift", "entries_from", "entries_to"}, {}};
  std::vector<double> previous;
  for (std::size_t i = 0; i < p.counts.size(); ++i) {
    ProblemSpec spec;
    spec.kind = p.kind;
    ShrinkingChain chain = p.chain;
    chain.count = p.counts[i];
    spec.domain = chain;
    spec.potential = p.potential;
    spec.weight = AgmonWeight{p.potential.alpha};
    spec.discretization = p.discretization;
    spec.sweep = {p.lambda_lo, p.lambda_hi, p.steps, p.refine_tol, 1e-6};
    const TEReport r = find_transmission_eigenvalues(validate_problem(spec)).report;
    for (const auto& e : r.entries) {
      lists.rows.push_back({static_cast<double>(p.counts[i]), e.lambda, static_cast<double>(e.curve_index),
                            static_cast<double>(e.multiplicity_estimate), e.residual});
    }
    const auto current = r.lambdas();
    if (i > 0) {
      drift.rows.push_back({static_cast<double>(p.counts[i - 1]), static_cast<double>(p.counts[i]),
                            list_drift(previous, current), static_cast<double>(previous.size()),
                            static_cast<double>(current.size())});
    }
    previous = current;
  }
  out.tables.push_back(std::move(lists));
  out.tables.push_back(std::move(drift));
  out.summary = "no quantitative truncation claim is checked; drift reported only";
  return out;
}

ExperimentResult hypothesis_scan(const HypothesisParams& p) {
  RadialProblem base{ProblemKind::Schrodinger, p.dim, p.radius, p.v0, 0};
  validate_radial(base);
  require(p.lambda_max > kScanFloor, ErrorCode::InvalidConfig, "lambda_max must exceed the scan floor");
  require(p.steps >= 2, ErrorCode::InvalidConfig, "steps must be >= 2");
  const int ell_max = p.ell_max >= 0 ? p.ell_max : adaptive_ell_max(p.dim, p.radius, p.lambda_max);

  ExperimentResult out;
  out.name = "hypothesis";
  out.report_only = true;
  out.inputs = {{"problem", "schrodinger"}, {"dim", p.dim},     {"radius", p.radius}, {"v0", p.v0},
                {"lambda_max", p.lambda_max}, {"steps", p.steps}, {"ell_max", ell_max}};

  Table brackets{"brackets", {"ell", "lo", "hi", "root", "exact_hit"}, {}};
  const double tol = 1e-12 * std::max(1.0, p.lambda_max);
  for (int ell = 0; ell <= ell_max; ++ell) {
    if (harmonic_multiplicity(p.dim, ell) == 0) continue;
    RadialProblem q = base;
    q.ell = ell;
    auto f = [&q](double lambda) {
      try {
        return characteristic_determinant(q, lambda);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::DegenerateInterior) return std::numeric_limits<double>::quiet_NaN();
        throw;
      }
    };
    for (const auto& r : scan_roots(f, kScanFloor, p.lambda_max, p.steps, tol)) {
      brackets.rows.push_back({static_cast<double>(ell), r.lo, r.hi, r.value, r.exact_hit ? 1.0 : 0.0});
    }
  }
  out.summary = brackets.rows.empty() ? "no sign change found"
                                      : std::to_string(brackets.rows.size()) + " sign change(s) found";
  out.tables.push_back(std::move(brackets));
  return out;
}

}  // namespace ite
