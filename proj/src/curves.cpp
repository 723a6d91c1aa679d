#include "ite/curves.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "ite/eigensolve.hpp"
#include "ite/error.hpp"
#include "ite/io.hpp"

namespace ite {

namespace {

int resolve_threads(int threads, std::size_t tasks) {
  int t = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
  t = std::max(t, 1);
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(t), std::max<std::size_t>(tasks, 1)));
}

[[noreturn]] void rethrow_at(const Error& e, double lambda) {
  throw Error(e.code(), std::string(e.what()) + " (lambda = " + format_double(lambda) + ")");
}

bool sign_differs(double a, double b) { return (a < 0.0) != (b < 0.0); }

}  // namespace

CurveTable sweep_grid(ProblemKind kind, const FormMatrices& matrices, const std::vector<double>& grid,
                      int num_curves, int threads) {
  CurveTable table{grid, std::vector<std::vector<double>>(grid.size())};
  std::vector<std::exception_ptr> errors(grid.size());
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      try {
        try {
          table.values[i] = lowest_k(assemble_A(matrices, kind, grid[i]), matrices.Mw, num_curves).eigenvalues;
        } catch (const Error& e) {
          rethrow_at(e, grid[i]);
        }
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  const int nthreads = resolve_threads(threads, grid.size());
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  }
  // Report the failure at the smallest grid index, whatever finished first.
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return table;
}

CurveTable sweep(const ValidatedProblem& problem, const FormMatrices& matrices, const SweepConfig& config,
                 int threads) {
  return sweep_grid(problem.kind, matrices, config.grid(), problem.discretization.num_curves, threads);
}

std::vector<Bracket> find_crossings(const CurveTable& table) {
  std::vector<Bracket> out;
  const auto n = table.lambdas.size();
  if (n < 2) return out;
  const int k = table.num_curves();
  for (int nu = 0; nu < k; ++nu) {
    double scale = 0.0;
    for (const auto& row : table.values) scale = std::max(scale, std::abs(row[nu]));
    const double zero_tol = kExactZeroRelTol * scale;
    auto is_zero = [&](std::size_t i) { return std::abs(table.values[i][nu]) < zero_tol; };

    for (std::size_t i = 0; i < n; ++i) {
      if (is_zero(i)) {
        out.push_back({nu + 1, table.lambdas[i], table.lambdas[i]});
        continue;
      }
      if (i + 1 < n && !is_zero(i + 1) && sign_differs(table.values[i][nu], table.values[i + 1][nu])) {
        out.push_back({nu + 1, table.lambdas[i], table.lambdas[i + 1]});
      }
    }
  }
  return out;
}

double sorted_eigenvalue(ProblemKind kind, const FormMatrices& matrices, int curve_index, double lambda) {
  const auto slice = lowest_k(assemble_A(matrices, kind, lambda), matrices.Mw, curve_index);
  if (static_cast<int>(slice.eigenvalues.size()) < curve_index) {
    throw Error(ErrorCode::InvalidConfig, "curve index exceeds the Galerkin dimension");
  }
  return slice.eigenvalues[curve_index - 1];
}

double bisect_root(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (lo == hi) return lo;
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (!sign_differs(flo, fhi)) {
    throw Error(ErrorCode::BracketInvalid, "endpoint signs agree on [" + format_double(lo) + ", " +
                                               format_double(hi) + "]");
  }
  while (hi - lo >= tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if (sign_differs(flo, fm)) {
      hi = mid;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

double refine(ProblemKind kind, const FormMatrices& matrices, const Bracket& bracket, double refine_tol) {
  return bisect_root(
      [&](double lambda) { return sorted_eigenvalue(kind, matrices, bracket.curve_index, lambda); },
      bracket.left, bracket.right, refine_tol);
}

std::vector<double> TEReport::lambdas() const {
  std::vector<double> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.lambda);
  return out;
}

int TEReport::weighted_count(double lo, double hi) const {
  int n = 0;
  for (const auto& e : entries)
    if (e.lambda >= lo && e.lambda <= hi) n += e.multiplicity_estimate;
  return n;
}

TEReport report(ProblemKind kind, std::vector<RefinedCrossing> crossings, double cluster_tol) {
  std::sort(crossings.begin(), crossings.end(), [](const RefinedCrossing& a, const RefinedCrossing& b) {
    return a.lambda != b.lambda ? a.lambda < b.lambda : a.curve_index < b.curve_index;
  });
  TEReport out;
  std::size_t i = 0;
  while (i < crossings.size()) {
    std::size_t j = i + 1;
    while (j < crossings.size() && crossings[j].lambda - crossings[j - 1].lambda <= cluster_tol) ++j;
    TEReportEntry e;
    double sum = 0.0;
    e.curve_index = crossings[i].curve_index;
    e.bracket_lo = crossings[i].bracket_lo;
    e.bracket_hi = crossings[i].bracket_hi;
    for (std::size_t k = i; k < j; ++k) {
      sum += crossings[k].lambda;
      e.curve_index = std::min(e.curve_index, crossings[k].curve_index);
      e.residual = std::max(e.residual, crossings[k].residual);
      e.bracket_lo = std::min(e.bracket_lo, crossings[k].bracket_lo);
      e.bracket_hi = std::max(e.bracket_hi, crossings[k].bracket_hi);
    }
    e.multiplicity_estimate = static_cast<int>(j - i);
    e.lambda = sum / static_cast<double>(j - i);
    const bool excluded = kind == ProblemKind::Helmholtz && std::abs(e.lambda) < cluster_tol;
    if (!excluded) out.entries.push_back(e);
    i = j;
  }
  out.metadata.kind = kind;
  out.metadata.cluster_tol = cluster_tol;
  return out;
}

FormMatrices assemble_problem(const ValidatedProblem& problem) {
  const auto basis = build_basis(problem.intervals, problem.discretization.cells_per_interval);
  return assemble(basis, problem.potential, problem.weight, gauss_legendre(problem.discretization.quad_points));
}

namespace {

// Sign changes of one sorted curve inside a cell whose endpoints disagree
// with a fresh evaluation; the cell is re-sampled at doubled resolution until
// brackets reappear or the resolution budget runs out.
std::vector<Bracket> resample_cell(ProblemKind kind, const FormMatrices& m, const Bracket& b) {
  std::vector<Bracket> out;
  for (int points = 3; points <= 65 && out.empty(); points = 2 * points - 1) {
    std::vector<double> mu(static_cast<std::size_t>(points));
    const double h = (b.right - b.left) / (points - 1);
    for (int i = 0; i < points; ++i) mu[i] = sorted_eigenvalue(kind, m, b.curve_index, b.left + h * i);
    for (int i = 0; i + 1 < points; ++i) {
      if (sign_differs(mu[i], mu[i + 1])) out.push_back({b.curve_index, b.left + h * i, b.left + h * (i + 1)});
    }
  }
  return out;
}

}  // namespace

FindResult find_transmission_eigenvalues(const ValidatedProblem& problem, int threads) {
  const FormMatrices m = assemble_problem(problem);
  FindResult result;
  result.table = sweep(problem, m, problem.sweep, threads);

  std::vector<RefinedCrossing> crossings;
  const double tol = problem.sweep.refine_tol;
  auto refine_one = [&](const Bracket& b) {
    const double lambda = refine(problem.kind, m, b, tol);
    const double residual = std::abs(sorted_eigenvalue(problem.kind, m, b.curve_index, lambda));
    crossings.push_back({b.curve_index, lambda, residual, b.left, b.right});
  };
  for (const auto& b : find_crossings(result.table)) {
    try {
      refine_one(b);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BracketInvalid) throw;
      for (const auto& sub : resample_cell(problem.kind, m, b)) refine_one(sub);
    }
  }

  result.report = report(problem.kind, std::move(crossings), problem.sweep.cluster_tol);
  auto& md = result.report.metadata;
  md.problem_hash = problem_hash(problem);
  md.lambda_min = problem.sweep.lambda_min;
  md.lambda_max = problem.sweep.lambda_max;
  md.steps = problem.sweep.steps;
  md.num_curves = problem.discretization.num_curves;
  md.cells_per_interval = problem.discretization.cells_per_interval;
  md.refine_tol = problem.sweep.refine_tol;
  return result;
}

std::string problem_hash(const ValidatedProblem& problem) {
  return hex64(fnv1a64(dump_json(problem_to_json(problem), -1)));
}

std::string curve_table_csv(const CurveTable& table) {
  std::string out = "lambda";
  for (int nu = 1; nu <= table.num_curves(); ++nu) out += ",mu_" + std::to_string(nu);
  out += '\n';
  for (std::size_t i = 0; i < table.lambdas.size(); ++i) {
    out += format_double(table.lambdas[i]);
    for (double v : table.values[i]) {
      out += ',';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

nlohmann::json report_to_json(const TEReport& r) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"lambda", e.lambda},
                       {"curve_index", e.curve_index},
                       {"multiplicity_estimate", e.multiplicity_estimate},
                       {"residual", e.residual}});
  }
  const auto& md = r.metadata;
  nlohmann::json meta = {{"problem_hash", md.problem_hash},
                         {"problem", to_string(md.kind)},
                         {"grid", {{"lambda_min", md.lambda_min}, {"lambda_max", md.lambda_max}, {"steps", md.steps}}},
                         {"num_curves", md.num_curves},
                         {"cells_per_interval", md.cells_per_interval},
                         {"refine_tol", md.refine_tol},
                         {"cluster_tol", md.cluster_tol}};
  return {{"transmission_eigenvalues", entries}, {"metadata", meta}};
}

}  // namespace ite
