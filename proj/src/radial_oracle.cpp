#include "ite/radial_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "bessel_series.hpp"
#include "ite/error.hpp"

namespace ite {

namespace {

constexpr double kDegenerateKappaSq = 1e-14;
constexpr double kContrastTol = 1e-12;

// Column scaling to unit sup norm keeps D in [-2, 2] and its zero set intact.
template <typename Real>
double determinant_in(const RadialProblem& p, double lambda, WaveBranch inner_branch) {
  using std::abs;
  using std::sqrt;
  const Real lam(lambda);
  const Real radius(p.radius);
  const Real v0(p.v0);
  const Real k = sqrt(lam);
  const Real kappa_sq = p.kind == ProblemKind::Schrodinger ? lam - v0 : lam * (1 - v0);
  const Real kappa = sqrt(abs(kappa_sq));
  const double nu = 0.5 * (p.dim - 2) + p.ell;
  const auto ye = detail::scaled_wave<Real>(nu, p.ell, true, k, radius);
  const auto yi = detail::scaled_wave<Real>(nu, p.ell, inner_branch == WaveBranch::Oscillatory, kappa, radius);
  const Real se = std::max(abs(ye.value), abs(ye.d_dr) * radius);
  const Real si = std::max(abs(yi.value), abs(yi.d_dr) * radius);
  return static_cast<double>(radius * (ye.value * yi.d_dr - yi.value * ye.d_dr) / (se * si));
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double flo, double tol) {
  for (int it = 0; it < 200 && hi - lo >= tol; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    double fm = f(mid);
    if (std::isnan(fm)) {
      // Landed on a branch boundary; probe slightly to the right instead.
      mid = lo + 0.5001 * (hi - lo);
      fm = f(mid);
      if (std::isnan(fm)) break;
    }
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// At least 16 samples per pi of k R at the top of the window.
int resolution(double radius, double x, int points_per_window) {
  const double floor = 16.0 * std::sqrt(std::max(x, 0.0)) * radius / std::numbers::pi;
  return std::max(points_per_window, static_cast<int>(std::ceil(floor)));
}

}  // namespace

void validate_radial(const RadialProblem& p) {
  if (p.dim < 1 || p.dim > 3) throw Error(ErrorCode::UnsupportedDimension, "ball dimension must be 1, 2 or 3");
  if (!(p.radius > 0.0) || !std::isfinite(p.radius)) throw Error(ErrorCode::InvalidConfig, "radius must be > 0");
  if (!(p.v0 > 0.0) || !std::isfinite(p.v0)) throw Error(ErrorCode::NonPositivePotential, "v0 must be > 0");
  if (p.ell < 0) throw Error(ErrorCode::InvalidConfig, "angular order must be >= 0");
  if (p.kind == ProblemKind::Helmholtz && std::abs(p.v0 - 1.0) < kContrastTol) {
    throw Error(ErrorCode::HelmholtzContrastDegenerate, "Helmholtz contrast vanishes for v0 = 1");
  }
}

InteriorWave interior_wavenumber(ProblemKind kind, double v0, double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::ArgumentOutOfRange, "lambda must be > 0");
  const double kappa_sq = kind == ProblemKind::Schrodinger ? lambda - v0 : lambda * (1.0 - v0);
  if (std::abs(kappa_sq) < kDegenerateKappaSq) {
    throw Error(ErrorCode::DegenerateInterior, "interior wavenumber vanishes");
  }
  if (kappa_sq > 0.0) return {std::sqrt(kappa_sq), WaveBranch::Oscillatory};
  return {std::sqrt(-kappa_sq), WaveBranch::Evanescent};
}

double characteristic_determinant(const RadialProblem& p, double lambda) {
  const InteriorWave inner = interior_wavenumber(p.kind, p.v0, lambda);
  const double nu = 0.5 * (p.dim - 2) + p.ell;
  const double ze = std::sqrt(lambda) * p.radius;
  const double zi = inner.kappa * p.radius;
  const bool osc = inner.branch == WaveBranch::Oscillatory;
  if (ze > kBesselJMaxArgument || zi > (osc ? kBesselJMaxArgument : kBesselIMaxArgument)) {
    throw Error(ErrorCode::ArgumentOutOfRange, "k R exceeds the Bessel series window");
  }
  // Sum the series and form the determinant in extended precision: the
  // alternating series cancel, and eigenvalues of higher multiplicity make D
  // vanish to third order, so double rounding would blur the root.
  const double lost = std::max(detail::log10_peak_term(nu, ze), osc ? detail::log10_peak_term(nu, zi) : 0.0);
  if (lost < 10.0) return determinant_in<detail::Float50>(p, lambda, inner.branch);
  if (lost < 40.0) return determinant_in<detail::Float80>(p, lambda, inner.branch);
  return determinant_in<detail::Float130>(p, lambda, inner.branch);
}

std::vector<ScannedRoot> scan_roots(const std::function<double(double)>& f, double lo, double hi,
                                    int steps, double tol) {
  if (!(hi > lo) || steps < 2) throw Error(ErrorCode::InvalidConfig, "scan_roots needs lo < hi and steps >= 2");
  std::vector<double> xs(static_cast<std::size_t>(steps));
  std::vector<double> fs(xs.size());
  const double h = (hi - lo) / (steps - 1);
  for (int i = 0; i < steps; ++i) {
    xs[i] = i + 1 == steps ? hi : lo + h * i;
    fs[i] = f(xs[i]);
  }

  std::vector<ScannedRoot> roots;
  int prev = -1;
  for (int i = 0; i < steps; ++i) {
    if (std::isnan(fs[i])) continue;
    const bool hit = std::abs(fs[i]) < kExactHitThreshold;
    if (hit) {
      roots.push_back({xs[i], xs[i], xs[i], true});
    } else if (prev >= 0 && std::abs(fs[prev]) >= kExactHitThreshold && (fs[prev] < 0.0) != (fs[i] < 0.0)) {
      const double r = bisect(f, xs[prev], xs[i], fs[prev], tol);
      roots.push_back({r, xs[prev], xs[i], false});
    }
    prev = i;
  }
  return roots;
}

int harmonic_multiplicity(int n, int ell) {
  if (ell < 0) throw Error(ErrorCode::InvalidConfig, "angular order must be >= 0");
  switch (n) {
    case 1: return ell <= 1 ? 1 : 0;
    case 2: return ell == 0 ? 1 : 2;
    case 3: return 2 * ell + 1;
    default: throw Error(ErrorCode::UnsupportedDimension, "harmonic multiplicity needs n in {1,2,3}");
  }
}

long TEList::weighted_count(double x) const {
  long n = 0;
  for (const auto& e : entries) {
    if (e.lambda <= x) n += e.degeneracy;
  }
  return n;
}

double TEList::first() const {
  if (entries.empty()) throw Error(ErrorCode::InsufficientCounts, "no transmission eigenvalue in the window");
  return entries.front().lambda;
}

int adaptive_ell_max(int dim, double radius, double x) {
  if (dim == 1) return 1;
  return static_cast<int>(std::ceil(std::sqrt(std::max(x, 0.0)) * radius)) + 4;
}

TEList te_list_up_to(const RadialProblem& base, double x, int ell_max, const RadialScanOptions& options) {
  validate_radial(base);
  if (!(x > 0.0)) throw Error(ErrorCode::ArgumentOutOfRange, "x must be > 0");
  TEList out;
  const double lo = options.lambda_floor;
  if (x <= lo) return out;

  const double tol = options.rel_tol * std::max(1.0, x);
  const int base_steps = resolution(base.radius, x, options.points_per_window);

  for (int ell = 0; ell <= ell_max; ++ell) {
    const int mult = harmonic_multiplicity(base.dim, ell);
    if (mult == 0) continue;
    RadialProblem p = base;
    p.ell = ell;
    auto f = [&p](double lambda) {
      try {
        return characteristic_determinant(p, lambda);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::DegenerateInterior) return std::numeric_limits<double>::quiet_NaN();
        throw;
      }
    };
    auto roots = scan_roots(f, lo, x, base_steps, tol);
    // Roots within five grid cells of each other may hide an aliased pair.
    const double cell = (x - lo) / (base_steps - 1);
    for (std::size_t i = 1; i < roots.size(); ++i) {
      if (roots[i].value - roots[i - 1].value < 5.0 * cell) {
        roots = scan_roots(f, lo, x, 2 * base_steps - 1, tol);
        break;
      }
    }
    for (const auto& r : roots) out.entries.push_back({r.value, ell, mult});
  }
  std::sort(out.entries.begin(), out.entries.end(), [](const TEEntry& a, const TEEntry& b) {
    return a.lambda != b.lambda ? a.lambda < b.lambda : a.ell < b.ell;
  });
  return out;
}

}  // namespace ite
