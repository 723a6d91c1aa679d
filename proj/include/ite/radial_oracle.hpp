#pragma once

// Transmission eigenvalues of a ball with a constant potential, from the
// value/derivative matching determinant of the regular interior and exterior
// radial waves.  Independent of the Galerkin engine; used as ground truth.

#include <functional>
#include <vector>

#include "ite/model.hpp"
#include "ite/specfun.hpp"

namespace ite {

struct RadialProblem {
  ProblemKind kind = ProblemKind::Helmholtz;
  int dim = 3;
  double radius = 1.0;
  double v0 = 0.5;
  int ell = 0;
};

void validate_radial(const RadialProblem& p);

struct InteriorWave {
  double kappa = 0.0;
  WaveBranch branch = WaveBranch::Oscillatory;
};

// Schrodinger: kappa^2 = lambda - v0.  Helmholtz: kappa^2 = lambda (1 - v0).
// Negative kappa^2 selects the evanescent branch with kappa = sqrt(-kappa^2).
InteriorWave interior_wavenumber(ProblemKind kind, double v0, double lambda);

// D(lambda) = y_e y_i' - y_i y_e' at r = R with both columns scaled by
// positive factors, so its zeros on (0, inf) are the order-ell eigenvalues.
double characteristic_determinant(const RadialProblem& p, double lambda);

struct ScannedRoot {
  double value = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool exact_hit = false;
};

inline constexpr double kExactHitThreshold = 1e-13;

// Sign-change scan on `steps` uniform points of [lo, hi] followed by
// bisection to width < tol.  NaN samples are skipped.
std::vector<ScannedRoot> scan_roots(const std::function<double(double)>& f, double lo, double hi,
                                    int steps, double tol);

// Dimension of degree-ell spherical harmonics in R^n, n in {1,2,3}.  For
// n = 1 the "harmonics" are the even (ell = 0) and odd (ell = 1) parts; higher
// ell have dimension 0.
int harmonic_multiplicity(int n, int ell);

struct TEEntry {
  double lambda = 0.0;
  int ell = 0;
  int degeneracy = 1;
};

struct TEList {
  std::vector<TEEntry> entries;

  // Degeneracy-weighted number of entries with lambda <= x.
  long weighted_count(double x) const;
  // Smallest eigenvalue; throws InsufficientCounts when empty.
  double first() const;
};

struct RadialScanOptions {
  double lambda_floor = 1e-6;
  // Grid points per scan window, raised when needed to keep 16 points per
  // pi of k R; one doubling pass follows if two roots land within 5 cells.
  int points_per_window = 400;
  // Relative bisection tolerance.
  double rel_tol = 1e-12;
};

TEList te_list_up_to(const RadialProblem& base, double x, int ell_max,
                     const RadialScanOptions& options = {});

// Largest angular order that can contribute eigenvalues below x, plus margin.
int adaptive_ell_max(int dim, double radius, double x);

}  // namespace ite
