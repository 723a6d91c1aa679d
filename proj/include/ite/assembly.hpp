#pragma once

// Galerkin discretization of the quadratic form family on interval unions.
//
// Each interval carries an open-knot (clamped) uniform cubic B-spline space
// with the two outermost coefficients at each end fixed to zero, so every
// basis function vanishes together with its derivative at the endpoints.

#include <array>
#include <span>
#include <vector>

#include "ite/matrix.hpp"
#include "ite/model.hpp"

namespace ite {

struct QuadratureRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Gauss-Legendre rule with q points, 1 <= q <= 64.
QuadratureRule gauss_legendre(int q);

struct IntervalBlock {
  Interval interval;
  int cells = 0;
  double h = 0.0;
  int offset = 0;  // first global index of this block's active functions
};

// Values and derivatives of the four cubic B-splines that are non-zero on one
// knot cell; entry r belongs to spline `cell + r` of that interval.
struct LocalSplines {
  std::array<double, 4> value{};
  std::array<double, 4> d1{};
  std::array<double, 4> d2{};
};

class ClampedBasis {
 public:
  ClampedBasis(std::vector<Interval> intervals, int cells_per_interval);

  int dimension() const { return dimension_; }
  int cells_per_interval() const { return cells_; }
  const std::vector<IntervalBlock>& blocks() const { return blocks_; }

  // Splines of one interval are numbered 0 .. cells + 2.
  int spline_count() const { return cells_ + 3; }
  std::vector<double> knots(int interval) const;
  int cell_of(int interval, double x) const;
  LocalSplines evaluate(int interval, int cell, double x) const;
  // Global index of an unconstrained spline, or -1 for the clamped ones.
  int active_index(int interval, int spline) const;

  // Coefficient-space evaluation of u, u', u'' at x inside `interval`.
  std::array<double, 3> evaluate_function(std::span<const double> coeffs, int interval, double x) const;

 private:
  int cells_ = 0;
  int dimension_ = 0;
  std::vector<IntervalBlock> blocks_;
};

ClampedBasis build_basis(const std::vector<Interval>& intervals, int cells_per_interval);

// S = (1/V) u''v'',  C = (1/V)(u''v + u v''),  K = u'v',  M = u v,
// Minv = (1/V) u v,  Mw = w u v   (all integrated over the domain)
struct FormMatrices {
  Matrix S, C, K, M, Minv, Mw;

  int dimension() const { return M.rows(); }
};

FormMatrices assemble(const ClampedBasis& basis, const PotentialSpec& potential, const WeightKind& weight,
                      const QuadratureRule& quad);

// Schrodinger: (S + K) + lambda (C - M) + lambda^2 Minv
// Helmholtz:   S + lambda (C + K) + lambda^2 (Minv - M)
Matrix assemble_A(const FormMatrices& m, ProblemKind kind, double lambda);

// Q_lambda(u) from its unexpanded definition
//   < (-u'' + (W - lambda) u) , (1/V) (-u'' - lambda u) >,  W = V or lambda V,
// by pointwise quadrature.  Independent check on assemble_A.
double direct_form_value(const ClampedBasis& basis, const PotentialSpec& potential, ProblemKind kind,
                         std::span<const double> u, double lambda, const QuadratureRule& quad);

}  // namespace ite
