#include "ite/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ite/error.hpp"

namespace ite {

namespace {

constexpr int kDegree = 3;
constexpr double kAsymmetryTol = 1e-12;

// Cubic B-spline values and first two derivatives on knot span `span`
// (de Boor / Cox recursion with the derivative triangle).
LocalSplines spline_derivatives(const std::vector<double>& t, int span, double x) {
  constexpr int p = kDegree;
  double ndu[p + 1][p + 1] = {};
  double left[p + 1] = {};
  double right[p + 1] = {};
  ndu[0][0] = 1.0;
  for (int j = 1; j <= p; ++j) {
    left[j] = x - t[span + 1 - j];
    right[j] = t[span + j] - x;
    double saved = 0.0;
    for (int r = 0; r < j; ++r) {
      ndu[j][r] = right[r + 1] + left[j - r];
      const double tmp = ndu[r][j - 1] / ndu[j][r];
      ndu[r][j] = saved + right[r + 1] * tmp;
      saved = left[j - r] * tmp;
    }
    ndu[j][j] = saved;
  }

  double ders[3][p + 1] = {};
  for (int j = 0; j <= p; ++j) ders[0][j] = ndu[j][p];

  double a[2][p + 1] = {};
  for (int r = 0; r <= p; ++r) {
    int s1 = 0;
    int s2 = 1;
    a[0][0] = 1.0;
    for (int k = 1; k <= 2; ++k) {
      double d = 0.0;
      const int rk = r - k;
      const int pk = p - k;
      if (r >= k) {
        a[s2][0] = a[s1][0] / ndu[pk + 1][rk];
        d = a[s2][0] * ndu[rk][pk];
      }
      const int j1 = rk >= -1 ? 1 : -rk;
      const int j2 = r - 1 <= pk ? k - 1 : p - r;
      for (int j = j1; j <= j2; ++j) {
        a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][rk + j];
        d += a[s2][j] * ndu[rk + j][pk];
      }
      if (r <= pk) {
        a[s2][k] = -a[s1][k - 1] / ndu[pk + 1][r];
        d += a[s2][k] * ndu[r][pk];
      }
      ders[k][r] = d;
      std::swap(s1, s2);
    }
  }
  for (int j = 0; j <= p; ++j) {
    ders[1][j] *= p;
    ders[2][j] *= p * (p - 1);
  }

  LocalSplines out;
  for (int j = 0; j <= p; ++j) {
    out.value[j] = ders[0][j];
    out.d1[j] = ders[1][j];
    out.d2[j] = ders[2][j];
  }
  return out;
}

double legendre_with_derivative(int q, double x, double& dp) {
  double p0 = 1.0;
  double p1 = x;
  if (q == 0) {
    dp = 0.0;
    return 1.0;
  }
  for (int j = 2; j <= q; ++j) {
    const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
    p0 = p1;
    p1 = p2;
  }
  dp = q * (x * p1 - p0) / (x * x - 1.0);
  return p1;
}

}  // namespace

QuadratureRule gauss_legendre(int q) {
  if (q < 1 || q > 64) throw Error(ErrorCode::OrderOutOfRange, "Gauss-Legendre order must lie in [1, 64]");
  QuadratureRule rule{std::vector<double>(q), std::vector<double>(q)};
  const int half = (q + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double p = legendre_with_derivative(q, x, dp);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    legendre_with_derivative(q, x, dp);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[q - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[q - 1 - i] = w;
  }
  if (q % 2 == 1) rule.nodes[q / 2] = 0.0;
  return rule;
}

ClampedBasis::ClampedBasis(std::vector<Interval> intervals, int cells_per_interval) : cells_(cells_per_interval) {
  if (cells_per_interval < 4) throw Error(ErrorCode::TooFewCells, "at least 4 cells per interval are required");
  int offset = 0;
  for (const auto& iv : intervals) {
    blocks_.push_back({iv, cells_, iv.length() / cells_, offset});
    offset += cells_ - 1;
  }
  dimension_ = offset;
}

std::vector<double> ClampedBasis::knots(int interval) const {
  const auto& blk = blocks_.at(interval);
  std::vector<double> t(static_cast<std::size_t>(cells_ + 2 * kDegree + 1));
  for (int i = 0; i < static_cast<int>(t.size()); ++i) {
    const int j = std::clamp(i - kDegree, 0, cells_);
    t[i] = j == cells_ ? blk.interval.b : blk.interval.a + j * blk.h;
  }
  return t;
}

int ClampedBasis::cell_of(int interval, double x) const {
  const auto& blk = blocks_.at(interval);
  const int c = static_cast<int>(std::floor((x - blk.interval.a) / blk.h));
  return std::clamp(c, 0, cells_ - 1);
}

LocalSplines ClampedBasis::evaluate(int interval, int cell, double x) const {
  return spline_derivatives(knots(interval), cell + kDegree, x);
}

int ClampedBasis::active_index(int interval, int spline) const {
  if (spline < 2 || spline > cells_) return -1;
  return blocks_.at(interval).offset + spline - 2;
}

std::array<double, 3> ClampedBasis::evaluate_function(std::span<const double> coeffs, int interval,
                                                      double x) const {
  const int cell = cell_of(interval, x);
  const auto loc = evaluate(interval, cell, x);
  std::array<double, 3> out{};
  for (int r = 0; r < 4; ++r) {
    const int g = active_index(interval, cell + r);
    if (g < 0) continue;
    out[0] += coeffs[g] * loc.value[r];
    out[1] += coeffs[g] * loc.d1[r];
    out[2] += coeffs[g] * loc.d2[r];
  }
  return out;
}

ClampedBasis build_basis(const std::vector<Interval>& intervals, int cells_per_interval) {
  return ClampedBasis(intervals, cells_per_interval);
}

FormMatrices assemble(const ClampedBasis& basis, const PotentialSpec& potential, const WeightKind& weight,
                      const QuadratureRule& quad) {
  const int n = basis.dimension();
  FormMatrices m{Matrix(n, n), Matrix(n, n), Matrix(n, n), Matrix(n, n), Matrix(n, n), Matrix(n, n)};

  for (int iv = 0; iv < static_cast<int>(basis.blocks().size()); ++iv) {
    const auto& blk = basis.blocks()[iv];
    const auto t = basis.knots(iv);
    for (int cell = 0; cell < blk.cells; ++cell) {
      const double x0 = t[cell + kDegree];
      const double x1 = t[cell + kDegree + 1];
      const double mid = 0.5 * (x0 + x1);
      const double half = 0.5 * (x1 - x0);
      std::array<int, 4> gidx{};
      for (int r = 0; r < 4; ++r) gidx[r] = basis.active_index(iv, cell + r);

      for (std::size_t qn = 0; qn < quad.nodes.size(); ++qn) {
        const double x = mid + half * quad.nodes[qn];
        const double wq = half * quad.weights[qn];
        const auto loc = spline_derivatives(t, cell + kDegree, x);
        const double inv_v = 1.0 / potential_value(potential, x);
        const double w = weight_value(weight, x);
        for (int r = 0; r < 4; ++r) {
          const int i = gidx[r];
          if (i < 0) continue;
          for (int s = 0; s < 4; ++s) {
            const int j = gidx[s];
            if (j < 0) continue;
            const double uv = loc.value[r] * loc.value[s];
            m.S(i, j) += wq * inv_v * loc.d2[r] * loc.d2[s];
            m.C(i, j) += wq * inv_v * (loc.d2[r] * loc.value[s] + loc.value[r] * loc.d2[s]);
            m.K(i, j) += wq * loc.d1[r] * loc.d1[s];
            m.M(i, j) += wq * uv;
            m.Minv(i, j) += wq * inv_v * uv;
            m.Mw(i, j) += wq * w * uv;
          }
        }
      }
    }
  }

  for (Matrix* a : {&m.S, &m.C, &m.K, &m.M, &m.Minv, &m.Mw}) {
    const double scale = std::max(1.0, a->max_abs());
    if (a->max_asymmetry() > kAsymmetryTol * scale) {
      throw Error(ErrorCode::AsymmetricAssembly, "assembled form matrix is not symmetric");
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double avg = 0.5 * ((*a)(i, j) + (*a)(j, i));
        (*a)(i, j) = avg;
        (*a)(j, i) = avg;
      }
  }
  return m;
}

Matrix assemble_A(const FormMatrices& m, ProblemKind kind, double lambda) {
  Matrix a = m.S;
  const double l2 = lambda * lambda;
  if (kind == ProblemKind::Schrodinger) {
    a.add_scaled(m.K, 1.0);
    a.add_scaled(m.C, lambda);
    a.add_scaled(m.M, -lambda);
    a.add_scaled(m.Minv, l2);
  } else {
    a.add_scaled(m.C, lambda);
    a.add_scaled(m.K, lambda);
    a.add_scaled(m.Minv, l2);
    a.add_scaled(m.M, -l2);
  }
  return a;
}

double direct_form_value(const ClampedBasis& basis, const PotentialSpec& potential, ProblemKind kind,
                         std::span<const double> u, double lambda, const QuadratureRule& quad) {
  double total = 0.0;
  for (int iv = 0; iv < static_cast<int>(basis.blocks().size()); ++iv) {
    const auto& blk = basis.blocks()[iv];
    const auto t = basis.knots(iv);
    for (int cell = 0; cell < blk.cells; ++cell) {
      const double x0 = t[cell + kDegree];
      const double x1 = t[cell + kDegree + 1];
      const double mid = 0.5 * (x0 + x1);
      const double half = 0.5 * (x1 - x0);
      for (std::size_t qn = 0; qn < quad.nodes.size(); ++qn) {
        const double x = mid + half * quad.nodes[qn];
        const auto loc = spline_derivatives(t, cell + kDegree, x);
        double val = 0.0;
        double d2 = 0.0;
        for (int r = 0; r < 4; ++r) {
          const int g = basis.active_index(iv, cell + r);
          if (g < 0) continue;
          val += u[g] * loc.value[r];
          d2 += u[g] * loc.d2[r];
        }
        const double v = potential_value(potential, x);
        const double perturbed = kind == ProblemKind::Schrodinger ? v : lambda * v;
        const double left = -d2 + (perturbed - lambda) * val;
        const double right = -d2 - lambda * val;
        total += half * quad.weights[qn] * left * right / v;
      }
    }
  }
  return total;
}

}  // namespace ite
