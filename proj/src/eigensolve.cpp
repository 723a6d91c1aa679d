#include "ite/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "ite/error.hpp"

namespace ite {

namespace {

constexpr double kPivotFloor = 1e-13;
constexpr int kMaxQlSweeps = 50;

void require_square(const Matrix& m, const char* name) {
  if (m.rows() != m.cols()) throw Error(ErrorCode::InvalidConfig, std::string(name) + " must be square");
}

// C = L^{-1} A L^{-T}, symmetrized.
Matrix reduce_to_standard(const Matrix& a, const Matrix& l) {
  const int n = a.rows();
  // X = L^{-1} A, column by column.
  Matrix x(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      double s = a(i, j);
      for (int k = 0; k < i; ++k) s -= l(i, k) * x(k, j);
      x(i, j) = s / l(i, i);
    }
  }
  // C = L^{-1} X^T
  Matrix c(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      double s = x(j, i);
      for (int k = 0; k < i; ++k) s -= l(i, k) * c(k, j);
      c(i, j) = s / l(i, i);
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double avg = 0.5 * (c(i, j) + c(j, i));
      c(i, j) = avg;
      c(j, i) = avg;
    }
  return c;
}

}  // namespace

Matrix cholesky(const Matrix& b) {
  require_square(b, "B");
  const int n = b.rows();
  double max_diag = 0.0;
  for (int i = 0; i < n; ++i) max_diag = std::max(max_diag, std::abs(b(i, i)));
  const double floor = kPivotFloor * max_diag;

  Matrix l(n, n);
  for (int j = 0; j < n; ++j) {
    double d = b(j, j);
    for (int k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > floor)) {
      throw Error(ErrorCode::NotPositiveDefinite, "Cholesky pivot " + std::to_string(j) + " is not positive");
    }
    const double ljj = std::sqrt(d);
    l(j, j) = ljj;
    for (int i = j + 1; i < n; ++i) {
      double s = b(i, j);
      for (int k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / ljj;
    }
  }
  return l;
}

namespace detail {

Tridiagonal householder_tridiagonalize(Matrix& a, bool accumulate) {
  const int n = a.rows();
  Tridiagonal t{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  auto& d = t.diag;
  auto& e = t.offdiag;

  for (int i = n - 1; i > 0; --i) {
    const int l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (int k = 0; k < i; ++k) scale += std::abs(a(i, k));
      if (scale == 0.0) {
        e[i] = a(i, l);
      } else {
        for (int k = 0; k < i; ++k) {
          a(i, k) /= scale;
          h += a(i, k) * a(i, k);
        }
        double f = a(i, l);
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        a(i, l) = f - g;
        f = 0.0;
        for (int j = 0; j < i; ++j) {
          if (accumulate) a(j, i) = a(i, j) / h;
          g = 0.0;
          for (int k = 0; k <= j; ++k) g += a(j, k) * a(i, k);
          for (int k = j + 1; k < i; ++k) g += a(k, j) * a(i, k);
          e[j] = g / h;
          f += e[j] * a(i, j);
        }
        const double hh = f / (h + h);
        for (int j = 0; j < i; ++j) {
          f = a(i, j);
          g = e[j] - hh * f;
          e[j] = g;
          for (int k = 0; k <= j; ++k) a(j, k) -= f * e[k] + g * a(i, k);
        }
      }
    } else {
      e[i] = a(i, l);
    }
    d[i] = h;
  }

  if (accumulate) d[0] = 0.0;
  e[0] = 0.0;
  for (int i = 0; i < n; ++i) {
    if (accumulate) {
      if (d[i] != 0.0) {
        for (int j = 0; j < i; ++j) {
          double g = 0.0;
          for (int k = 0; k < i; ++k) g += a(i, k) * a(k, j);
          for (int k = 0; k < i; ++k) a(k, j) -= g * a(k, i);
        }
      }
      d[i] = a(i, i);
      a(i, i) = 1.0;
      for (int j = 0; j < i; ++j) {
        a(j, i) = 0.0;
        a(i, j) = 0.0;
      }
    } else {
      d[i] = a(i, i);
    }
  }
  return t;
}

void ql_implicit(Tridiagonal& t, Matrix* z) {
  auto& d = t.diag;
  auto& e = t.offdiag;
  const int n = static_cast<int>(d.size());
  if (n == 0) return;
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    int sweeps = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++sweeps > kMaxQlSweeps) {
        throw Error(ErrorCode::NoConvergence, "QL iteration exceeded 50 sweeps");
      }
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      int i = m - 1;
      for (; i >= l; --i) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        if (z != nullptr) {
          for (int k = 0; k < z->rows(); ++k) {
            f = (*z)(k, i + 1);
            (*z)(k, i + 1) = s * (*z)(k, i) + c * f;
            (*z)(k, i) = c * (*z)(k, i) - s * f;
          }
        }
      }
      if (r == 0.0 && i >= l) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
}

Eigenpairs generalized_eigenpairs(const Matrix& a, const Matrix& b) {
  require_square(a, "A");
  require_square(b, "B");
  if (a.rows() != b.rows()) throw Error(ErrorCode::InvalidConfig, "A and B dimensions differ");
  const int n = a.rows();
  const Matrix l = cholesky(b);
  Matrix c = reduce_to_standard(a, l);
  Tridiagonal t = householder_tridiagonalize(c, true);
  ql_implicit(t, &c);

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) { return t.diag[x] < t.diag[y]; });

  Eigenpairs out{std::vector<double>(n), Matrix(n, n)};
  for (int jj = 0; jj < n; ++jj) {
    const int j = order[jj];
    out.values[jj] = t.diag[j];
    // x = L^{-T} y
    for (int i = n - 1; i >= 0; --i) {
      double s = c(i, j);
      for (int k = i + 1; k < n; ++k) s -= l(k, i) * out.vectors(k, jj);
      out.vectors(i, jj) = s / l(i, i);
    }
  }
  return out;
}

}  // namespace detail

std::vector<double> symmetric_eigenvalues(Matrix a) {
  require_square(a, "A");
  detail::Tridiagonal t = detail::householder_tridiagonalize(a, false);
  detail::ql_implicit(t, nullptr);
  std::sort(t.diag.begin(), t.diag.end());
  return t.diag;
}

SpectrumSlice lowest_k(const Matrix& a, const Matrix& b, int k) {
  require_square(a, "A");
  require_square(b, "B");
  if (a.rows() != b.rows()) throw Error(ErrorCode::InvalidConfig, "A and B dimensions differ");
  if (k < 1) throw Error(ErrorCode::InvalidConfig, "K must be >= 1");
  const Matrix l = cholesky(b);
  auto values = symmetric_eigenvalues(reduce_to_standard(a, l));
  values.resize(std::min<std::size_t>(values.size(), static_cast<std::size_t>(k)));
  return {std::move(values), a.rows()};
}

}  // namespace ite
