#include <doctest.h>

#include <cmath>
#include <random>

#include "ite/eigensolve.hpp"
#include "test_support.hpp"

using namespace ite;

namespace {

// Orthogonal matrix from Gram-Schmidt on a random square matrix.
Matrix random_orthogonal(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix q(n, n);
  for (int j = 0; j < n; ++j) {
    std::vector<double> v(n);
    for (auto& x : v) x = g(rng);
    for (int p = 0; p < j; ++p) {
      double dot = 0.0;
      for (int i = 0; i < n; ++i) dot += v[i] * q(i, p);
      for (int i = 0; i < n; ++i) v[i] -= dot * q(i, p);
    }
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    for (int i = 0; i < n; ++i) q(i, j) = v[i] / norm;
  }
  return q;
}

bool all_close(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol * std::max(1.0, std::abs(b[i]))) return false;
  return true;
}

}  // namespace

TEST_CASE("lowest_k matches the inertia bisection oracle") {
  std::mt19937_64 rng(kTestSeed);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 8;
    const Matrix a = random_symmetric(n, rng, 3.0);
    const Matrix b = random_spd(n, rng);
    const auto got = lowest_k(a, b, n);
    CHECK(got.dimension == n);
    CHECK(all_close(got.eigenvalues, oracle::bisection_eigenvalues(a, b), 1e-10));
  }
}

TEST_CASE("truncation keeps the K smallest in ascending order") {
  std::mt19937_64 rng(kTestSeed + 1);
  const Matrix a = random_symmetric(7, rng);
  const Matrix b = random_spd(7, rng);
  const auto full = lowest_k(a, b, 7).eigenvalues;
  const auto three = lowest_k(a, b, 3).eigenvalues;
  REQUIRE(three.size() == 3);
  for (int i = 0; i < 3; ++i) CHECK(three[i] == full[i]);
  for (std::size_t i = 1; i < full.size(); ++i) CHECK(full[i] >= full[i - 1]);
  CHECK(lowest_k(a, b, 20).eigenvalues.size() == 7);
}

TEST_CASE("shift invariance: (A + s B, B) moves every eigenvalue by s") {
  std::mt19937_64 rng(kTestSeed + 2);
  std::uniform_real_distribution<double> shift(-5.0, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 7;
    const Matrix a = random_symmetric(n, rng);
    const Matrix b = random_spd(n, rng);
    const double s = shift(rng);
    Matrix as = a;
    as.add_scaled(b, s);
    auto want = lowest_k(a, b, n).eigenvalues;
    for (auto& v : want) v += s;
    CHECK(all_close(lowest_k(as, b, n).eigenvalues, want, 1e-10));
  }
}

TEST_CASE("similarity invariance under orthogonal congruence") {
  std::mt19937_64 rng(kTestSeed + 3);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 7;
    const Matrix a = random_symmetric(n, rng);
    const Matrix b = random_spd(n, rng);
    const Matrix q = random_orthogonal(n, rng);
    const Matrix qa = q.transposed() * a * q;
    const Matrix qb = q.transposed() * b * q;
    CHECK(all_close(lowest_k(qa, qb, n).eigenvalues, lowest_k(a, b, n).eigenvalues, 1e-10));
  }
}

TEST_CASE("standard problem with B = I") {
  Matrix a(3, 3);
  a(0, 0) = 2.0;
  a(1, 1) = -1.0;
  a(2, 2) = 5.0;
  a(0, 1) = a(1, 0) = 0.0;
  const auto v = lowest_k(a, Matrix::identity(3), 3).eigenvalues;
  CHECK(v[0] == doctest::Approx(-1.0));
  CHECK(v[1] == doctest::Approx(2.0));
  CHECK(v[2] == doctest::Approx(5.0));

  // Second difference matrix: 2 - 2 cos(j pi / (n + 1)).
  const int n = 12;
  Matrix t(n, n);
  for (int i = 0; i < n; ++i) {
    t(i, i) = 2.0;
    if (i > 0) t(i, i - 1) = t(i - 1, i) = -1.0;
  }
  const auto e = symmetric_eigenvalues(t);
  for (int j = 1; j <= n; ++j) CHECK(e[j - 1] == doctest::Approx(2.0 - 2.0 * std::cos(j * M_PI / (n + 1))).epsilon(1e-12));
}

TEST_CASE("residuals of the generalized eigenpairs") {
  std::mt19937_64 rng(kTestSeed + 4);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 10;
    const Matrix a = random_symmetric(n, rng);
    const Matrix b = random_spd(n, rng);
    const auto pairs = detail::generalized_eigenpairs(a, b);
    for (int j = 0; j < n; ++j) {
      std::vector<double> x(n);
      for (int i = 0; i < n; ++i) x[i] = pairs.vectors(i, j);
      const auto ax = a * std::span<const double>(x);
      const auto bx = b * std::span<const double>(x);
      double res = 0.0, scale = 0.0;
      for (int i = 0; i < n; ++i) {
        res = std::max(res, std::abs(ax[i] - pairs.values[j] * bx[i]));
        scale = std::max(scale, std::abs(bx[i]));
      }
      CHECK(res <= 1e-10 * std::max(1.0, std::abs(pairs.values[j])) * scale);
    }
  }
}

TEST_CASE("Householder reduction is an orthogonal similarity to tridiagonal form") {
  std::mt19937_64 rng(kTestSeed + 5);
  const int n = 8;
  const Matrix a = random_symmetric(n, rng);
  Matrix q = a;
  const auto t = detail::householder_tridiagonalize(q, true);
  const Matrix r = q.transposed() * a * q;
  for (int i = 0; i < n; ++i) {
    CHECK(r(i, i) == doctest::Approx(t.diag[i]).epsilon(1e-12));
    for (int j = 0; j < n; ++j) {
      if (std::abs(i - j) > 1) CHECK(std::abs(r(i, j)) < 1e-12);
    }
    if (i > 0) CHECK(std::abs(r(i, i - 1)) == doctest::Approx(std::abs(t.offdiag[i])).epsilon(1e-12));
  }
  const Matrix qtq = q.transposed() * q;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) CHECK(std::abs(qtq(i, j) - (i == j ? 1.0 : 0.0)) < 1e-13);
}

TEST_CASE("Cholesky") {
  std::mt19937_64 rng(kTestSeed + 6);
  const Matrix b = random_spd(6, rng);
  const Matrix l = cholesky(b);
  const Matrix llt = l * l.transposed();
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      CHECK(llt(i, j) == doctest::Approx(b(i, j)).epsilon(1e-13));
      if (j > i) CHECK(l(i, j) == 0.0);
    }

  Matrix indefinite = Matrix::identity(3);
  indefinite(2, 2) = -1.0;
  CHECK(error_code_of([&] { cholesky(indefinite); }) == ErrorCode::NotPositiveDefinite);
  Matrix singular(2, 2, 1.0);
  CHECK(error_code_of([&] { lowest_k(Matrix::identity(2), singular, 1); }) == ErrorCode::NotPositiveDefinite);
  CHECK(error_code_of([] { lowest_k(Matrix::identity(2), Matrix::identity(3), 1); }) == ErrorCode::InvalidConfig);
  CHECK(error_code_of([] { lowest_k(Matrix::identity(2), Matrix::identity(2), 0); }) == ErrorCode::InvalidConfig);
}

TEST_CASE("documented small problems") {
  Matrix b(2, 2);
  b(0, 0) = 4.0;
  b(0, 1) = b(1, 0) = 2.0;
  b(1, 1) = 5.0;
  const Matrix l = cholesky(b);
  CHECK(l(0, 0) == doctest::Approx(2.0));
  CHECK(l(1, 0) == doctest::Approx(1.0));
  CHECK(l(1, 1) == doctest::Approx(2.0));
  const Matrix id = cholesky(Matrix::identity(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(id(i, j) == (i == j ? 1.0 : 0.0));

  Matrix bad(2, 2, 2.0);
  bad(0, 0) = bad(1, 1) = 1.0;
  CHECK(error_code_of([&] { cholesky(bad); }) == ErrorCode::NotPositiveDefinite);

  Matrix a(2, 2, 1.0);
  a(0, 0) = a(1, 1) = 2.0;
  const auto e = lowest_k(a, Matrix::identity(2), 2).eigenvalues;
  CHECK(e[0] == doctest::Approx(1.0));
  CHECK(e[1] == doctest::Approx(3.0));

  Matrix ad(2, 2), bd(2, 2);
  ad(0, 0) = 2.0;
  ad(1, 1) = 6.0;
  bd(0, 0) = 1.0;
  bd(1, 1) = 2.0;
  const auto g = lowest_k(ad, bd, 2).eigenvalues;
  CHECK(g[0] == doctest::Approx(2.0));
  CHECK(g[1] == doctest::Approx(3.0));
}

TEST_CASE("inertia counts below random thresholds agree with lowest_k") {
  std::mt19937_64 rng(kTestSeed + 7);
  std::uniform_real_distribution<double> thr(-6.0, 6.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + trial % 6;
    const Matrix a = random_symmetric(n, rng, 3.0);
    const Matrix b = random_spd(n, rng);
    const auto values = lowest_k(a, b, n).eigenvalues;
    for (int t = 0; t < 20; ++t) {
      const double s = thr(rng);
      int below = 0;
      for (double v : values) below += v < s ? 1 : 0;
      CHECK(below == oracle::inertia_below(a, b, s));
    }
  }
}
