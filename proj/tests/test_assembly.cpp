#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ite/assembly.hpp"
#include "ite/eigensolve.hpp"
#include "test_support.hpp"

using namespace ite;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> random_coeffs(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> c(n);
  for (auto& x : c) x = u(rng);
  return c;
}

// Solve B x = rhs with B = L L^T.
std::vector<double> spd_solve(const Matrix& b, std::vector<double> rhs) {
  const Matrix l = cholesky(b);
  const int n = b.rows();
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < i; ++k) rhs[i] -= l(i, k) * rhs[k];
    rhs[i] /= l(i, i);
  }
  for (int i = n - 1; i >= 0; --i) {
    for (int k = i + 1; k < n; ++k) rhs[i] -= l(k, i) * rhs[k];
    rhs[i] /= l(i, i);
  }
  return rhs;
}

}  // namespace

TEST_CASE("basis dimensions") {
  CHECK(build_basis({{0.0, 1.0}}, 4).dimension() == 3);
  CHECK(build_basis({{0.0, 1.0}, {2.0, 3.0}}, 8).dimension() == 14);
  CHECK(error_code_of([] { build_basis({{0.0, 1.0}}, 3); }) == ErrorCode::TooFewCells);
}

TEST_CASE("Gauss-Legendre rules") {
  const auto q1 = gauss_legendre(1);
  REQUIRE(q1.nodes.size() == 1);
  CHECK(q1.nodes[0] == doctest::Approx(0.0));
  CHECK(q1.weights[0] == doctest::Approx(2.0));

  const auto q2 = gauss_legendre(2);
  CHECK(std::abs(std::abs(q2.nodes[0]) - 1.0 / std::sqrt(3.0)) < 1e-15);
  CHECK(q2.nodes[0] == doctest::Approx(-q2.nodes[1]));
  CHECK(q2.weights[0] == doctest::Approx(1.0));
  CHECK(q2.weights[1] == doctest::Approx(1.0));

  const auto q4 = gauss_legendre(4);
  double x6 = 0.0;
  for (std::size_t i = 0; i < q4.nodes.size(); ++i) x6 += q4.weights[i] * std::pow(q4.nodes[i], 6);
  CHECK(std::abs(x6 - 2.0 / 7.0) < 1e-14);

  CHECK(error_code_of([] { gauss_legendre(0); }) == ErrorCode::OrderOutOfRange);
  CHECK(error_code_of([] { gauss_legendre(65); }) == ErrorCode::OrderOutOfRange);
}

TEST_CASE("Gauss-Legendre exactness up to degree 2q - 1") {
  for (int q = 1; q <= 64; ++q) {
    const auto r = gauss_legendre(q);
    double wsum = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      wsum += r.weights[i];
      CHECK(r.nodes[i] == doctest::Approx(-r.nodes[r.nodes.size() - 1 - i]).epsilon(1e-14));
    }
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    for (int d : {2 * q - 2, 2 * q - 1}) {
      if (d < 0) continue;
      double s = 0.0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], d);
      const double exact = d % 2 == 0 ? 2.0 / (d + 1) : 0.0;
      CHECK(std::abs(s - exact) < 1e-13);
    }
  }
}

TEST_CASE("clamped functions vanish with their slope at every endpoint") {
  std::mt19937_64 rng(kTestSeed);
  const ClampedBasis basis = build_basis({{-1.0, 0.5}, {1.0, 1.25}, {2.0, 4.0}}, 9);
  const auto c = random_coeffs(basis.dimension(), rng);
  for (int iv = 0; iv < static_cast<int>(basis.blocks().size()); ++iv) {
    const auto& b = basis.blocks()[iv].interval;
    for (double x : {b.a, b.b}) {
      const auto f = basis.evaluate_function(c, iv, x);
      CHECK(std::abs(f[0]) < 1e-13);
      CHECK(std::abs(f[1]) < 1e-12);
    }
    const auto mid = basis.evaluate_function(c, iv, 0.5 * (b.a + b.b));
    CHECK(std::abs(mid[0]) > 0.0);
  }
}

TEST_CASE("partition of unity at every quadrature node") {
  const ClampedBasis basis = build_basis({{0.0, 2.0}, {3.0, 3.5}}, 11);
  const auto quad = gauss_legendre(8);
  for (int iv = 0; iv < 2; ++iv) {
    const auto& blk = basis.blocks()[iv];
    for (int cell = 0; cell < blk.cells; ++cell) {
      for (double t : quad.nodes) {
        const double x = blk.interval.a + blk.h * (cell + 0.5 * (t + 1.0));
        const auto s = basis.evaluate(iv, cell, x);
        CHECK(std::abs(s.value[0] + s.value[1] + s.value[2] + s.value[3] - 1.0) < 1e-13);
        CHECK(std::abs(s.d1[0] + s.d1[1] + s.d1[2] + s.d1[3]) < 1e-11);
        CHECK(std::abs(s.d2[0] + s.d2[1] + s.d2[2] + s.d2[3]) < 1e-9);
      }
    }
  }
}

TEST_CASE("spline integrals match the knot-span formula") {
  const ClampedBasis basis = build_basis({{0.0, 1.0}}, 8);
  const auto knots = basis.knots(0);
  const auto quad = gauss_legendre(8);
  const auto& blk = basis.blocks()[0];
  std::vector<double> integral(basis.spline_count(), 0.0);
  for (int cell = 0; cell < blk.cells; ++cell) {
    for (std::size_t q = 0; q < quad.nodes.size(); ++q) {
      const double x = blk.h * (cell + 0.5 * (quad.nodes[q] + 1.0));
      const auto s = basis.evaluate(0, cell, x);
      for (int r = 0; r < 4; ++r) integral[cell + r] += 0.5 * blk.h * quad.weights[q] * s.value[r];
    }
  }
  for (int i = 0; i < basis.spline_count(); ++i) {
    CHECK(std::abs(integral[i] - (knots[i + 4] - knots[i]) / 4.0) < 1e-13);
  }
}

TEST_CASE("form matrices: symmetry, definiteness, special cases") {
  const ClampedBasis basis = build_basis({{-kPi, kPi}}, 16);
  const auto quad = gauss_legendre(8);
  const auto m = assemble(basis, ConstantPotential{0.75}, Unweighted{}, quad);
  for (const Matrix* x : {&m.S, &m.C, &m.K, &m.M, &m.Minv, &m.Mw}) CHECK(x->max_asymmetry() <= 1e-13);
  for (const Matrix* x : {&m.S, &m.K, &m.M, &m.Minv, &m.Mw}) CHECK_NOTHROW(cholesky(*x));

  for (int i = 0; i < m.dimension(); ++i)
    for (int j = 0; j < m.dimension(); ++j) {
      CHECK(std::abs(m.Minv(i, j) - m.M(i, j) / 0.75) <= 1e-12);
      CHECK(m.Mw(i, j) == m.M(i, j));
    }

  const auto agmon = assemble(basis, PowerDecayPotential{1.0, 4.0}, AgmonWeight{4.0}, quad);
  for (const Matrix* x : {&agmon.S, &agmon.C, &agmon.K, &agmon.M, &agmon.Minv, &agmon.Mw})
    CHECK(x->max_asymmetry() <= 1e-13);
  CHECK_NOTHROW(cholesky(agmon.Mw));
}

TEST_CASE("A(0) reduces to the lambda-free part") {
  const ClampedBasis basis = build_basis({{0.0, 2.0}}, 10);
  const auto m = assemble(basis, PowerDecayPotential{2.0, 4.0}, Unweighted{}, gauss_legendre(8));
  const Matrix as = assemble_A(m, ProblemKind::Schrodinger, 0.0);
  const Matrix ah = assemble_A(m, ProblemKind::Helmholtz, 0.0);
  for (int i = 0; i < m.dimension(); ++i)
    for (int j = 0; j < m.dimension(); ++j) {
      CHECK(as(i, j) == m.S(i, j) + m.K(i, j));
      CHECK(ah(i, j) == m.S(i, j));
    }
}

TEST_CASE("expanded form equals the direct form") {
  std::mt19937_64 rng(kTestSeed + 1);
  const auto quad = gauss_legendre(8);
  struct Setup {
    std::vector<Interval> intervals;
    PotentialSpec potential;
  };
  const std::vector<Setup> setups = {
      {{{-kPi, kPi}}, ConstantPotential{0.75}},
      {{{0.0, 2.0}, {3.0, 3.5}, {4.5, 4.75}}, PowerDecayPotential{1.0, 4.0}},
      {{{-1.0, 3.0}}, PowerDecayPotential{0.4, 2.0}},
  };
  for (const auto& s : setups) {
    const ClampedBasis basis = build_basis(s.intervals, 12);
    const auto m = assemble(basis, s.potential, Unweighted{}, quad);
    for (auto kind : {ProblemKind::Schrodinger, ProblemKind::Helmholtz}) {
      for (double lambda : {-1.0, 0.0, 0.7, 3.2}) {
        const Matrix a = assemble_A(m, kind, lambda);
        for (int trial = 0; trial < 100; ++trial) {
          const auto u = random_coeffs(basis.dimension(), rng);
          const double expanded = bilinear(a, u, u);
          const double direct = direct_form_value(basis, s.potential, kind, u, lambda, quad);
          CHECK(std::abs(expanded - direct) <= 1e-10 * (1.0 + std::abs(expanded)));
        }
      }
    }
  }
}

TEST_CASE("direct form is quadratic") {
  std::mt19937_64 rng(kTestSeed + 2);
  const ClampedBasis basis = build_basis({{0.0, 1.0}}, 8);
  const auto quad = gauss_legendre(8);
  const std::vector<double> zero(basis.dimension(), 0.0);
  CHECK(direct_form_value(basis, ConstantPotential{0.5}, ProblemKind::Helmholtz, zero, 2.0, quad) == 0.0);
  const auto u = random_coeffs(basis.dimension(), rng);
  auto u2 = u;
  for (auto& x : u2) x *= 2.0;
  for (auto kind : {ProblemKind::Schrodinger, ProblemKind::Helmholtz}) {
    const double one = direct_form_value(basis, ConstantPotential{0.5}, kind, u, 1.3, quad);
    const double two = direct_form_value(basis, ConstantPotential{0.5}, kind, u2, 1.3, quad);
    CHECK(two == doctest::Approx(4.0 * one).epsilon(1e-13));
  }
}

TEST_CASE("Schrodinger form is positive for lambda <= 0, Helmholtz at zero") {
  const ClampedBasis basis = build_basis({{-kPi, kPi}}, 24);
  const auto m = assemble(basis, ConstantPotential{0.75}, Unweighted{}, gauss_legendre(8));
  for (double lambda : {-2.0, -0.5, 0.0}) {
    CHECK(lowest_k(assemble_A(m, ProblemKind::Schrodinger, lambda), m.Mw, 1).eigenvalues[0] > 0.0);
  }
  CHECK(lowest_k(assemble_A(m, ProblemKind::Helmholtz, 0.0), m.Mw, 1).eigenvalues[0] > 0.0);
}

TEST_CASE("projected smooth function: form error decreases under refinement") {
  // u = sin^2(pi x) on (0, 1) is clamped at both ends.
  const double lambda = 0.7;
  const double v0 = 0.75;
  auto u = [](double x) { return std::pow(std::sin(kPi * x), 2); };
  auto d1 = [](double x) { return kPi * std::sin(2.0 * kPi * x); };
  auto d2 = [](double x) { return 2.0 * kPi * kPi * std::cos(2.0 * kPi * x); };

  // Continuum Schrodinger form on a fine composite rule.
  const auto fine = gauss_legendre(16);
  double exact = 0.0;
  const int pieces = 64;
  for (int p = 0; p < pieces; ++p) {
    for (std::size_t q = 0; q < fine.nodes.size(); ++q) {
      const double x = (p + 0.5 * (fine.nodes[q] + 1.0)) / pieces;
      const double w = 0.5 * fine.weights[q] / pieces;
      exact += w * (std::pow(d2(x) + lambda * u(x), 2) / v0 + d1(x) * d1(x) - lambda * u(x) * u(x));
    }
  }

  std::vector<double> errors;
  const auto quad = gauss_legendre(8);
  for (int cells : {8, 16, 32, 64}) {
    const ClampedBasis basis = build_basis({{0.0, 1.0}}, cells);
    const auto m = assemble(basis, ConstantPotential{v0}, Unweighted{}, quad);
    // L2 projection: M c = (u, b_i).
    std::vector<double> rhs(basis.dimension(), 0.0);
    const auto& blk = basis.blocks()[0];
    for (int cell = 0; cell < blk.cells; ++cell) {
      for (std::size_t q = 0; q < quad.nodes.size(); ++q) {
        const double x = blk.h * (cell + 0.5 * (quad.nodes[q] + 1.0));
        const auto s = basis.evaluate(0, cell, x);
        for (int r = 0; r < 4; ++r) {
          const int g = basis.active_index(0, cell + r);
          if (g >= 0) rhs[g] += 0.5 * blk.h * quad.weights[q] * u(x) * s.value[r];
        }
      }
    }
    const auto c = spd_solve(m.M, rhs);
    errors.push_back(std::abs(bilinear(assemble_A(m, ProblemKind::Schrodinger, lambda), c, c) - exact));
  }
  for (std::size_t i = 1; i < errors.size(); ++i) CHECK(errors[i] < errors[i - 1]);
  CHECK(errors.back() < 1e-4 * std::abs(exact));
}
