#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ite/radial_oracle.hpp"
#include "test_support.hpp"

using namespace ite;

namespace {

constexpr double kPi = std::numbers::pi;

RadialProblem helmholtz_ball(int dim, int ell = 0) { return {ProblemKind::Helmholtz, dim, kPi, 0.75, ell}; }

bool contains_near(const std::vector<ScannedRoot>& roots, double x, double tol) {
  for (const auto& r : roots)
    if (std::abs(r.value - x) <= tol) return true;
  return false;
}

}  // namespace

TEST_CASE("interior wavenumber branches") {
  const auto a = interior_wavenumber(ProblemKind::Helmholtz, 0.75, 4.0);
  CHECK(a.kappa == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(a.branch == WaveBranch::Oscillatory);

  const auto b = interior_wavenumber(ProblemKind::Schrodinger, 1.0, 5.0);
  CHECK(b.kappa == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(b.branch == WaveBranch::Oscillatory);

  const auto c = interior_wavenumber(ProblemKind::Schrodinger, 1.0, 0.75);
  CHECK(c.kappa == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(c.branch == WaveBranch::Evanescent);

  const auto d = interior_wavenumber(ProblemKind::Helmholtz, 2.0, 3.0);
  CHECK(d.kappa == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  CHECK(d.branch == WaveBranch::Evanescent);

  CHECK(error_code_of([] { interior_wavenumber(ProblemKind::Schrodinger, 1.0, 1.0); }) ==
        ErrorCode::DegenerateInterior);
  CHECK(error_code_of([] { interior_wavenumber(ProblemKind::Helmholtz, 0.5, 0.0); }) ==
        ErrorCode::ArgumentOutOfRange);
}

TEST_CASE("determinant vanishes at lambda = 4 in one and three dimensions") {
  CHECK(std::abs(characteristic_determinant(helmholtz_ball(1), 4.0)) < 1e-10);
  CHECK(std::abs(characteristic_determinant(helmholtz_ball(3), 4.0)) < 1e-10);
  CHECK(std::abs(characteristic_determinant(helmholtz_ball(1, 1), 4.0)) < 1e-10);
}

TEST_CASE("one-dimensional determinant matches the cosine closed form up to a positive factor") {
  // Even mode: D is a positive multiple of kappa sin(kappa R) cos(k R) - k cos(kappa R) sin(k R).
  for (double lambda : {0.7, 1.9, 2.6, 5.3, 7.7, 11.1}) {
    const double k = std::sqrt(lambda), kappa = 0.5 * k;
    const double closed = -(kappa * std::sin(kappa * kPi) * std::cos(k * kPi) - k * std::cos(kappa * kPi) * std::sin(k * kPi));
    const double d = characteristic_determinant(helmholtz_ball(1), lambda);
    CHECK(((d > 0.0) == (closed > 0.0)));
  }
}

TEST_CASE("Helmholtz contrast one is rejected") {
  RadialProblem p = helmholtz_ball(3);
  p.v0 = 1.0;
  CHECK(error_code_of([&] { validate_radial(p); }) == ErrorCode::HelmholtzContrastDegenerate);
  p.v0 = 0.0;
  CHECK(error_code_of([&] { validate_radial(p); }) == ErrorCode::NonPositivePotential);
  p = helmholtz_ball(4);
  CHECK(error_code_of([&] { validate_radial(p); }) == ErrorCode::UnsupportedDimension);
}

TEST_CASE("scan_roots") {
  SUBCASE("linear function") {
    const auto r = scan_roots([](double x) { return x - 2.0; }, 0.0, 5.0, 10, 1e-9);
    REQUIRE(r.size() == 1);
    CHECK(std::abs(r[0].value - 2.0) < 1e-9);
  }
  SUBCASE("no real roots") {
    CHECK(scan_roots([](double x) { return x * x + 1.0; }, -3.0, 3.0, 50, 1e-9).empty());
  }
  SUBCASE("exact grid hit is reported once") {
    const auto r = scan_roots([](double x) { return x - 1.0; }, 0.0, 2.0, 3, 1e-9);
    REQUIRE(r.size() == 1);
    CHECK(r[0].exact_hit);
    CHECK(r[0].value == 1.0);
  }
  SUBCASE("NaN samples are skipped") {
    const auto r = scan_roots([](double x) { return std::abs(x - 1.0) < 1e-9 ? std::nan("") : x - 1.3; }, 0.0, 2.0,
                              21, 1e-10);
    REQUIRE(r.size() == 1);
    CHECK(std::abs(r[0].value - 1.3) < 1e-9);
  }
  SUBCASE("determinant on [0.5, 5]") {
    auto f = [](double l) { return characteristic_determinant(helmholtz_ball(1), l); };
    CHECK(contains_near(scan_roots(f, 0.5, 5.0, 400, 1e-12), 4.0, 1e-8));
  }
  SUBCASE("bad window") {
    CHECK(error_code_of([] { scan_roots([](double x) { return x; }, 1.0, 1.0, 10, 1e-9); }) ==
          ErrorCode::InvalidConfig);
  }
}

TEST_CASE("harmonic multiplicities") {
  CHECK(harmonic_multiplicity(3, 0) == 1);
  CHECK(harmonic_multiplicity(3, 1) == 3);
  CHECK(harmonic_multiplicity(2, 5) == 2);
  CHECK(harmonic_multiplicity(2, 0) == 1);
  CHECK(harmonic_multiplicity(1, 0) == 1);
  CHECK(harmonic_multiplicity(1, 1) == 1);
  CHECK(harmonic_multiplicity(1, 2) == 0);
  CHECK(error_code_of([] { harmonic_multiplicity(4, 0); }) == ErrorCode::UnsupportedDimension);

  // Binomial formula C(l+n-1, l) - C(l+n-3, l-2) for n = 3.
  for (int l = 2; l < 10; ++l) {
    const int c1 = (l + 2) * (l + 1) / 2;
    const int c2 = l * (l - 1) / 2;
    CHECK(harmonic_multiplicity(3, l) == c1 - c2);
  }
}

TEST_CASE("eigenvalue lists") {
  SUBCASE("one dimension") {
    const auto list = te_list_up_to(helmholtz_ball(1), 4.5, 0);
    REQUIRE(list.entries.size() == 1);
    CHECK(std::abs(list.entries[0].lambda - 4.0) < 1e-8);
    CHECK(list.entries[0].ell == 0);
    CHECK(list.entries[0].degeneracy == 1);
  }
  SUBCASE("three dimensions") {
    const auto list = te_list_up_to(helmholtz_ball(3), 4.5, 0);
    REQUIRE_FALSE(list.entries.empty());
    CHECK(std::abs(list.entries[0].lambda - 4.0) < 1e-8);
  }
  SUBCASE("window below the first root") {
    CHECK(te_list_up_to(helmholtz_ball(1), 3.5, 1).entries.empty());
    CHECK(error_code_of([] { te_list_up_to(helmholtz_ball(1), 3.5, 1).first(); }) == ErrorCode::InsufficientCounts);
  }
  SUBCASE("sorted and positive") {
    const auto list = te_list_up_to(helmholtz_ball(3), 60.0, adaptive_ell_max(3, kPi, 60.0));
    for (std::size_t i = 0; i < list.entries.size(); ++i) {
      CHECK(list.entries[i].lambda > 0.0);
      if (i > 0) CHECK(list.entries[i].lambda >= list.entries[i - 1].lambda);
    }
  }
}

TEST_CASE("dilation maps every eigenvalue by 1 / eps^2") {
  for (int dim : {1, 3}) {
    const RadialProblem base = helmholtz_ball(dim);
    const double x = 40.0;
    const int ell_max = adaptive_ell_max(dim, kPi, x);
    const auto base_list = te_list_up_to(base, x, ell_max);
    REQUIRE_FALSE(base_list.entries.empty());
    for (double eps : {0.5, 0.25}) {
      RadialProblem scaled = base;
      scaled.radius = eps * kPi;
      const auto scaled_list = te_list_up_to(scaled, x / (eps * eps), ell_max);
      CHECK(scaled_list.entries.size() == base_list.entries.size());
      for (const auto& e : scaled_list.entries) {
        double best = 1.0;
        for (const auto& b : base_list.entries) best = std::min(best, std::abs(e.lambda * eps * eps / b.lambda - 1.0));
        CHECK(best <= 1e-8);
      }
    }
  }
}

TEST_CASE("Helmholtz lists are non-empty for a large enough window") {
  for (double radius : {0.7, 1.0, 2.5}) {
    for (double v0 : {0.2, 0.5, 0.9}) {
      const RadialProblem p{ProblemKind::Helmholtz, 3, radius, v0, 0};
      // Phase-slip estimate: (k - kappa) R = pi.
      const double estimate = std::pow(kPi / (radius * (1.0 - std::sqrt(1.0 - v0))), 2);
      CHECK_FALSE(te_list_up_to(p, 4.0 * estimate, 0).entries.empty());
    }
  }
}

TEST_CASE("counts grow and weight by degeneracy") {
  const auto list = te_list_up_to(helmholtz_ball(3), 50.0, adaptive_ell_max(3, kPi, 50.0));
  long by_hand = 0;
  for (const auto& e : list.entries) {
    CHECK(e.degeneracy == harmonic_multiplicity(3, e.ell));
    by_hand += e.degeneracy;
  }
  CHECK(list.weighted_count(50.0) == by_hand);
  CHECK(list.weighted_count(20.0) <= list.weighted_count(50.0));
}
