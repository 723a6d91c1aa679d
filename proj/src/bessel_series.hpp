#pragma once

// Internal: normalized Bessel power series templated on the working number
// type, shared by the double-precision public API and the extended-precision
// determinant.

#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace ite::detail {

inline constexpr double kSeriesCutoff = 1e-18;
inline constexpr int kMaxSeriesTerms = 2000;

using Float50 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>,
                                              boost::multiprecision::et_off>;
using Float80 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<80>,
                                              boost::multiprecision::et_off>;
using Float130 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<130>,
                                               boost::multiprecision::et_off>;

// S_nu(x) = sum_m (sign x^2/4)^m / (m! (nu+1)_m); sign = -1 for J, +1 for I.
template <typename Real>
Real normalized_series(double nu, const Real& x, int sign) {
  using std::abs;
  const Real q = x * x / 4;
  Real term = 1;
  Real sum = 1;
  const double peak = 0.5 * static_cast<double>(x);
  for (int m = 1; m < kMaxSeriesTerms; ++m) {
    term *= q;
    term /= Real(m) * (Real(m) + Real(nu));
    if (sign < 0) term = -term;
    sum += term;
    if (m > peak && abs(term) <= kSeriesCutoff * abs(sum)) break;
  }
  return sum;
}

template <typename Real>
struct ScaledWave {
  Real value;
  Real d_dr;
};

// r^{(2-n)/2} F_nu(k r) divided by (k/2)^nu r^ell / Gamma(nu+1).
template <typename Real>
ScaledWave<Real> scaled_wave(double nu, int ell, bool oscillatory, const Real& k, const Real& r) {
  const Real z = k * r;
  const int sign = oscillatory ? -1 : 1;
  const Real s = normalized_series<Real>(nu, z, sign);
  const Real s_next = normalized_series<Real>(nu + 1.0, z, sign);
  const Real sprime = Real(sign) * z / (2 * (Real(nu) + 1)) * s_next;
  return {s, Real(ell) / r * s + k * sprime};
}

// log10 of the largest term of the alternating J series: the number of
// decimal digits cancellation can destroy.
double log10_peak_term(double nu, double x);

}  // namespace ite::detail
