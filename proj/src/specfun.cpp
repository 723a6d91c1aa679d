#include "ite/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "bessel_series.hpp"
#include "ite/error.hpp"

namespace ite {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Lanczos sum and t = x + g - 1/2 for the shifted argument x - 1, x >= 1/2.
double lanczos_sum(double xm1) {
  double a = kLanczosCoeffs[0];
  for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) a += kLanczosCoeffs[i] / (xm1 + static_cast<double>(i));
  return a;
}

// Neumaier-compensated double summation; used when there is no cancellation
// worth worrying about.
double series_double(double nu, double x, int sign) {
  using detail::kMaxSeriesTerms;
  using detail::kSeriesCutoff;
  const double q = 0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  double comp = 0.0;
  const double peak = 0.5 * x;
  for (int m = 1; m < kMaxSeriesTerms; ++m) {
    term *= sign * q / (m * (m + nu));
    const double t = sum + term;
    comp += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
    sum = t;
    if (m > peak && std::abs(term) <= kSeriesCutoff * std::abs(sum + comp)) break;
  }
  return sum + comp;
}

}  // namespace

double detail::log10_peak_term(double nu, double x) {
  if (x <= 0.0) return 0.0;
  const double q = 0.25 * x * x;
  const double mstar = std::max(0.0, 0.5 * (-(nu + 2.0) + std::sqrt(nu * nu + 4.0 * q)));
  double best = 0.0;
  for (double m : {std::floor(mstar), std::floor(mstar) + 1.0}) {
    const double lt = m * std::log(q) - log_gamma_real(m + 1.0) -
                      (log_gamma_real(nu + 1.0 + m) - log_gamma_real(nu + 1.0));
    best = std::max(best, lt);
  }
  return best / std::numbers::ln10;
}

namespace {

double scaled_series(double nu, double x, int sign) {
  if (sign > 0) return series_double(nu, x, sign);
  const double lost = detail::log10_peak_term(nu, x);
  if (lost < 1.5) return series_double(nu, x, sign);
  if (lost < 30.0) return static_cast<double>(detail::normalized_series(nu, detail::Float50(x), sign));
  if (lost < 60.0) return static_cast<double>(detail::normalized_series(nu, detail::Float80(x), sign));
  return static_cast<double>(detail::normalized_series(nu, detail::Float130(x), sign));
}

void check_order(double nu) {
  if (!(nu >= kMinBesselOrder - 1e-15)) {
    throw Error(ErrorCode::ArgumentOutOfRange, "Bessel order must be >= -1/2");
  }
}

void check_argument(double x, double cap) {
  if (!(x >= 0.0 && x <= cap)) {
    throw Error(ErrorCode::ArgumentOutOfRange, "Bessel argument outside [0, " + std::to_string(cap) + "]");
  }
}

// (x/2)^nu / Gamma(nu+1)
double leading_amplitude(double nu, double x) {
  if (x == 0.0) {
    if (nu == 0.0) return 1.0;
    if (nu > 0.0) return 0.0;
    throw Error(ErrorCode::ArgumentOutOfRange, "Bessel function of negative order is singular at 0");
  }
  return std::exp(nu * std::log(0.5 * x) - log_gamma_real(nu + 1.0));
}

}  // namespace

double gamma_real(double x) {
  if (!(x > 0.0)) throw Error(ErrorCode::NonPositiveArgument, "gamma_real needs x > 0");
  if (x < 0.5) return gamma_real(x + 1.0) / x;
  if (x > 140.0) return std::exp(log_gamma_real(x));
  const double xm1 = x - 1.0;
  const double t = xm1 + kLanczosG + 0.5;
  return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, xm1 + 0.5) * std::exp(-t) * lanczos_sum(xm1);
}

double log_gamma_real(double x) {
  if (!(x > 0.0)) throw Error(ErrorCode::NonPositiveArgument, "log_gamma_real needs x > 0");
  if (x < 0.5) return log_gamma_real(x + 1.0) - std::log(x);
  const double xm1 = x - 1.0;
  const double t = xm1 + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (xm1 + 0.5) * std::log(t) - t + std::log(lanczos_sum(xm1));
}

double bessel_j_scaled(double nu, double x) {
  check_order(nu);
  check_argument(x, kBesselJMaxArgument);
  return scaled_series(nu, x, -1);
}

double bessel_i_scaled(double nu, double x) {
  check_order(nu);
  check_argument(x, kBesselIMaxArgument);
  return scaled_series(nu, x, +1);
}

double bessel_j(double nu, double x) {
  const double s = bessel_j_scaled(nu, x);
  return leading_amplitude(nu, x) * s;
}

double bessel_i(double nu, double x) {
  const double s = bessel_i_scaled(nu, x);
  return leading_amplitude(nu, x) * s;
}

WaveValue radial_wave(const RadialWave& w, double k, double r) {
  const double nu = w.order();
  const double z = k * r;
  const bool osc = w.branch == WaveBranch::Oscillatory;
  const double f = osc ? bessel_j(nu, z) : bessel_i(nu, z);
  const double f_next = osc ? bessel_j(nu + 1.0, z) : bessel_i(nu + 1.0, z);
  // F_nu' = (nu/z) F_nu -+ F_{nu+1}; the lowered-order form would need nu - 1 < -1/2.
  const double fprime = (nu / z) * f + (osc ? -f_next : f_next);
  const double p = 0.5 * (2 - w.dim);
  const double rp = std::pow(r, p);
  return {rp * f, p * rp / r * f + rp * k * fprime};
}

WaveValue radial_wave_scaled(const RadialWave& w, double k, double r) {
  const double nu = w.order();
  const double z = k * r;
  const bool osc = w.branch == WaveBranch::Oscillatory;
  const double s = osc ? bessel_j_scaled(nu, z) : bessel_i_scaled(nu, z);
  const double s_next = osc ? bessel_j_scaled(nu + 1.0, z) : bessel_i_scaled(nu + 1.0, z);
  const double sprime = (osc ? -0.5 : 0.5) * z / (nu + 1.0) * s_next;
  return {s, (w.ell / r) * s + k * sprime};
}

}  // namespace ite
