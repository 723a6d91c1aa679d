#pragma once

// Real-argument special functions for the radial oracle.
//
// The Bessel functions are evaluated from their power series only.  The
// series is summed in extended precision when cancellation would otherwise
// eat the double mantissa, so the accuracy holds up to the argument caps
// below without any asymptotic expansion.

namespace ite {

inline constexpr double kBesselJMaxArgument = 200.0;
inline constexpr double kBesselIMaxArgument = 60.0;
inline constexpr double kMinBesselOrder = -0.5;

// Gamma for x > 0 (Lanczos, g = 7).
double gamma_real(double x);
double log_gamma_real(double x);

// J_nu(x) for nu >= -1/2, 0 <= x <= 200.
double bessel_j(double nu, double x);
// I_nu(x) for nu >= -1/2, 0 <= x <= 60.
double bessel_i(double nu, double x);

// Normalized series S_nu(x) = Gamma(nu+1) (x/2)^{-nu} F_nu(x), with F = J or
// I.  S_nu(0) = 1 and the leading-amplitude factor is positive, so zero sets
// match those of F_nu while avoiding under/overflow for large orders.
double bessel_j_scaled(double nu, double x);
double bessel_i_scaled(double nu, double x);

enum class WaveBranch { Oscillatory, Evanescent };

// Regular radial solution r^{(2-n)/2} F_nu(k r), nu = (n-2)/2 + ell.
struct RadialWave {
  int dim = 3;
  int ell = 0;
  WaveBranch branch = WaveBranch::Oscillatory;

  double order() const { return 0.5 * (dim - 2) + ell; }
};

struct WaveValue {
  double value = 0.0;
  double d_dr = 0.0;
};

WaveValue radial_wave(const RadialWave& w, double k, double r);

// radial_wave divided by the positive amplitude (k/2)^nu r^ell / Gamma(nu+1).
// Well defined for k = 0 as well, where it reduces to (1, ell / r).
WaveValue radial_wave_scaled(const RadialWave& w, double k, double r);

}  // namespace ite
