#pragma once

#include <complex>

namespace divzeta {

struct ZetaConfig {
  /// Largest |t| accepted on the critical line.
  double ceiling = 1e6;
  /// Riemann-Siegel is used from here on; Euler-Maclaurin below.
  double rs_threshold = 200.0;
};

/// zeta(s) by Euler-Maclaurin summation, any s != 1. Terms are added until
/// the tail is below `accuracy` (absolute); cost grows like |Im s|.
std::complex<double> zeta(std::complex<double> s, double accuracy = 1e-12);

/// theta(t) = arg Gamma(1/4 + it/2) - (t/2) log pi, asymptotic series; t >= 10.
double riemann_siegel_theta(double t);

/// Z(t) = e^{i theta(t)} zeta(1/2 + it), real for real t >= 10.
double hardy_z(double t, const ZetaConfig& config = {});

/// Riemann-Siegel sum with corrections C_0 .. C_4; t >= 10.
/// `error_estimate`, if non-null, receives the size of the last correction used.
double hardy_z_riemann_siegel(double t, double* error_estimate = nullptr);

/// zeta(1/2 + it). Negative t by reflection.
/// Throws NumericalError when |t| exceeds the ceiling.
std::complex<double> zeta_critical(double t, double accuracy = 1e-6, const ZetaConfig& config = {});

} // namespace divzeta
