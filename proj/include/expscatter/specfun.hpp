#pragma once

// Gamma function of complex argument and cylinder functions of purely
// imaginary order nu = +-iq at positive real argument.

#include <complex>

namespace expscatter::specfun {

using Complex = std::complex<double>;

/// Smallest order accepted by the Hankel assembly; below it the sinh(q*pi)
/// denominator of the J -> H identities carries no significant digits.
inline constexpr double kQMin = 1e-8;

struct SeriesConfig {
  double tol_abs = 1e-30;
  double tol_rel = 1e-15;
  int max_terms = 500;
  // Above this argument the large-argument Hankel expansion is used when it
  // converges to tol_rel; the power series loses digits to cancellation
  // roughly like e^z / sqrt(z).
  double z_switch = 12.0;
};

enum class OrderSign { plus, minus };
enum class HankelKind { first = 1, second = 2 };

struct BesselEval {
  double order_q = 0.0;
  double argument_z = 0.0;
  Complex value;
  Complex derivative;  // d/dz
  int terms_used = 0;
  double truncation_bound = 0.0;
  bool large_argument = false;  // true if the Hankel expansion produced it
};

struct HankelEval {
  Complex value;
  Complex derivative;  // d/dz
  int terms_used = 0;
  double truncation_bound = 0.0;
  bool large_argument = false;
};

/// Gamma(z) by a Lanczos approximation (g = 7, 9 terms) with reflection for
/// Re z < 1/2. Throws DomainError at z = 0, -1, -2, ...
Complex complex_gamma(Complex z);

/// log Gamma(z), satisfying exp(complex_lgamma(z)) == Gamma(z). The
/// imaginary part is not reduced to the principal branch.
Complex complex_lgamma(Complex z);

/// J_{+-iq}(z) and its z-derivative by the ascending power series
///   sum_k (-1)^k (z/2)^(2k +- iq) / (k! Gamma(k + 1 +- iq)),
/// accumulated in extended precision. The truncation bound is the
/// geometric bound on the neglected tail.
BesselEval bessel_j_series(double q, double z, OrderSign sign,
                           const SeriesConfig& cfg = {});

/// J_{+-iq}(z): the ascending series for z <= cfg.z_switch, otherwise
/// (H1 + H2) / 2 from the large-argument expansion.
BesselEval bessel_j_imag_order(double q, double z, OrderSign sign,
                               const SeriesConfig& cfg = {});

/// H^(1)_{iq}(z) or H^(2)_{iq}(z) with z-derivative.
///
/// For z <= cfg.z_switch:
///   H1 = (e^{q pi} J_{iq} - J_{-iq}) / sinh(q pi)
///   H2 = (J_{-iq} - e^{-q pi} J_{iq}) / sinh(q pi)
/// beyond it the Hankel large-argument expansion
///   H1 ~ sqrt(2/(pi z)) e^{i(z - pi/4)} e^{q pi/2} sum_k i^k a_k(iq) / z^k
/// is summed to its smallest term. Throws DegenerateError for q <= kQMin.
HankelEval hankel_imag_order_eval(double q, double z, HankelKind kind,
                                  const SeriesConfig& cfg = {});

Complex hankel_imag_order(double q, double z, HankelKind kind,
                          const SeriesConfig& cfg = {});

/// Leading large-|z| term only: sqrt(2/(pi z)) e^{+-i(z - i q pi/2 - pi/4)}.
Complex hankel_asymptotic(double q, double z, HankelKind kind);

}  // namespace expscatter::specfun
