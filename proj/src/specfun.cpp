#include "expscatter/specfun.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "expscatter/errors.hpp"

namespace expscatter::specfun {

namespace {

using std::numbers::pi;
using LComplex = std::complex<long double>;

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

bool is_pole(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 &&
         z.real() == std::floor(z.real());
}

void check_pole(Complex z) {
  if (is_pole(z)) {
    std::ostringstream os;
    os << "gamma function pole at z = " << z.real();
    throw DomainError(os.str());
  }
}

// log Gamma(z) for Re z >= 1/2.
Complex lanczos_lgamma(Complex z) {
  z -= 1.0;
  Complex sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i)
    sum += kLanczos[i] / (z + static_cast<double>(i));
  const Complex t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t +
         std::log(sum);
}

void check_argument(double z) {
  if (!(z > 0.0) || !std::isfinite(z)) {
    std::ostringstream os;
    os << "Bessel argument must be positive and finite, got " << z;
    throw DomainError(os.str());
  }
}

void check_order(double q) {
  if (!(q > kQMin) || !std::isfinite(q)) {
    std::ostringstream os;
    os << "imaginary order q = " << q << " is below q_min = " << kQMin
       << " for the Hankel functions";
    throw DegenerateError(os.str());
  }
}

// Hankel's large-argument expansion for H^(1)_{iq}. Returns false without
// touching `out` if the terms start growing before reaching tol_rel.
bool hankel1_large_argument(double q, double z, const SeriesConfig& cfg,
                            HankelEval& out) {
  const double mu = -4.0 * q * q;
  const Complex phase = std::exp(Complex(0.0, z - pi / 4.0));
  Complex sum = 1.0;       // sum_k i^k a_k z^-k
  Complex dsum = {0.0, 1.0};  // sum_k i^k a_k z^-k (i - (k + 1/2)/z)
  dsum -= 0.5 / z;
  double a = 1.0;
  double prev = 1.0;
  Complex ik = 1.0;
  int k = 1;
  for (; k <= cfg.max_terms; ++k) {
    const double odd = 2.0 * k - 1.0;
    a *= (mu - odd * odd) / (8.0 * k * z);
    const double mag = std::abs(a);
    if (mag > prev) return false;
    ik *= Complex(0.0, 1.0);
    const Complex term = ik * a;
    sum += term;
    dsum += term * (Complex(0.0, 1.0) - (k + 0.5) / z);
    prev = mag;
    if (mag <= cfg.tol_rel * std::abs(sum)) break;
  }
  if (k > cfg.max_terms) return false;

  const double scale = std::sqrt(2.0 / (pi * z)) * std::exp(q * pi / 2.0);
  out.value = scale * phase * sum;
  out.derivative = scale * phase * dsum;
  out.terms_used = k + 1;
  out.truncation_bound = prev * std::abs(out.value);
  out.large_argument = true;
  return true;
}

// conj(H1_{iq}(z)) = e^{q pi} H2_{iq}(z) for real q and z > 0.
HankelEval hankel2_from_hankel1(double q, const HankelEval& h1) {
  const double f = std::exp(-q * pi);
  HankelEval h2 = h1;
  h2.value = f * std::conj(h1.value);
  h2.derivative = f * std::conj(h1.derivative);
  h2.truncation_bound *= f;
  return h2;
}

}  // namespace

Complex complex_lgamma(Complex z) {
  check_pole(z);
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
    return std::log(pi) - std::log(std::sin(pi * z)) - lanczos_lgamma(1.0 - z);
  }
  return lanczos_lgamma(z);
}

Complex complex_gamma(Complex z) {
  check_pole(z);
  if (z.real() < 0.5) return pi / (std::sin(pi * z) * complex_gamma(1.0 - z));
  return std::exp(lanczos_lgamma(z));
}

BesselEval bessel_j_series(double q, double z, OrderSign sign,
                           const SeriesConfig& cfg) {
  check_argument(z);
  if (!(q >= 0.0)) throw DomainError("Bessel order magnitude q must be >= 0");

  const double s = sign == OrderSign::plus ? 1.0 : -1.0;
  const Complex nu(0.0, s * q);
  const long double half = static_cast<long double>(z) / 2.0L;
  const long double half_sq = half * half;

  // (z/2)^nu / Gamma(1 + nu)
  const Complex lead = std::exp(nu * std::log(z / 2.0) - complex_lgamma(1.0 + nu));
  LComplex term(lead.real(), lead.imag());
  const LComplex lnu(0.0L, static_cast<long double>(s * q));
  const long double lz = z;

  LComplex sum = term;
  LComplex dsum = term * lnu / lz;

  BesselEval out;
  out.order_q = q;
  out.argument_z = z;
  for (int k = 1; k <= cfg.max_terms; ++k) {
    const long double kk = k;
    term *= -half_sq / (kk * (kk + lnu));
    // ratio bounding every later term
    const long double rho = half_sq / ((kk + 1.0L) * std::abs(kk + 1.0L + lnu));
    const long double mag = std::abs(term);
    if (rho < 1.0L) {
      const long double tail = mag / (1.0L - rho);
      if (tail <= cfg.tol_abs + cfg.tol_rel * std::abs(sum)) {
        out.terms_used = k;
        out.truncation_bound = static_cast<double>(tail);
        out.value = Complex(static_cast<double>(sum.real()),
                            static_cast<double>(sum.imag()));
        out.derivative = Complex(static_cast<double>(dsum.real()),
                                 static_cast<double>(dsum.imag()));
        return out;
      }
    }
    sum += term;
    dsum += term * (2.0L * kk + lnu) / lz;
  }
  std::ostringstream os;
  os << "Bessel series for q = " << q << ", z = " << z
     << " did not converge in " << cfg.max_terms << " terms";
  throw AccuracyError(os.str(), static_cast<double>(std::abs(term)));
}

BesselEval bessel_j_imag_order(double q, double z, OrderSign sign,
                               const SeriesConfig& cfg) {
  check_argument(z);
  if (z > cfg.z_switch && q > kQMin) {
    HankelEval h1;
    if (hankel1_large_argument(q, z, cfg, h1)) {
      const HankelEval h2 = hankel2_from_hankel1(q, h1);
      BesselEval out;
      out.order_q = q;
      out.argument_z = z;
      out.value = 0.5 * (h1.value + h2.value);
      out.derivative = 0.5 * (h1.derivative + h2.derivative);
      if (sign == OrderSign::minus) {
        out.value = std::conj(out.value);
        out.derivative = std::conj(out.derivative);
      }
      out.terms_used = h1.terms_used;
      out.truncation_bound = h1.truncation_bound;
      out.large_argument = true;
      return out;
    }
  }
  return bessel_j_series(q, z, sign, cfg);
}

HankelEval hankel_imag_order_eval(double q, double z, HankelKind kind,
                                  const SeriesConfig& cfg) {
  check_order(q);
  check_argument(z);

  HankelEval h1;
  if (!(z > cfg.z_switch && hankel1_large_argument(q, z, cfg, h1))) {
    const BesselEval jp = bessel_j_series(q, z, OrderSign::plus, cfg);
    const BesselEval jm = bessel_j_series(q, z, OrderSign::minus, cfg);
    const double e = std::exp(q * pi);
    const double sh = std::sinh(q * pi);
    h1.value = (e * jp.value - jm.value) / sh;
    h1.derivative = (e * jp.derivative - jm.derivative) / sh;
    h1.terms_used = std::max(jp.terms_used, jm.terms_used);
    h1.truncation_bound =
        (e * jp.truncation_bound + jm.truncation_bound) / sh;
    if (kind == HankelKind::second) {
      HankelEval h2 = h1;
      h2.value = (jm.value - jp.value / e) / sh;
      h2.derivative = (jm.derivative - jp.derivative / e) / sh;
      h2.truncation_bound =
          (jm.truncation_bound + jp.truncation_bound / e) / sh;
      return h2;
    }
    return h1;
  }
  return kind == HankelKind::first ? h1 : hankel2_from_hankel1(q, h1);
}

Complex hankel_imag_order(double q, double z, HankelKind kind,
                          const SeriesConfig& cfg) {
  return hankel_imag_order_eval(q, z, kind, cfg).value;
}

Complex hankel_asymptotic(double q, double z, HankelKind kind) {
  check_argument(z);
  const double s = kind == HankelKind::first ? 1.0 : -1.0;
  // +-i(z - i q pi/2 - pi/4) = +-i(z - pi/4) +- q pi/2
  return std::sqrt(2.0 / (pi * z)) *
         std::exp(Complex(s * q * pi / 2.0, s * (z - pi / 4.0)));
}

}  // namespace expscatter::specfun
