#include "expscatter/exp_barrier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "expscatter/errors.hpp"
#include "expscatter/phase.hpp"

namespace expscatter::barrier {

namespace {

using std::numbers::pi;
using specfun::complex_gamma;

void check_pq(double p, double q) {
  if (!(p > 0.0) || !std::isfinite(p))
    throw DomainError("barrier strength p must be positive and finite");
  if (!(q > specfun::kQMin) || !std::isfinite(q)) {
    std::ostringstream os;
    os << "q = " << q << " is at or below q_min = " << specfun::kQMin
       << "; amplitudes and phases are degenerate there";
    throw DegenerateError(os.str());
  }
}

// (p/2)^{s i q}
Complex power_imag(double p, double q, double s) {
  return std::exp(Complex(0.0, s * q * std::log(p / 2.0)));
}

}  // namespace

void PhysicalParams::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(v0) || !positive(a) || !positive(mass) || !positive(hbar))
    throw DomainError("v0, a, mass and hbar must all be positive and finite");
}

DimensionlessParams reduce_params(const PhysicalParams& params,
                                  double energy) {
  params.validate();
  if (!(energy > 0.0) || !std::isfinite(energy)) {
    std::ostringstream os;
    os << "scattering energy must be positive, got " << energy;
    throw DomainError(os.str());
  }
  DimensionlessParams d;
  d.p = std::sqrt(8.0 * params.mass * params.v0 * params.a * params.a) /
        params.hbar;
  d.k = std::sqrt(2.0 * params.mass * energy) / params.hbar;
  d.q = 2.0 * d.k * params.a;
  d.delta = params.hbar * params.hbar / (8.0 * params.mass * params.a * params.a);
  return d;
}

Probabilities transmission_reflection(double q) {
  if (!(q >= 0.0)) throw DomainError("q must be non-negative");
  return {-std::expm1(-2.0 * pi * q), std::exp(-2.0 * pi * q)};
}

FluxTriple fluxes(double p, double q, const PhysicalParams& params) {
  params.validate();
  if (!(p > 0.0)) throw DomainError("barrier strength p must be positive");
  if (!(q > 0.0))
    throw DegenerateError("fluxes need q > 0: sinh(pi q) vanishes at q = 0");
  const double k = q / (2.0 * params.a);
  const double denom = pi * params.mass * q * std::sinh(pi * q);
  FluxTriple f;
  f.j_incident = params.hbar * k * std::exp(2.0 * pi * q) / denom;
  f.j_reflected = params.hbar * k / denom;
  f.j_transmitted =
      params.hbar * std::exp(pi * q) / (pi * params.mass * params.a);
  return f;
}

PhaseShifts phase_shifts(double p, double q, Side side) {
  check_pq(p, q);
  const double alpha = q * std::log(p / 2.0);
  const double beta = specfun::complex_lgamma(Complex(1.0, q)).imag();
  PhaseShifts ph;
  ph.alpha = wrap_phase(alpha);
  ph.beta = wrap_phase(beta);
  ph.theta = wrap_phase(-alpha + beta - pi / 4.0);
  ph.phi = side == Side::left ? wrap_phase(-2.0 * alpha + 2.0 * beta + pi)
                              : wrap_phase(1.5 * pi);
  return ph;
}

ScatteringData amplitudes(double p, double q, Side side) {
  check_pq(p, q);
  const Complex gamma_plus = complex_gamma(Complex(1.0, q));
  const Complex gamma_minus = complex_gamma(Complex(1.0, -q));
  const Complex eighth_turn = std::exp(Complex(0.0, -pi / 4.0));

  ScatteringData d;
  d.side = side;
  if (side == Side::left) {
    d.r_amp = -std::exp(-q * pi) * power_imag(p, q, -2.0) * gamma_plus /
              gamma_minus;
    d.t_amp = std::sqrt(2.0 / (pi * p)) * eighth_turn *
              std::exp(-pi * q / 2.0) * power_imag(p, q, -1.0) *
              std::sinh(pi * q) * gamma_plus;
  } else {
    d.r_amp = Complex(0.0, -std::exp(-pi * q));
    d.t_amp = std::sqrt(2.0 * pi * p) * eighth_turn * std::exp(-pi * q / 2.0) *
              power_imag(p, q, -1.0) / gamma_minus;
  }
  const Probabilities tr = transmission_reflection(q);
  d.t_coeff = tr.transmission;
  d.r_coeff = tr.reflection;
  const PhaseShifts ph = phase_shifts(p, q, side);
  d.phi = ph.phi;
  d.theta = ph.theta;
  d.alpha = ph.alpha;
  d.beta = ph.beta;
  return d;
}

double transmission_from_amplitude(const ScatteringData& data, double p,
                                   double q) {
  // far-right unit wave speed ~ p, far-left plane wave speed ~ q
  const double ratio = data.side == Side::left ? p / q : q / p;
  return std::norm(data.t_amp) * ratio;
}

Complex incident_amplitude(double p, double q, Side side) {
  check_pq(p, q);
  if (side == Side::left) {
    // e^{q pi} (p/2)^{iq} / (sinh(q pi) Gamma(1 + iq))
    const double e_over_sinh = 2.0 / -std::expm1(-2.0 * pi * q);
    return e_over_sinh * power_imag(p, q, 1.0) / complex_gamma(Complex(1.0, q));
  }
  return std::sqrt(2.0 / (pi * p)) * std::exp(-q * pi / 2.0) *
         std::exp(Complex(0.0, pi / 4.0));
}

WaveSolution exact_wavefunction(double p, double q, Side side,
                                std::span<const double> x_over_a,
                                const ExactWaveOptions& opts) {
  check_pq(p, q);
  const Complex scale =
      opts.normalize ? 1.0 / incident_amplitude(p, q, side) : Complex(1.0);
  const double right_factor = 2.0 * std::exp(-q * pi);

  WaveSolution w;
  w.grid.assign(x_over_a.begin(), x_over_a.end());
  w.psi.reserve(w.grid.size());
  w.dpsi.reserve(w.grid.size());
  w.flux_profile.reserve(w.grid.size());
  for (const double xi : w.grid) {
    const double z = p * std::exp(xi / 2.0);
    if (!(z <= opts.z_max)) {
      std::ostringstream os;
      os << "Bessel argument p e^{x/2a} = " << z << " at x/a = " << xi
         << " exceeds z_max = " << opts.z_max << "; use x/a <= "
         << 2.0 * std::log(opts.z_max / p);
      throw RangeError(os.str());
    }
    if (!(z >= 1e-300)) {
      std::ostringstream os;
      os << "Bessel argument underflows at x/a = " << xi;
      throw RangeError(os.str());
    }
    Complex psi, dpsi_dz;
    if (side == Side::left) {
      const auto h = specfun::hankel_imag_order_eval(
          q, z, specfun::HankelKind::first, opts.series);
      psi = h.value;
      dpsi_dz = h.derivative;
    } else {
      const auto j = specfun::bessel_j_imag_order(
          q, z, specfun::OrderSign::minus, opts.series);
      psi = right_factor * j.value;
      dpsi_dz = right_factor * j.derivative;
    }
    psi *= scale;
    const Complex dpsi = scale * dpsi_dz * (z / 2.0);
    w.psi.push_back(psi);
    w.dpsi.push_back(dpsi);
    w.flux_profile.push_back((std::conj(psi) * dpsi).imag());
  }
  w.wronskian_drift = relative_spread(w.flux_profile);
  return w;
}

WaveSolution exact_wavefunction(const PhysicalParams& params, double energy,
                                Side side, std::span<const double> x,
                                const ExactWaveOptions& opts) {
  const DimensionlessParams d = reduce_params(params, energy);
  std::vector<double> xi(x.size());
  std::transform(x.begin(), x.end(), xi.begin(),
                 [&](double v) { return v / params.a; });
  WaveSolution w = exact_wavefunction(d.p, d.q, side, xi, opts);
  w.grid.assign(x.begin(), x.end());
  const Units units = params.units();
  for (std::size_t i = 0; i < w.grid.size(); ++i) {
    w.dpsi[i] /= params.a;
    w.flux_profile[i] = probability_flux(w.psi[i], w.dpsi[i], units);
  }
  w.wronskian_drift = relative_spread(w.flux_profile);
  return w;
}

}  // namespace expscatter::barrier
