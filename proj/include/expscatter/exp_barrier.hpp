#pragma once

// Closed-form scattering by the exponential potential V(x) = -v0 e^{x/a}.
//
// With z = p e^{x/2a} the Schrodinger equation becomes Bessel's equation of
// order iq. The left-incidence solution is H^(1)_{iq}(z), outgoing at
// large x; the right-incidence solution is J_{-iq}(z), a pure left-moving
// plane wave as x -> -infinity. The time factor is e^{-iEt/hbar}, so
// e^{ikx} moves right.
//
// Amplitudes are referred to these unit waves:
//   far left   e^{+-ikx}
//   far right  e^{-x/4a} e^{+-i p e^{x/2a}}
// Because the two asymptotic regions carry different wave speeds, |t|^2 is
// not the transmission probability; T and R always come from flux ratios.

#include <span>

#include "expscatter/common.hpp"
#include "expscatter/specfun.hpp"

namespace expscatter::barrier {

struct PhysicalParams {
  double v0;
  double a;
  double mass = 0.5;
  double hbar = 1.0;

  Units units() const { return {hbar, mass}; }
  /// Throws DomainError unless every field is finite and positive.
  void validate() const;
};

struct DimensionlessParams {
  double p;      // sqrt(8 m v0 a^2) / hbar
  double q;      // 2 k a
  double k;      // sqrt(2 m E) / hbar
  double delta;  // hbar^2 / (8 m a^2)
};

struct Probabilities {
  double transmission;
  double reflection;
};

struct FluxTriple {
  double j_incident;
  double j_reflected;
  double j_transmitted;
};

struct PhaseShifts {
  double phi;    // Arg r
  double theta;  // Arg t
  double alpha;  // Arg (p/2)^{iq}
  double beta;   // Arg Gamma(1 + iq)
};

struct ScatteringData {
  Side side;
  double t_coeff;
  double r_coeff;
  Complex r_amp;
  Complex t_amp;
  double phi;
  double theta;
  double alpha;
  double beta;
};

DimensionlessParams reduce_params(const PhysicalParams& params, double energy);

/// T = 1 - e^{-2 pi q}, R = e^{-2 pi q}. Exact at q = 0 (T = 0, R = 1).
Probabilities transmission_reflection(double q);

/// Incident, reflected and transmitted currents of the unnormalised
/// left-incidence solution H^(1)_{iq}(p e^{x/2a}). Needs q > 0.
FluxTriple fluxes(double p, double q, const PhysicalParams& params);

ScatteringData amplitudes(double p, double q, Side side);

PhaseShifts phase_shifts(double p, double q, Side side);

/// |t|^2 times the ratio of outgoing to incident wave speed; equals T.
double transmission_from_amplitude(const ScatteringData& data, double p,
                                   double q);

/// Coefficient of the incident unit wave in exact_wavefunction's psi.
Complex incident_amplitude(double p, double q, Side side);

struct ExactWaveOptions {
  /// Largest Bessel argument p e^{x/2a} accepted.
  double z_max = 1.0e3;
  /// Divide psi by incident_amplitude so the incident wave has unit
  /// amplitude.
  bool normalize = false;
  specfun::SeriesConfig series{};
};

/// psi on a grid of x/a values: H^(1)_{iq}(p e^{x/2a}) for left incidence,
/// 2 e^{-q pi} J_{-iq}(p e^{x/2a}) for right incidence.
///
/// Lengths are in units of a and hbar/m = 1: dpsi is d psi / d(x/a) and the
/// flux profile is Im(psi* dpsi). Throws RangeError if p e^{x/2a} exceeds
/// opts.z_max or underflows.
WaveSolution exact_wavefunction(double p, double q, Side side,
                                std::span<const double> x_over_a,
                                const ExactWaveOptions& opts = {});

/// The same solution on a grid of physical positions, with dpsi = d psi/dx
/// and flux in the units of `params`.
WaveSolution exact_wavefunction(const PhysicalParams& params, double energy,
                                Side side, std::span<const double> x,
                                const ExactWaveOptions& opts = {});

}  // namespace expscatter::barrier
