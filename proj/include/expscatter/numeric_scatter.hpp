#pragma once

// Integrate-and-match scattering for real 1D potentials.
//
// Two real solutions u, v with u(0) = 1, u'(0) = 0, v(0) = 0, v'(0) = 1 are
// integrated outward from the origin with classical fourth-order Runge-Kutta
// on (psi, psi'). A scattering state is C u + D v; C and D follow from the
// boundary conditions at the two ends of the grid.

#include <utility>

#include "expscatter/common.hpp"
#include "expscatter/potentials.hpp"
#include "expscatter/specfun.hpp"

namespace expscatter::numeric {

using potentials::PotentialModel;

struct SolverConfig {
  double x_left = -20.0;
  double x_right = 4.0;
  double step = 1.0 / 2000.0;
  /// Largest accepted Wronskian drift, boundary-condition residual and
  /// relative basis conditioning.
  double match_tolerance = 1e-8;
  /// |V| / E below which an endpoint counts as field-free.
  double left_asymptote_epsilon = 1e-6;

  /// x in [-20a, 4a], step a/2000.
  static SolverConfig for_exponential(double a);
  /// A grid suited to `model` at `energy`: the exponential default (moved
  /// with the shift and widened on the left until |V| is negligible), or a
  /// symmetric window around a rectangular or free potential.
  static SolverConfig for_model(const PotentialModel& model, double energy,
                                const Units& units = {});

  void validate() const;
};

struct BasisPair {
  WaveSolution u;
  WaveSolution v;
  PotentialModel potential;
  double energy;
  Units units;
  std::size_t origin_index;  // grid index of x = 0
  double wronskian_drift;    // max |W[u,v] - 1|
};

struct Diagnostics {
  double wronskian_drift = 0.0;
  double flux_imbalance = 0.0;
  double match_residual = 0.0;
};

struct NumericScatteringResult {
  Side side;
  double t_coeff;
  double r_coeff;
  Complex r_amp;
  Complex t_amp;
  double phi;
  double theta;
  Diagnostics diagnostics;
  /// Coefficient of the incoming wave on the transmitted side after the
  /// boundary condition was imposed; zero up to rounding.
  Complex forbidden_coefficient;
  /// The scattering state over the whole grid, incident amplitude 1.
  WaveSolution solution;
};

/// Throws AccuracyError if the Wronskian drift exceeds
/// config.match_tolerance, RangeError if V is not finite on the grid, and
/// DomainError for E <= 0 (or E < 1e-6 hbar^2/(8 m a^2) for exponential
/// models).
BasisPair integrate_basis(const PotentialModel& potential, double energy,
                          const SolverConfig& config, const Units& units = {});

/// Plane waves on both sides. Needs |V| < epsilon E at both ends;
/// otherwise PreconditionError naming the endpoint. T = |t|^2, R = |r|^2.
NumericScatteringResult match_plane_waves(const BasisPair& basis,
                                          const SolverConfig& config,
                                          Side side);

/// Plane waves on the left, the exact Hankel pair
/// H^(1,2)_{iq}(p e^{x/2a}) on the right. Exponential models only. T and R
/// are flux ratios.
NumericScatteringResult match_hankel_basis(
    const BasisPair& basis, const SolverConfig& config, Side side,
    const specfun::SeriesConfig& series = {});

/// Integrate and pick the matcher from the model's asymptotic class.
NumericScatteringResult solve(const PotentialModel& model, double energy,
                              const SolverConfig& config, Side side,
                              const Units& units = {});

/// (hbar / 2im)(psi* psi' - psi psi'*)
double flux(Complex psi, Complex dpsi, const Units& units);

/// Cubic Hermite interpolation of (psi, psi') at x inside the grid.
std::pair<Complex, Complex> interpolate(const WaveSolution& w, double x);

}  // namespace expscatter::numeric
