#pragma once

#include <complex>
#include <span>
#include <vector>

namespace expscatter {

using Complex = std::complex<double>;

enum class Side { left, right };

/// Reduced Planck constant and particle mass. The default is the unit system
/// used throughout the command-line tool: 2m / hbar^2 = 1.
struct Units {
  double hbar = 1.0;
  double mass = 0.5;
};

/// A complex wavefunction sampled on an increasing grid.
///
/// flux_profile[i] is the probability current at grid[i]. wronskian_drift is
/// the worst violation of the relevant constant-Wronskian identity: the
/// relative spread of the flux for a scattering solution, max |W[u,v] - 1|
/// for the members of a basis pair.
struct WaveSolution {
  std::vector<double> grid;
  std::vector<Complex> psi;
  std::vector<Complex> dpsi;
  std::vector<double> flux_profile;
  double wronskian_drift = 0.0;
};

/// (hbar / 2im)(psi* psi' - psi psi'*) = (hbar/m) Im(psi* psi')
inline double probability_flux(Complex psi, Complex dpsi, const Units& units) {
  return units.hbar / units.mass * (std::conj(psi) * dpsi).imag();
}

/// (max - min) / max |value|; 0 for an empty or all-zero profile.
double relative_spread(std::span<const double> values);

}  // namespace expscatter
