#include <cmath>
#include <cstdio>
#include <ostream>
#include <tuple>

#include "expscatter/cli.hpp"
#include "expscatter/errors.hpp"
#include "expscatter/exp_barrier.hpp"
#include "expscatter/numeric_scatter.hpp"

namespace expscatter::cli {

void WavefunctionSpec::validate() const {
  if (!(energy > 0.0) || !std::isfinite(energy))
    throw UsageError("--energy must be positive");
  if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max))
    throw UsageError("need xmin < xmax");
  if (n_points < 2) throw UsageError("--n must be at least 2");
  if (method == WaveMethod::analytic && !has_closed_form(model))
    throw UsageError("the analytic wavefunction needs an exp or expshift model");
  if (!(units.hbar > 0.0) || !(units.mass > 0.0))
    throw UsageError("hbar and mass must be positive");
}

void write_wavefunction(std::ostream& out, const WavefunctionSpec& spec) {
  spec.validate();
  std::vector<double> xs(static_cast<std::size_t>(spec.n_points));
  for (int i = 0; i < spec.n_points; ++i)
    xs[i] = spec.x_min + (spec.x_max - spec.x_min) * i / (spec.n_points - 1.0);
  xs.back() = spec.x_max;

  std::vector<Complex> psi(xs.size()), dpsi(xs.size());
  if (spec.method == WaveMethod::analytic) {
    using namespace potentials;
    barrier::PhysicalParams params{};
    if (const auto* e = std::get_if<Exponential>(&spec.model.params())) {
      params = {e->v0, e->a, spec.units.mass, spec.units.hbar};
    } else {
      const auto& s = std::get<ShiftedExponential>(spec.model.params());
      params = {s.v0 * std::exp(-s.b / s.a), s.a, spec.units.mass,
                spec.units.hbar};
    }
    barrier::ExactWaveOptions opts;
    opts.normalize = true;
    const auto w =
        barrier::exact_wavefunction(params, spec.energy, spec.side, xs, opts);
    psi = w.psi;
    dpsi = w.dpsi;
  } else {
    auto cfg = numeric::SolverConfig::for_model(spec.model, spec.energy,
                                                spec.units);
    if (spec.x_min < cfg.x_left) cfg.x_left = spec.x_min;
    if (spec.x_max > cfg.x_right) cfg.x_right = spec.x_max;
    const auto r =
        numeric::solve(spec.model, spec.energy, cfg, spec.side, spec.units);
    for (std::size_t i = 0; i < xs.size(); ++i)
      std::tie(psi[i], dpsi[i]) = numeric::interpolate(r.solution, xs[i]);
  }

  char line[96];
  std::snprintf(line, sizeof line, "# hbar=%.17g mass=%.17g\n",
                spec.units.hbar, spec.units.mass);
  out << line;
  out << "# model=" << spec.model.describe() << '\n';
  out << "# E=" << format_number(spec.energy)
      << " side=" << (spec.side == Side::left ? "left" : "right")
      << " method="
      << (spec.method == WaveMethod::analytic ? "analytic" : "numeric") << '\n';
  out << "x,re_psi,im_psi,abs_psi,flux\n";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out << format_number(xs[i]) << ',' << format_number(psi[i].real()) << ','
        << format_number(psi[i].imag()) << ',' << format_number(std::abs(psi[i]))
        << ',' << format_number(probability_flux(psi[i], dpsi[i], spec.units))
        << '\n';
  }
}

}  // namespace expscatter::cli
