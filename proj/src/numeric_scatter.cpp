#include "expscatter/numeric_scatter.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <tuple>

#include "expscatter/errors.hpp"
#include "expscatter/phase.hpp"

namespace expscatter::numeric {

namespace {

using potentials::Kind;
using potentials::Limit;
using std::numbers::pi;

// (u, u', v, v')
using State = std::array<double, 4>;

struct ExpGeometry {
  double p;   // effective strength: z(x) = p e^{x/2a}
  double a;
};

std::optional<ExpGeometry> exponential_geometry(const PotentialModel& m,
                                                const Units& units) {
  if (const auto* e = std::get_if<potentials::Exponential>(&m.params())) {
    return ExpGeometry{
        std::sqrt(8.0 * units.mass * e->v0 * e->a * e->a) / units.hbar, e->a};
  }
  if (const auto* s =
          std::get_if<potentials::ShiftedExponential>(&m.params())) {
    const double p =
        std::sqrt(8.0 * units.mass * s->v0 * s->a * s->a) / units.hbar;
    return ExpGeometry{p * std::exp(-s->b / (2.0 * s->a)), s->a};
  }
  return std::nullopt;
}

std::vector<double> build_grid(const SolverConfig& cfg,
                               const std::vector<double>& breakpoints,
                               std::size_t& origin_index) {
  std::vector<double> knots{cfg.x_left, 0.0, cfg.x_right};
  for (double b : breakpoints)
    if (b > cfg.x_left && b < cfg.x_right) knots.push_back(b);
  std::sort(knots.begin(), knots.end());
  knots.erase(std::unique(knots.begin(), knots.end()), knots.end());

  std::vector<double> grid{knots.front()};
  for (std::size_t s = 0; s + 1 < knots.size(); ++s) {
    const double lo = knots[s];
    const double len = knots[s + 1] - lo;
    const auto n = static_cast<std::size_t>(
        std::max(1.0, std::ceil(len / cfg.step - 1e-9)));
    const double h = len / static_cast<double>(n);
    for (std::size_t j = 1; j < n; ++j)
      grid.push_back(lo + static_cast<double>(j) * h);
    grid.push_back(knots[s + 1]);
  }
  origin_index = static_cast<std::size_t>(
      std::find(grid.begin(), grid.end(), 0.0) - grid.begin());
  return grid;
}

double checked_potential(const PotentialModel& m, double x, Limit lim) {
  const double v = m.evaluate(x, lim);
  if (!std::isfinite(v)) {
    std::ostringstream os;
    os << "potential is not finite at x = " << x << "; shrink the grid";
    throw RangeError(os.str());
  }
  return v;
}

// One RK4 step of psi'' = c (V - E) psi for both basis members.
State rk4_step(const PotentialModel& m, double coupling, double energy,
               double xa, double xb, const State& y) {
  const double h = xb - xa;
  const Limit at_a = h > 0 ? Limit::from_above : Limit::from_below;
  const Limit at_b = h > 0 ? Limit::from_below : Limit::from_above;
  const double ga = coupling * (checked_potential(m, xa, at_a) - energy);
  const double gm =
      coupling * (checked_potential(m, xa + 0.5 * h, Limit::none) - energy);
  const double gb = coupling * (checked_potential(m, xb, at_b) - energy);

  auto deriv = [](double g, const State& s) {
    return State{s[1], g * s[0], s[3], g * s[2]};
  };
  auto axpy = [](const State& s, double f, const State& d) {
    return State{s[0] + f * d[0], s[1] + f * d[1], s[2] + f * d[2],
                 s[3] + f * d[3]};
  };
  const State k1 = deriv(ga, y);
  const State k2 = deriv(gm, axpy(y, 0.5 * h, k1));
  const State k3 = deriv(gm, axpy(y, 0.5 * h, k2));
  const State k4 = deriv(gb, axpy(y, h, k3));
  State out;
  for (std::size_t i = 0; i < 4; ++i)
    out[i] = y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

// Plane-wave content of (f, f') at x: f = A e^{ikx} + B e^{-ikx}.
std::pair<Complex, Complex> plane_wave_split(Complex f, Complex df, double k,
                                             double x) {
  const Complex ratio = df / Complex(0.0, k);
  const Complex a = std::exp(Complex(0.0, -k * x)) * (f + ratio) / 2.0;
  const Complex b = std::exp(Complex(0.0, k * x)) * (f - ratio) / 2.0;
  return {a, b};
}

Complex wronskian(Complex f, Complex df, Complex g, Complex dg) {
  return f * dg - df * g;
}

// Solve [[a, b], [c, d]] x = [e, f].
std::pair<Complex, Complex> solve2(Complex a, Complex b, Complex c, Complex d,
                                   Complex e, Complex f) {
  const Complex det = a * d - b * c;
  if (std::abs(det) == 0.0)
    throw AccuracyError("singular matching system", 0.0);
  return {(e * d - b * f) / det, (a * f - e * c) / det};
}

double wave_number(const BasisPair& basis) {
  return std::sqrt(2.0 * basis.units.mass * basis.energy) / basis.units.hbar;
}

void check_endpoint(const BasisPair& basis, const SolverConfig& cfg,
                    bool left, bool right) {
  auto check = [&](const char* name, double x) {
    const double v = std::abs(basis.potential.evaluate(x));
    if (!(v < cfg.left_asymptote_epsilon * basis.energy)) {
      std::ostringstream os;
      os << name << " endpoint x = " << x << ": |V| = " << v
         << " is not negligible against epsilon * E = "
         << cfg.left_asymptote_epsilon * basis.energy;
      throw PreconditionError(os.str());
    }
  };
  if (left) check("left", basis.u.grid.front());
  if (right) check("right", basis.u.grid.back());
}

WaveSolution assemble(const BasisPair& basis, Complex c, Complex d) {
  WaveSolution s;
  s.grid = basis.u.grid;
  const std::size_t n = s.grid.size();
  s.psi.resize(n);
  s.dpsi.resize(n);
  s.flux_profile.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.psi[i] = c * basis.u.psi[i] + d * basis.v.psi[i];
    s.dpsi[i] = c * basis.u.dpsi[i] + d * basis.v.dpsi[i];
    s.flux_profile[i] = flux(s.psi[i], s.dpsi[i], basis.units);
  }
  s.wronskian_drift = relative_spread(s.flux_profile);
  return s;
}

void finish(NumericScatteringResult& r, const BasisPair& basis,
            const SolverConfig& cfg) {
  r.phi = wrap_phase(std::arg(r.r_amp));
  r.theta = wrap_phase(std::arg(r.t_amp));
  r.diagnostics.wronskian_drift = basis.wronskian_drift;
  r.diagnostics.flux_imbalance =
      std::max(std::abs(r.t_coeff + r.r_coeff - 1.0),
               r.solution.wronskian_drift);
  if (r.diagnostics.match_residual > cfg.match_tolerance) {
    throw AccuracyError("boundary conditions not met to match_tolerance",
                        r.diagnostics.match_residual);
  }
}

}  // namespace

SolverConfig SolverConfig::for_exponential(double a) {
  SolverConfig c;
  c.x_left = -20.0 * a;
  c.x_right = 4.0 * a;
  c.step = a / 2000.0;
  return c;
}

SolverConfig SolverConfig::for_model(const PotentialModel& model,
                                     double energy, const Units& units) {
  switch (model.kind()) {
    case Kind::exponential:
    case Kind::shifted_exponential: {
      const auto geo = exponential_geometry(model, units);
      SolverConfig c = for_exponential(geo->a);
      const double shift = 2.0 * geo->a * std::log(2.0 / geo->p);  // p -> 2
      c.x_left += shift;
      c.x_right += shift;
      // widen until |V(x_left)| <= 0.01 epsilon E
      if (energy > 0.0) {
        const double v0_eff = geo->p * geo->p * units.hbar * units.hbar /
                              (8.0 * units.mass * geo->a * geo->a);
        const double needed =
            geo->a * std::log(0.01 * c.left_asymptote_epsilon * energy / v0_eff);
        c.x_left = std::min(c.x_left, needed);
      }
      c.x_left = std::min(c.x_left, -geo->a);
      c.x_right = std::max(c.x_right, geo->a);
      return c;
    }
    case Kind::rectangular: {
      const auto& r = std::get<potentials::Rectangular>(model.params());
      SolverConfig c;
      c.x_left = -(r.half_width + 1.0);
      c.x_right = r.half_width + 1.0;
      c.step = r.half_width / 2000.0;
      return c;
    }
    case Kind::free:
      break;
  }
  SolverConfig c;
  c.x_left = -1.0;
  c.x_right = 1.0;
  return c;
}

void SolverConfig::validate() const {
  if (!(x_left < 0.0 && x_right > 0.0))
    throw DomainError("solver grid must satisfy x_left < 0 < x_right");
  if (!(step > 0.0) || !std::isfinite(step))
    throw DomainError("solver step must be positive");
  if (!(match_tolerance > 0.0) || !(left_asymptote_epsilon > 0.0))
    throw DomainError("solver tolerances must be positive");
}

double flux(Complex psi, Complex dpsi, const Units& units) {
  return probability_flux(psi, dpsi, units);
}

BasisPair integrate_basis(const PotentialModel& potential, double energy,
                          const SolverConfig& config, const Units& units) {
  config.validate();
  if (!(energy > 0.0) || !std::isfinite(energy))
    throw DomainError("scattering energy must be positive");
  if (const auto geo = exponential_geometry(potential, units)) {
    const double delta =
        units.hbar * units.hbar / (8.0 * units.mass * geo->a * geo->a);
    if (energy < 1e-6 * delta) {
      std::ostringstream os;
      os << "energy " << energy << " is below 1e-6 * delta = " << 1e-6 * delta
         << "; the numeric solution is unreliable there";
      throw DomainError(os.str());
    }
  }

  std::size_t origin = 0;
  const std::vector<double> grid =
      build_grid(config, potential.breakpoints(), origin);
  const std::size_t n = grid.size();
  std::vector<State> states(n);
  states[origin] = {1.0, 0.0, 0.0, 1.0};

  const double coupling = 2.0 * units.mass / (units.hbar * units.hbar);
  for (std::size_t i = origin; i + 1 < n; ++i)
    states[i + 1] =
        rk4_step(potential, coupling, energy, grid[i], grid[i + 1], states[i]);
  for (std::size_t i = origin; i > 0; --i)
    states[i - 1] =
        rk4_step(potential, coupling, energy, grid[i], grid[i - 1], states[i]);

  BasisPair basis{{}, {}, potential, energy, units, origin, 0.0};
  basis.u.grid = grid;
  basis.v.grid = grid;
  basis.u.psi.resize(n);
  basis.u.dpsi.resize(n);
  basis.v.psi.resize(n);
  basis.v.dpsi.resize(n);
  basis.u.flux_profile.assign(n, 0.0);
  basis.v.flux_profile.assign(n, 0.0);
  double drift = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const State& s = states[i];
    basis.u.psi[i] = s[0];
    basis.u.dpsi[i] = s[1];
    basis.v.psi[i] = s[2];
    basis.v.dpsi[i] = s[3];
    drift = std::max(drift, std::abs(s[0] * s[3] - s[1] * s[2] - 1.0));
  }
  basis.wronskian_drift = drift;
  basis.u.wronskian_drift = drift;
  basis.v.wronskian_drift = drift;
  if (!(drift <= config.match_tolerance)) {
    std::ostringstream os;
    os << "Wronskian drift " << drift << " exceeds tolerance "
       << config.match_tolerance << "; refine the step (now " << config.step
       << ")";
    throw AccuracyError(os.str(), drift);
  }
  return basis;
}

NumericScatteringResult match_plane_waves(const BasisPair& basis,
                                          const SolverConfig& config,
                                          Side side) {
  check_endpoint(basis, config, true, true);
  const double k = wave_number(basis);
  const bool left = side == Side::left;
  // transmitted end gets a unit outgoing wave, the other end is decomposed
  const std::size_t t_end = left ? basis.u.grid.size() - 1 : 0;
  const std::size_t i_end = left ? 0 : basis.u.grid.size() - 1;
  const double s = left ? 1.0 : -1.0;

  const double xt = basis.u.grid[t_end];
  const Complex psi_t = std::exp(Complex(0.0, s * k * xt));
  const Complex dpsi_t = Complex(0.0, s * k) * psi_t;
  const auto [c, d] =
      solve2(basis.u.psi[t_end], basis.v.psi[t_end], basis.u.dpsi[t_end],
             basis.v.dpsi[t_end], psi_t, dpsi_t);

  const double xi = basis.u.grid[i_end];
  const Complex f = c * basis.u.psi[i_end] + d * basis.v.psi[i_end];
  const Complex df = c * basis.u.dpsi[i_end] + d * basis.v.dpsi[i_end];
  auto [a_plus, a_minus] = plane_wave_split(f, df, k, xi);
  const Complex incident = left ? a_plus : a_minus;
  const Complex reflected = left ? a_minus : a_plus;

  NumericScatteringResult r;
  r.side = side;
  r.t_amp = 1.0 / incident;
  r.r_amp = reflected / incident;
  r.t_coeff = std::norm(r.t_amp);
  r.r_coeff = std::norm(r.r_amp);
  r.solution = assemble(basis, c / incident, d / incident);

  const Complex ft = c * basis.u.psi[t_end] + d * basis.v.psi[t_end];
  const Complex dft = c * basis.u.dpsi[t_end] + d * basis.v.dpsi[t_end];
  const auto [t_plus, t_minus] = plane_wave_split(ft, dft, k, xt);
  r.forbidden_coefficient = (left ? t_minus : t_plus) / incident;
  r.diagnostics.match_residual =
      std::abs(ft - psi_t) + std::abs(dft - dpsi_t) / k;
  finish(r, basis, config);
  return r;
}

NumericScatteringResult match_hankel_basis(const BasisPair& basis,
                                           const SolverConfig& config,
                                           Side side,
                                           const specfun::SeriesConfig& series) {
  const auto geo = exponential_geometry(basis.potential, basis.units);
  if (!geo)
    throw PreconditionError(
        "Hankel-basis matching needs an exponential potential");

  const double k = wave_number(basis);
  const double q = 2.0 * k * geo->a;
  const std::size_t nr = basis.u.grid.size() - 1;
  const double xr = basis.u.grid[nr];
  const double xl = basis.u.grid.front();
  const double zr = geo->p * std::exp(xr / (2.0 * geo->a));
  const double dz_dx = zr / (2.0 * geo->a);

  const auto h1 =
      specfun::hankel_imag_order_eval(q, zr, specfun::HankelKind::first, series);
  const auto h2 = specfun::hankel_imag_order_eval(
      q, zr, specfun::HankelKind::second, series);
  const Complex dh1 = h1.derivative * dz_dx;
  const Complex dh2 = h2.derivative * dz_dx;
  const Complex w12 = wronskian(h1.value, dh1, h2.value, dh2);
  const double conditioning =
      std::abs(w12) /
      (std::abs(h1.value * dh2) + std::abs(dh1 * h2.value));
  if (!(conditioning > config.match_tolerance)) {
    throw AccuracyError("Hankel basis Wronskian vanishes at the right end",
                        conditioning);
  }
  // f = c1 H1 + c2 H2
  auto project = [&](Complex f, Complex df) {
    return std::pair{wronskian(f, df, h2.value, dh2) / w12,
                     wronskian(h1.value, dh1, f, df) / w12};
  };
  const auto [u1, u2] = project(basis.u.psi[nr], basis.u.dpsi[nr]);
  const auto [v1, v2] = project(basis.v.psi[nr], basis.v.dpsi[nr]);
  const auto [ua, ub] =
      plane_wave_split(basis.u.psi[0], basis.u.dpsi[0], k, xl);
  const auto [va, vb] =
      plane_wave_split(basis.v.psi[0], basis.v.dpsi[0], k, xl);

  // unit waves e^{-x/4a} e^{+-iz} relative to H1, H2 at large z
  const double root = std::sqrt(2.0 / (pi * geo->p));
  const Complex out_unit =
      root * std::exp(Complex(q * pi / 2.0, -pi / 4.0));   // H1 -> e^{+iz}
  const Complex in_unit =
      root * std::exp(Complex(-q * pi / 2.0, pi / 4.0));   // H2 -> e^{-iz}

  NumericScatteringResult r;
  r.side = side;
  Complex c, d;
  double j_in = 0.0, j_ref = 0.0, j_tr = 0.0;
  const double plane_flux = basis.units.hbar * k / basis.units.mass;
  auto hankel_flux = [&](Complex coeff, const specfun::HankelEval& h,
                         Complex dh) {
    return std::abs(flux(coeff * h.value, coeff * dh, basis.units));
  };
  if (side == Side::left) {
    // no H2 on the right, unit e^{ikx} on the left
    std::tie(c, d) = solve2(u2, v2, ua, va, 0.0, 1.0);
    const Complex b = c * ub + d * vb;
    const Complex c1 = c * u1 + d * v1;
    r.r_amp = b;
    r.t_amp = c1 * out_unit;
    r.forbidden_coefficient = c * u2 + d * v2;
    j_in = plane_flux;
    j_ref = plane_flux * std::norm(b);
    j_tr = hankel_flux(c1, h1, dh1);
    r.solution = assemble(basis, c, d);
  } else {
    // unit e^{-ikx} on the left, nothing moving right there
    std::tie(c, d) = solve2(ua, va, ub, vb, 0.0, 1.0);
    const Complex c1 = c * u1 + d * v1;
    const Complex c2 = c * u2 + d * v2;
    const Complex incident = c2 * in_unit;
    r.t_amp = 1.0 / incident;
    r.r_amp = c1 * out_unit / incident;
    r.forbidden_coefficient = c * ua + d * va;
    j_in = hankel_flux(c2, h2, dh2);
    j_ref = hankel_flux(c1, h1, dh1);
    j_tr = plane_flux;
    r.solution = assemble(basis, c / incident, d / incident);
  }
  r.t_coeff = j_tr / j_in;
  r.r_coeff = j_ref / j_in;

  // the imposed conditions, re-evaluated from the assembled solution
  const Complex fr = r.solution.psi[nr];
  const Complex dfr = r.solution.dpsi[nr];
  const auto [f1, f2] = project(fr, dfr);
  const auto [fa, fb] =
      plane_wave_split(r.solution.psi[0], r.solution.dpsi[0], k, xl);
  if (side == Side::left) {
    r.diagnostics.match_residual =
        std::abs(f2) / std::abs(f1) + std::abs(fa - 1.0);
  } else {
    r.diagnostics.match_residual =
        std::abs(fa) / std::abs(fb) + std::abs(f2 * in_unit - 1.0);
  }
  finish(r, basis, config);
  return r;
}

NumericScatteringResult solve(const PotentialModel& model, double energy,
                              const SolverConfig& config, Side side,
                              const Units& units) {
  const BasisPair basis = integrate_basis(model, energy, config, units);
  if (model.classify().right == potentials::Asymptote::diverging)
    return match_hankel_basis(basis, config, side);
  return match_plane_waves(basis, config, side);
}

std::pair<Complex, Complex> interpolate(const WaveSolution& w, double x) {
  const auto& g = w.grid;
  if (g.size() < 2 || x < g.front() || x > g.back()) {
    std::ostringstream os;
    os << "x = " << x << " outside the solution grid";
    throw RangeError(os.str());
  }
  std::size_t i = static_cast<std::size_t>(
      std::upper_bound(g.begin(), g.end(), x) - g.begin());
  i = std::clamp<std::size_t>(i, 1, g.size() - 1);
  const double x0 = g[i - 1];
  const double h = g[i] - x0;
  const double t = (x - x0) / h;
  const Complex p0 = w.psi[i - 1], p1 = w.psi[i];
  const Complex m0 = w.dpsi[i - 1] * h, m1 = w.dpsi[i] * h;
  const double t2 = t * t, t3 = t2 * t;
  const Complex psi = (2 * t3 - 3 * t2 + 1) * p0 + (t3 - 2 * t2 + t) * m0 +
                      (-2 * t3 + 3 * t2) * p1 + (t3 - t2) * m1;
  const Complex dpsi = ((6 * t2 - 6 * t) * p0 + (3 * t2 - 4 * t + 1) * m0 +
                        (-6 * t2 + 6 * t) * p1 + (3 * t2 - 2 * t) * m1) /
                       h;
  return {psi, dpsi};
}

}  // namespace expscatter::numeric
