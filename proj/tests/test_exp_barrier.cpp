#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "expscatter/errors.hpp"
#include "expscatter/exp_barrier.hpp"
#include "expscatter/phase.hpp"
#include "oracles.hpp"

using namespace expscatter;
using namespace expscatter::barrier;
using std::numbers::pi;

namespace {

std::vector<double> q_grid() {
  std::vector<double> q(200);
  for (int i = 0; i < 200; ++i) q[i] = 0.01 + (5.0 - 0.01) * i / 199.0;
  return q;
}

const double kPs[] = {0.5, 1.0, 2.0, 4.0, 7.5};

}  // namespace

TEST_CASE("reduce_params") {
  const auto d = reduce_params({1.0, 1.0}, 1.0);
  CHECK(d.delta == 0.25);
  CHECK(d.q == 2.0);
  CHECK(d.p == 2.0);
  CHECK(reduce_params({1.0, 0.5}, 1.0).q == 1.0);

  const PhysicalParams odd{3.7, 0.31, 1.9, 0.6};
  for (double e : {1e-3, 0.4, 2.0, 55.0}) {
    const auto r = reduce_params(odd, e);
    CHECK(std::abs(std::sqrt(e / r.delta) - r.q) <= 4e-16 * r.q);
    CHECK(std::abs(r.p * r.p - odd.v0 / r.delta) <= 1e-14 * r.p * r.p);
  }
  CHECK_THROWS_AS(reduce_params({1.0, 1.0}, 0.0), DomainError);
  CHECK_THROWS_AS(reduce_params({1.0, 1.0}, -1.0), DomainError);
  CHECK_THROWS_AS(reduce_params({1.0, -1.0}, 1.0), DomainError);
  CHECK_THROWS_AS(reduce_params({1.0, 1.0, 0.0}, 1.0), DomainError);
}

TEST_CASE("transmission_reflection") {
  CHECK(transmission_reflection(0.0).transmission == 0.0);
  CHECK(transmission_reflection(0.0).reflection == 1.0);
  CHECK(transmission_reflection(10.0).transmission >= 1.0 - 1e-12);
  const auto h = transmission_reflection(0.5);
  CHECK(std::abs(h.transmission - 0.9567860817362277) < 1e-15);
  CHECK(std::abs(h.reflection - 0.04321391826377226) < 1e-16);
  CHECK(transmission_reflection(1e-12).transmission < 1e-10);
  CHECK_THROWS_AS(transmission_reflection(-0.1), DomainError);

  double worst = 0.0;
  double last_t = -1.0, last_r = 2.0;
  bool monotone = true;
  for (double q : q_grid()) {
    const auto tr = transmission_reflection(q);
    worst = std::max(worst, std::abs(tr.transmission + tr.reflection - 1.0));
    monotone = monotone && tr.transmission > last_t && tr.reflection < last_r;
    last_t = tr.transmission;
    last_r = tr.reflection;
  }
  CHECK(worst < 1e-12);
  CHECK(monotone);
}

TEST_CASE("fluxes") {
  const PhysicalParams unit{1.0, 1.0};
  const double p = 2.0;
  for (double q : {0.25, 1.0, 3.3}) {
    const auto f = fluxes(p, q, unit);
    const auto tr = transmission_reflection(q);
    CHECK(std::abs(f.j_transmitted / f.j_incident - tr.transmission) < 1e-12);
    CHECK(std::abs(f.j_reflected / f.j_incident - tr.reflection) < 1e-12);
    CHECK(std::abs(f.j_reflected + f.j_transmitted - f.j_incident) <
          1e-12 * f.j_incident);
  }
  CHECK_THROWS_AS(fluxes(p, 0.0, unit), DegenerateError);
}

TEST_CASE("fluxes agree with the flux of the exact wavefunction") {
  // Evaluate probability_flux on H^(1) and on its two plane-wave parts at
  // the far left.
  const PhysicalParams params{0.8, 1.7, 0.9, 1.3};
  const double q = 0.9;
  const auto d = reduce_params(params, q * q * reduce_params(params, 1).delta);
  const auto f = fluxes(d.p, d.q, params);
  const std::vector<double> xs = {-5.0, 0.0, 2.0};
  const auto w = exact_wavefunction(params, q * q * d.delta, Side::left, xs);
  for (double j : w.flux_profile)
    CHECK(std::abs(j - f.j_transmitted) < 1e-10 * f.j_transmitted);

  const Complex a = incident_amplitude(d.p, d.q, Side::left);
  const Complex b = a * amplitudes(d.p, d.q, Side::left).r_amp;
  const Units u = params.units();
  const double j_in = probability_flux(a, Complex(0, d.k) * a, u);
  const double j_out = -probability_flux(b, Complex(0, -d.k) * b, u);
  CHECK(std::abs(j_in - f.j_incident) < 1e-12 * f.j_incident);
  CHECK(std::abs(j_out - f.j_reflected) < 1e-12 * f.j_incident);
}

TEST_CASE("amplitudes: right side") {
  for (double q : q_grid()) {
    for (double p : kPs) {
      const auto r = amplitudes(p, q, Side::right);
      CHECK(std::abs(std::abs(r.r_amp) - std::exp(-pi * q)) < 1e-12);
      CHECK(std::abs(std::arg(r.r_amp) + pi / 2) < 1e-12);
      CHECK(phase_distance(r.phi, 1.5 * pi) < 1e-12);
    }
  }
  const auto one = amplitudes(2.0, 1.0, Side::right);
  CHECK(std::abs(one.r_amp - Complex(0.0, -std::exp(-pi))) < 1e-16);
  CHECK(std::abs(std::abs(one.r_amp) - 0.04321391826377226) < 1e-16);
}

TEST_CASE("amplitudes: consistency invariants") {
  for (double q : q_grid()) {
    for (double p : kPs) {
      for (Side s : {Side::left, Side::right}) {
        const auto d = amplitudes(p, q, s);
        CHECK(std::abs(d.t_coeff + d.r_coeff - 1.0) < 1e-12);
        CHECK(std::abs(std::norm(d.r_amp) - d.r_coeff) < 1e-10);
        CHECK(std::abs(std::abs(d.r_amp) - std::exp(-pi * q)) < 1e-12);
        CHECK(std::abs(transmission_from_amplitude(d, p, q) - d.t_coeff) <
              1e-10);
        CHECK(d.phi > -pi);
        CHECK(d.phi <= pi);
        CHECK(d.theta > -pi);
        CHECK(d.theta <= pi);
        CHECK(phase_distance(d.phi, std::arg(d.r_amp)) < 1e-12);
        CHECK(phase_distance(d.theta, std::arg(d.t_amp)) < 1e-12);
      }
      const auto l = amplitudes(p, q, Side::left);
      const auto r = amplitudes(p, q, Side::right);
      CHECK(phase_distance(l.theta, r.theta) < 1e-12);
      CHECK(phase_distance(std::arg(l.t_amp), std::arg(r.t_amp)) < 1e-12);
      const double sum = (l.phi - l.theta) + (r.phi - r.theta);
      CHECK(phase_distance(sum, pi) < 1e-10);
    }
  }
  CHECK(std::abs(std::norm(amplitudes(3.0, 0.7, Side::left).r_amp) -
                 std::exp(-1.4 * pi)) < 1e-12);
  CHECK_THROWS_AS(amplitudes(2.0, 1e-9, Side::left), DegenerateError);
  CHECK_THROWS_AS(amplitudes(2.0, 0.0, Side::right), DegenerateError);
  CHECK_THROWS_AS(amplitudes(0.0, 1.0, Side::right), DomainError);
}

TEST_CASE("phase_shifts") {
  for (auto [p, q] : {std::pair{2.0, 0.5}, {4.0, 1.3}, {2.0, 1.0}}) {
    const auto l = phase_shifts(p, q, Side::left);
    const auto r = phase_shifts(p, q, Side::right);
    const auto amp = amplitudes(p, q, Side::left);
    CHECK(phase_distance(l.theta, r.theta) < 1e-12);
    CHECK(phase_distance(l.alpha, q * std::log(p / 2.0)) < 1e-14);
    CHECK(phase_distance(l.phi, std::arg(amp.r_amp)) < 1e-12);
    CHECK(phase_distance(l.theta, std::arg(amp.t_amp)) < 1e-12);
    CHECK(r.phi == doctest::Approx(-pi / 2).epsilon(1e-15));
    // beta against Arg of the Euler-integral Gamma
    CHECK(phase_distance(l.beta, std::arg(oracle::gamma_euler({1.0, q}))) <
          1e-9);
  }
}

TEST_CASE("exact_wavefunction: flux constancy and asymptotic forms") {
  const std::vector<double> xs = {-10.0, 0.0, 2.0};
  for (double q : {0.3, 1.0, 2.5}) {
    for (Side s : {Side::left, Side::right}) {
      const auto w = exact_wavefunction(2.0, q, s, xs);
      CHECK(w.wronskian_drift < 1e-10);
      CHECK(std::abs(w.flux_profile[0]) > 0.0);
    }
  }

  // x/a = -30, q = 1, p = 2: incident plus reflected plane waves
  {
    const double p = 2.0, q = 1.0, xi = -30.0;
    const std::vector<double> g = {xi};
    const auto w = exact_wavefunction(p, q, Side::left, g);
    const Complex a = incident_amplitude(p, q, Side::left);
    const Complex b = a * amplitudes(p, q, Side::left).r_amp;
    const double moduli = std::exp(q * pi) /
                          (std::sinh(q * pi) *
                           std::abs(oracle::gamma_euler({1.0, q})));
    CHECK(std::abs(std::abs(a) - moduli) < 1e-8 * moduli);
    CHECK(std::abs(std::abs(b) - moduli * std::exp(-pi * q)) < 1e-8 * moduli);
    const Complex two_waves = a * std::exp(Complex(0, q * xi / 2)) +
                              b * std::exp(Complex(0, -q * xi / 2));
    CHECK(std::abs(w.psi[0] - two_waves) < 1e-8 * std::abs(a));
  }

  // decaying travelling wave on the right
  {
    const std::vector<double> g = {6.0, 8.0};
    const auto w = exact_wavefunction(2.0, 0.5, Side::left, g);
    const double e6 = std::abs(w.psi[0]) * std::exp(6.0 / 4.0);
    const double e8 = std::abs(w.psi[1]) * std::exp(8.0 / 4.0);
    CHECK(std::abs(e6 - e8) < 1e-4 * e8);
  }
}

TEST_CASE("exact_wavefunction: normalisation, shift and errors") {
  const double p = 2.0, q = 0.8;
  std::vector<double> far = {-30.0, -29.3};
  for (Side s : {Side::left, Side::right}) {
    ExactWaveOptions o;
    o.normalize = true;
    const auto w = exact_wavefunction(p, q, s, far, o);
    const auto d = amplitudes(p, q, s);
    for (std::size_t i = 0; i < far.size(); ++i) {
      const Complex in = std::exp(Complex(0, q * far[i] / 2));
      const Complex out = std::exp(Complex(0, -q * far[i] / 2));
      const Complex expect = s == Side::left ? in + d.r_amp * out : d.t_amp * out;
      CHECK(std::abs(w.psi[i] - expect) < 1e-10);
    }
  }

  // v0' = v0 e^{b/a} gives psi(x + b); p scales as sqrt(v0)
  const double b = 0.9;
  std::vector<double> xs, xs_shift;
  for (double x = -6.0; x <= 3.0; x += 0.25) {
    xs.push_back(x);
    xs_shift.push_back(x + b);
  }
  const auto w0 = exact_wavefunction(p, q, Side::left, xs_shift);
  const auto w1 = exact_wavefunction(p * std::exp(b / 2.0), q, Side::left, xs);
  for (std::size_t i = 0; i < xs.size(); ++i)
    CHECK(std::abs(w0.psi[i] - w1.psi[i]) < 1e-8 * std::abs(w0.psi[i]));

  const std::vector<double> too_far = {20.0};
  CHECK_THROWS_AS(exact_wavefunction(p, q, Side::left, too_far), RangeError);
  CHECK_THROWS_AS(exact_wavefunction(p, 0.0, Side::left, xs), DegenerateError);
}
