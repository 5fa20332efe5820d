// One line per acceptance criterion. argv[1] is the expscatter executable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <numbers>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "expscatter/exp_barrier.hpp"
#include "expscatter/numeric_scatter.hpp"
#include "expscatter/phase.hpp"
#include "expscatter/specfun.hpp"
#include "oracles.hpp"

using namespace expscatter;
using potentials::PotentialModel;
using std::numbers::pi;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int n, bool ok, const std::string& detail) {
  std::printf("criterion %2d %s  %s\n", n, ok ? "PASS" : "FAIL", detail.c_str());
  if (!ok) ++failures;
}

void note(const std::string& s) { std::printf("             note: %s\n", s.c_str()); }

std::string sci(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.3e", v);
  return b;
}

double secs(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::vector<double> q_grid() {
  std::vector<double> q(200);
  for (int i = 0; i < 200; ++i) q[i] = 0.01 + (5.0 - 0.01) * i / 199.0;
  return q;
}

int run(const std::string& cmd) {
  const int st = std::system((cmd + " > /dev/null 2>&1").c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

const PotentialModel kExp = PotentialModel::exponential(1.0, 1.0);  // p = 2

void c1() {
  const auto t0 = Clock::now();
  double worst = 0;
  for (double q : q_grid()) {
    const auto tr = barrier::transmission_reflection(q);
    worst = std::max(worst, std::abs(tr.transmission + tr.reflection - 1));
  }
  const double t = secs(t0);
  report(1, worst < 1e-12 && t < 1.0,
         "unitarity max|T+R-1| = " + sci(worst) + " (< 1e-12), " + sci(t) +
             " s (< 1 s)");
}

void c2() {
  const double t0 = barrier::transmission_reflection(1e-12).transmission;
  const double t10 = barrier::transmission_reflection(10.0).transmission;
  bool mono = true;
  double last = 2;
  for (double q : q_grid()) {
    const double r = barrier::transmission_reflection(q).reflection;
    mono = mono && r < last;
    last = r;
  }
  const bool exact0 = barrier::transmission_reflection(0.0).transmission == 0.0;
  report(2, t0 < 1e-10 && t10 >= 1 - 1e-12 && mono && exact0,
         "T(1e-12) = " + sci(t0) + " (< 1e-10), 1 - T(10) = " + sci(1 - t10) +
             " (<= 1e-12), R decreasing: " + (mono ? "yes" : "no"));
}

struct ExpRuns {
  double t_err = 0, theta_num = 0, t_sides = 0, seconds = 0;
};

ExpRuns exponential_runs() {
  ExpRuns out;
  const auto cfg = numeric::SolverConfig::for_exponential(1.0);
  const auto t0 = Clock::now();
  for (double q : {0.25, 0.5, 1.0, 2.0}) {
    const auto l = numeric::solve(kExp, q * q / 4, cfg, Side::left);
    const auto r = numeric::solve(kExp, q * q / 4, cfg, Side::right);
    out.t_err = std::max(out.t_err, std::abs(l.t_coeff - (1 - std::exp(-2 * pi * q))));
    out.theta_num = std::max(out.theta_num, phase_distance(l.theta, r.theta));
    out.t_sides = std::max(out.t_sides, std::abs(l.t_coeff - r.t_coeff));
  }
  out.seconds = secs(t0);
  return out;
}

void c3(const ExpRuns& e) {
  report(3, e.t_err < 1e-6 && e.seconds < 5.0,
         "p=2, q in {0.25,0.5,1,2}: max|T_num - (1-e^{-2 pi q})| = " +
             sci(e.t_err) + " (< 1e-6), " + sci(e.seconds) + " s (< 5 s)");
}

void c4(const ExpRuns& e) {
  double ana = 0;
  for (double p : {0.5, 1.0, 2.0, 4.0})
    for (double q : q_grid())
      ana = std::max(ana, phase_distance(barrier::amplitudes(p, q, Side::left).theta,
                                         barrier::amplitudes(p, q, Side::right).theta));
  report(4, ana < 1e-10 && e.theta_num < 1e-6 && e.t_sides < 1e-8,
         "|theta_l - theta_r| analytic " + sci(ana) + " (< 1e-10), numeric " +
             sci(e.theta_num) + " (< 1e-6); |T_l - T_r| numeric " +
             sci(e.t_sides) + " (< 1e-8)");
}

void c5() {
  double worst = 0;
  for (double p : {1.0, 2.0, 4.0}) {
    for (double q : {0.3, 0.7, 1.5}) {
      const auto l = barrier::amplitudes(p, q, Side::left);
      const auto r = barrier::amplitudes(p, q, Side::right);
      // arguments of the amplitudes themselves, not the stored phases
      const double sum = std::arg(l.r_amp) - std::arg(l.t_amp) +
                         std::arg(r.r_amp) - std::arg(r.t_amp);
      worst = std::max(worst, phase_distance(sum, pi));
    }
  }
  report(5, worst < 1e-10,
         "(phi_l - theta_l) + (phi_r - theta_r) - pi mod 2 pi: max " +
             sci(worst) + " (< 1e-10)");
}

void c6() {
  double mod = 0, ph = 0, phi = 0;
  for (double p : {0.5, 1.0, 2.0, 4.0}) {
    for (double q : q_grid()) {
      const auto d = barrier::amplitudes(p, q, Side::right);
      mod = std::max(mod, std::abs(std::abs(d.r_amp) - std::exp(-pi * q)));
      ph = std::max(ph, phase_distance(std::arg(d.r_amp), -pi / 2));
      phi = std::max(phi, phase_distance(d.phi, 3 * pi / 2));
    }
  }
  report(6, std::max({mod, ph, phi}) < 1e-12,
         "r_right: |modulus - e^{-pi q}| " + sci(mod) + ", |phase + pi/2| " +
             sci(ph) + ", |phi_right - 3pi/2| " + sci(phi) + " (all < 1e-12)");
}

void c7() {
  const auto cfg = numeric::SolverConfig::for_exponential(1.0);
  const double e = 0.25;  // q = 1
  double lo = 2, hi = -1;
  for (double v0 : {0.5, 1.0, std::exp(1.0)}) {
    const double t =
        numeric::solve(PotentialModel::exponential(v0, 1.0), e, cfg, Side::left)
            .t_coeff;
    lo = std::min(lo, t);
    hi = std::max(hi, t);
  }
  const double b = 1.5;
  const auto sh = PotentialModel::shifted_exponential(1.0, 1.0, b);
  const auto s = numeric::solve(sh, e, numeric::SolverConfig::for_model(sh, e),
                                Side::left);
  const auto o = numeric::solve(kExp, e, cfg, Side::left);
  const Complex phase = std::exp(Complex(0, std::sqrt(e) * b));
  double wf = 0;
  for (double x = -10; x <= 4; x += 0.125)
    wf = std::max(wf, std::abs(numeric::interpolate(s.solution, x + b).first -
                               phase * numeric::interpolate(o.solution, x).first));
  // the closed form, unnormalised: v0 e^{b/a} at x equals v0 at x + b
  std::vector<double> xs, xb;
  for (double x = -10; x <= 4; x += 0.5) {
    xs.push_back(x);
    xb.push_back(x + b);
  }
  const auto w0 = barrier::exact_wavefunction(2.0, 1.0, Side::left, xb);
  const auto w1 = barrier::exact_wavefunction(2.0 * std::exp(b / 2), 1.0, Side::left, xs);
  double an = 0;
  for (std::size_t i = 0; i < xs.size(); ++i)
    an = std::max(an, std::abs(w0.psi[i] - w1.psi[i]) / std::abs(w0.psi[i]));
  report(7, hi - lo < 1e-8 && wf < 1e-8 && an < 1e-8,
         "T spread over v0 in {0.5,1,e}: " + sci(hi - lo) +
             " (< 1e-8); shifted vs translated psi: numeric " + sci(wf) +
             ", closed form " + sci(an) + " (< 1e-8)");
}

void c8() {
  const auto cfg = numeric::SolverConfig::for_exponential(1.0);
  double spread = 0, drift = 0;
  for (double q : {0.25, 1.0, 2.0}) {
    const auto basis = numeric::integrate_basis(kExp, q * q / 4, cfg);
    drift = std::max(drift, basis.wronskian_drift);
    for (Side s : {Side::left, Side::right}) {
      const auto r = numeric::match_hankel_basis(basis, cfg, s);
      spread = std::max(spread, relative_spread(r.solution.flux_profile));
    }
  }
  // step halving on the transmission amplitude, free-standing oracle
  const auto exact = barrier::amplitudes(2.0, 2.0, Side::left).t_amp;
  std::vector<double> hs = {0.05, 0.025, 0.0125}, errs, drifts;
  for (double h : hs) {
    auto c = cfg;
    c.step = h;
    c.match_tolerance = 1e-2;
    const auto b = numeric::integrate_basis(kExp, 1.0, c);
    errs.push_back(std::abs(numeric::match_hankel_basis(b, c, Side::left).t_amp - exact));
    drifts.push_back(b.wronskian_drift);
  }
  auto slope = [&](const std::vector<double>& e) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < hs.size(); ++i) {
      const double x = std::log(hs[i]), y = std::log(e[i]);
      sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    return (3 * sxy - sx * sy) / (3 * sxx - sx * sx);
  };
  const double order = slope(errs);
  report(8, spread < 1e-8 && drift < 1e-8 && std::abs(order - 4) < 0.3,
         "flux spread " + sci(spread) + " (< 1e-8), basis Wronskian drift " +
             sci(drift) + " (< 1e-8), step-halving order of t " +
             std::to_string(order) + " (4 +- 0.3)");
  note("Wronskian drift itself falls at order " + std::to_string(slope(drifts)) +
       ": RK4 keeps |stability function| = 1 - y^6/72 on the imaginary axis");
}

void c9() {
  double gam = 0;
  for (int i = 0; i <= 490; ++i) {
    const double q = 0.1 + i * 0.01;
    gam = std::max(gam, std::abs(std::norm(specfun::complex_gamma({1.0, q})) *
                                     std::sinh(pi * q) -
                                 pi * q));
  }
  double wr = 0, cm = 0, cp = 0;
  for (double q : {0.1, 0.3, 0.5, 1.0, 2.0, 3.0}) {
    for (double z : {0.2, 0.7, 1.5, 4.0, 10.0, 25.0, 60.0}) {
      const auto h1 = specfun::hankel_imag_order_eval(q, z, specfun::HankelKind::first);
      const auto h2 = specfun::hankel_imag_order_eval(q, z, specfun::HankelKind::second);
      const Complex w = h1.value * h2.derivative - h1.derivative * h2.value;
      const Complex want(0, -4 / (pi * z));
      wr = std::max(wr, std::abs(w - want) / std::abs(want));
      const double s = std::abs(h1.value);
      cm = std::max(cm, std::abs(std::conj(h1.value) + std::exp(pi * q) * h2.value) / s);
      cp = std::max(cp, std::abs(std::conj(h1.value) - std::exp(pi * q) * h2.value) / s);
    }
  }
  report(9, gam < 1e-12 && wr < 1e-9 && cm < 1e-9,
         "|Gamma(1+iq)|^2 sinh(pi q) - pi q: " + sci(gam) +
             " (< 1e-12); W[H1,H2] + 4i/(pi z): " + sci(wr) +
             " (< 1e-9); conj H1 = -e^{pi q} H2: " + sci(cm) + " (< 1e-9)");
  note("conj H1 = +e^{pi q} H2 holds to " + sci(cp) +
       "; the minus-sign form cannot hold for the standard Hankel functions");
}

void c10() {
  const auto rect = PotentialModel::rectangular(1.0, 1.0);
  const auto cfg = numeric::SolverConfig::for_model(rect, 0.5);
  const auto r = numeric::solve(rect, 0.5, cfg, Side::left);
  const double t_ref = oracle::rectangular_barrier_transmission(1.0, 2.0, 0.5);
  const double dt = std::abs(r.t_coeff - t_ref);
  const double dphi = phase_distance(r.phi - r.theta, pi / 2);
  report(10, dt < 1e-8 && dphi < 1e-6,
         "rect E=0.5 v0=1 w=2: |T - closed form| " + sci(dt) +
             " (< 1e-8); |phi - theta - pi/2| mod 2pi " + sci(dphi) +
             " (< 1e-6)");
  note("phi - theta = " + std::to_string(r.phi - r.theta) +
       "; with e^{ikx} moving right (the convention that gives r_right = -i "
       "e^{-pi q}) a symmetric barrier has phi - theta = -pi/2");
}

void c11() {
  const barrier::PhysicalParams unit{1.0, 1.0};
  double ratio = 0, bal = 0, wave = 0;
  for (double q : {0.1, 0.25, 0.7, 1.0, 2.0, 3.5}) {
    const double p = 2.0;
    const auto f = barrier::fluxes(p, q, unit);
    // closed forms written out here: hbar = 1, m = 1/2, a = 1, k = q/2
    const double k = q / 2;
    const double ji = k * std::exp(2 * pi * q) / (pi * 0.5 * q * std::sinh(pi * q));
    const double jr = k / (pi * 0.5 * q * std::sinh(pi * q));
    const double jt = std::exp(pi * q) / (pi * 0.5);
    ratio = std::max({ratio, std::abs(f.j_incident - ji) / ji,
                      std::abs(f.j_reflected - jr) / ji,
                      std::abs(f.j_transmitted - jt) / ji,
                      std::abs(jt / ji - (1 - std::exp(-2 * pi * q))),
                      std::abs(jr / ji - std::exp(-2 * pi * q)),
                      std::abs(f.j_transmitted / f.j_incident + std::expm1(-2 * pi * q)),
                      std::abs(f.j_reflected / f.j_incident - std::exp(-2 * pi * q))});
    bal = std::max(bal, std::abs(f.j_incident - f.j_reflected - f.j_transmitted) /
                            f.j_incident);
    // flux of the exact wavefunction at three points
    const std::vector<double> xs = {-4.0, 0.0, 2.0};
    const auto w = barrier::exact_wavefunction(unit, k * k, Side::left, xs);
    for (double j : w.flux_profile)
      wave = std::max(wave, std::abs(j - f.j_transmitted) / f.j_incident);
  }
  report(11, ratio < 1e-12 && bal < 1e-12,
         "flux ratios vs T, R and the closed forms: " + sci(ratio) +
             " (< 1e-12); |J_i - J_r - J_t| / J_i " + sci(bal) + " (< 1e-12)");
  note("flux of the exact wavefunction vs J_t: " + sci(wave));
}

void c12(const std::string& exe) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "expscatter_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string q = "'" + exe + "'";
  const int verify = run(q + " verify");
  const std::string sweep = q + " sweep --n 50 --emin 0.01 --emax 4 --out ";
  bool ok = run(sweep + (dir / "a.csv").string()) == 0 &&
            run(sweep + (dir / "b.csv").string()) == 0 &&
            run(q + " plot " + (dir / "a.csv").string() + " --out " +
                (dir / "a.svg").string()) == 0 &&
            run(q + " plot " + (dir / "b.csv").string() + " --out " +
                (dir / "b.svg").string()) == 0;
  const std::string sa = slurp(dir / "a.svg");
  const bool same = ok && slurp(dir / "a.csv") == slurp(dir / "b.csv") &&
                    sa == slurp(dir / "b.svg") && !sa.empty();
  report(12, verify == 0 && same,
         "verify exit status " + std::to_string(verify) +
             " (0); sweep -> plot byte-identical on repeat: " +
             (same ? "yes" : "no"));
  if (verify != 0)
    note("verify fails only where criteria 9 and 10 above fail");
  fs::remove_all(dir);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_acceptance <path to expscatter>\n");
    return 2;
  }
  c1();
  c2();
  const ExpRuns e = exponential_runs();
  c3(e);
  c4(e);
  c5();
  c6();
  c7();
  c8();
  c9();
  c10();
  c11();
  c12(argv[1]);
  std::printf("%d of 12 criteria failed\n", failures);
  return failures ? 1 : 0;
}
