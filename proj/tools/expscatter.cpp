// expscatter: energy sweeps, wavefunctions, plots and self-verification for
// 1D scattering off the exponential potential and a few reference shapes.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "expscatter/cli.hpp"
#include "expscatter/errors.hpp"

namespace cli = expscatter::cli;
using namespace expscatter;

namespace {

enum Exit { kOk = 0, kUsage = 1, kNumeric = 2, kInvariant = 3 };

struct Common {
  std::string model = "exp:v0=1,a=1";
  std::optional<double> v0, a;
  double hbar = 1.0, mass = 0.5;
  std::string out;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--model", c.model,
                  "exp:v0=<f>,a=<f> | expshift:v0=<f>,a=<f>,b=<f> | "
                  "rect:v0=<f>,w=<f> | free")
      ->capture_default_str();
  sub->add_option("--v0", c.v0, "override the model strength");
  sub->add_option("--a", c.a, "override the exponential length scale");
  sub->add_option("--hbar", c.hbar)->capture_default_str();
  sub->add_option("--mass", c.mass)->capture_default_str();
  sub->add_option("--out", c.out, "output file (default: stdout)");
}

// Write atomically from a finished buffer so failed runs leave no file.
int emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return kOk;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  f << text;
  f.close();
  if (!f) {
    std::cerr << "expscatter: cannot write " << path << '\n';
    return kUsage;
  }
  return kOk;
}

template <class T>
T pick(const std::string& flag, const std::string& v,
       std::initializer_list<std::pair<const char*, T>> table) {
  for (const auto& [name, value] : table)
    if (v == name) return value;
  throw UsageError("bad value '" + v + "' for " + flag);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scattering by the exponential potential V(x) = -v0 e^{x/a}"};
  app.require_subcommand(1);

  Common sweep_c, wave_c, plot_c;

  auto* sweep = app.add_subcommand("sweep", "tabulate T, R and phases over an energy range");
  add_common(sweep, sweep_c);
  double emin = 0.01, emax = 4.0;
  int n_sweep = 50;
  std::string spacing = "linear", side = "both", method;
  sweep->add_option("--emin", emin)->capture_default_str();
  sweep->add_option("--emax", emax)->capture_default_str();
  sweep->add_option("--n", n_sweep)->capture_default_str();
  sweep->add_option("--spacing", spacing, "linear | log")->capture_default_str();
  sweep->add_option("--side", side, "left | right | both")->capture_default_str();
  sweep->add_option("--method", method,
                    "analytic | numeric | both (default: both when a closed "
                    "form exists, else numeric)");

  auto* verify = app.add_subcommand("verify", "run the acceptance checks");

  auto* wave = app.add_subcommand("wavefunction", "sample psi with unit incident amplitude");
  add_common(wave, wave_c);
  double energy = 1.0, xmin = -10.0, xmax = 3.0;
  int n_wave = 201;
  std::string wave_side = "left", wave_method;
  wave->add_option("--energy", energy)->capture_default_str();
  wave->add_option("--side", wave_side, "left | right")->capture_default_str();
  wave->add_option("--method", wave_method,
                   "analytic | numeric (default: analytic when a closed form "
                   "exists, else numeric)");
  wave->add_option("--xmin", xmin)->capture_default_str();
  wave->add_option("--xmax", xmax)->capture_default_str();
  wave->add_option("--n", n_wave)->capture_default_str();

  auto* plot = app.add_subcommand("plot", "draw T and R from a sweep table as SVG");
  std::string input, plot_spacing = "linear";
  plot->add_option("input", input, "sweep table")->required();
  plot->add_option("--spacing", plot_spacing, "linear | log x axis")
      ->capture_default_str();
  plot->add_option("--out", plot_c.out, "SVG file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*sweep) {
      cli::SweepSpec spec;
      spec.model = cli::override_params(cli::parse_model(sweep_c.model),
                                        sweep_c.v0, sweep_c.a);
      spec.e_min = emin;
      spec.e_max = emax;
      spec.n_points = n_sweep;
      spec.units = {sweep_c.hbar, sweep_c.mass};
      spec.spacing = pick<cli::Spacing>("--spacing", spacing,
                                        {{"linear", cli::Spacing::linear},
                                         {"log", cli::Spacing::log}});
      spec.sides = pick<cli::Sides>("--side", side,
                                    {{"left", cli::Sides::left},
                                     {"right", cli::Sides::right},
                                     {"both", cli::Sides::both}});
      spec.methods =
          method.empty()
              ? (cli::has_closed_form(spec.model) ? cli::Methods::both
                                                   : cli::Methods::numeric)
              : pick<cli::Methods>("--method", method,
                                   {{"analytic", cli::Methods::analytic},
                                    {"numeric", cli::Methods::numeric},
                                    {"both", cli::Methods::both}});
      const auto rows = cli::run_sweep(spec);
      std::ostringstream text;
      cli::write_sweep(text, spec, rows);
      const int rc = emit(sweep_c.out, text.str());
      if (rc) return rc;
      for (const auto& r : rows)
        if (!r.error.empty()) return kNumeric;
      return kOk;
    }

    if (*verify) {
      bool ok = true;
      for (const auto& c : cli::run_verify()) {
        std::cout << cli::format_check(c) << '\n';
        ok = ok && c.passed;
      }
      std::cout << "overall=" << (ok ? "PASS" : "FAIL") << '\n';
      return ok ? kOk : kInvariant;
    }

    if (*wave) {
      cli::WavefunctionSpec spec;
      spec.model = cli::override_params(cli::parse_model(wave_c.model),
                                        wave_c.v0, wave_c.a);
      spec.energy = energy;
      spec.side = pick<Side>("--side", wave_side,
                             {{"left", Side::left}, {"right", Side::right}});
      spec.method =
          wave_method.empty()
              ? (cli::has_closed_form(spec.model) ? cli::WaveMethod::analytic
                                                   : cli::WaveMethod::numeric)
              : pick<cli::WaveMethod>("--method", wave_method,
                                      {{"analytic", cli::WaveMethod::analytic},
                                       {"numeric", cli::WaveMethod::numeric}});
      spec.x_min = xmin;
      spec.x_max = xmax;
      spec.n_points = n_wave;
      spec.units = {wave_c.hbar, wave_c.mass};
      std::ostringstream text;
      cli::write_wavefunction(text, spec);
      return emit(wave_c.out, text.str());
    }

    if (*plot) {
      std::ifstream f(input, std::ios::binary);
      if (!f) throw UsageError("cannot open " + input);
      const auto table = cli::read_sweep(f);
      const auto axis = pick<cli::Spacing>("--spacing", plot_spacing,
                                           {{"linear", cli::Spacing::linear},
                                            {"log", cli::Spacing::log}});
      return emit(plot_c.out, cli::render_plot(table, axis));
    }
  } catch (const UsageError& e) {
    std::cerr << "expscatter: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "expscatter: " << input << ": " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "expscatter: " << e.what() << '\n';
    return kNumeric;
  }
  return kOk;
}
