#pragma once

// Building blocks of the expscatter command-line tool: model descriptors,
// energy sweeps, the sweep table format, SVG plots, wavefunction dumps and
// the verification suite.

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "expscatter/common.hpp"
#include "expscatter/potentials.hpp"

namespace expscatter::cli {

using potentials::PotentialModel;

/// Parses `exp:v0=<f>,a=<f>`, `expshift:v0=<f>,a=<f>,b=<f>`,
/// `rect:v0=<f>,w=<f>` (w is the full width) or `free`. Throws UsageError.
PotentialModel parse_model(const std::string& text);

/// Replaces v0 and/or a in an exponential-family or rectangular model.
PotentialModel override_params(const PotentialModel& model,
                               std::optional<double> v0,
                               std::optional<double> a);

bool has_closed_form(const PotentialModel& model);

enum class Spacing { linear, log };
enum class Sides { left, right, both };
enum class Methods { analytic, numeric, both };

struct SweepSpec {
  PotentialModel model = PotentialModel::exponential(1.0, 1.0);
  double e_min = 0.01;
  double e_max = 4.0;
  int n_points = 50;
  Spacing spacing = Spacing::linear;
  Sides sides = Sides::both;
  Methods methods = Methods::both;
  Units units{};
  /// 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;

  /// Throws UsageError.
  void validate() const;
  std::vector<double> energies() const;
};

inline constexpr int kSweepColumns = 12;
inline constexpr const char* kSweepHeader =
    "E,q,T_analytic,R_analytic,T_numeric,R_numeric,phi_left,theta_left,"
    "phi_right,theta_right,flux_imbalance,wronskian_drift";

/// One table row; std::nullopt prints as NA.
struct SweepRow {
  std::array<std::optional<double>, kSweepColumns> cells;
  std::string error;  // empty unless a solver step failed for this energy
};

/// Rows in ascending energy order. Solver failures are recorded in
/// SweepRow::error and leave the affected cells empty.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// "# hbar=.. mass=.." and "# model=.." lines, then the header and rows.
/// Each failed row is followed by a "# error E=..: <message>" line.
void write_sweep(std::ostream& out, const SweepSpec& spec,
                 const std::vector<SweepRow>& rows);

std::string format_number(double v);

struct SweepTable {
  std::vector<std::string> comments;
  std::vector<SweepRow> rows;
};

/// Accepts exactly what write_sweep emits. Throws ParseError with the line
/// number of the first offending line.
SweepTable read_sweep(std::istream& in);

/// T and R against E as a standalone SVG document. Uses the analytic
/// columns where present, the numeric ones otherwise. Throws UsageError if
/// the table has no plottable row.
std::string render_plot(const SweepTable& table, Spacing x_axis);

enum class WaveMethod { analytic, numeric };

struct WavefunctionSpec {
  PotentialModel model = PotentialModel::exponential(1.0, 1.0);
  double energy = 1.0;
  Side side = Side::left;
  WaveMethod method = WaveMethod::analytic;
  double x_min = -10.0;
  double x_max = 3.0;
  int n_points = 201;
  Units units{};

  void validate() const;
};

/// x, Re psi, Im psi, |psi|, flux with unit incident amplitude.
void write_wavefunction(std::ostream& out, const WavefunctionSpec& spec);

struct CheckResult {
  std::string name;
  bool passed;
  double residual;
  double tolerance;
};

/// The acceptance checks, in a fixed order.
std::vector<CheckResult> run_verify();

/// "check=<name> status=PASS|FAIL residual=<r> tolerance=<t>"
std::string format_check(const CheckResult& c);

}  // namespace expscatter::cli
