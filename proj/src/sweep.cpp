#include <algorithm>
#include <atomic>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <thread>

#include "expscatter/cli.hpp"
#include "expscatter/errors.hpp"
#include "expscatter/exp_barrier.hpp"
#include "expscatter/numeric_scatter.hpp"

namespace expscatter::cli {

namespace {

enum Col {
  kE,
  kQ,
  kTa,
  kRa,
  kTn,
  kRn,
  kPhiL,
  kThetaL,
  kPhiR,
  kThetaR,
  kFlux,
  kDrift
};

// v0 of the unshifted exponential with the same V(x)
barrier::PhysicalParams closed_form_params(const PotentialModel& m,
                                           const Units& u) {
  using namespace potentials;
  if (const auto* e = std::get_if<Exponential>(&m.params()))
    return {e->v0, e->a, u.mass, u.hbar};
  const auto& s = std::get<ShiftedExponential>(m.params());
  return {s.v0 * std::exp(-s.b / s.a), s.a, u.mass, u.hbar};
}

std::vector<Side> side_list(Sides s) {
  switch (s) {
    case Sides::left:
      return {Side::left};
    case Sides::right:
      return {Side::right};
    case Sides::both:
      break;
  }
  return {Side::left, Side::right};
}

void append_error(SweepRow& row, const std::string& what) {
  if (!row.error.empty()) row.error += "; ";
  row.error += what;
}

SweepRow compute_row(const SweepSpec& spec, double energy) {
  SweepRow row;
  row.cells[kE] = energy;
  const bool closed = has_closed_form(spec.model);
  const auto sides = side_list(spec.sides);

  if (closed) {
    const auto params = closed_form_params(spec.model, spec.units);
    const auto d = barrier::reduce_params(params, energy);
    row.cells[kQ] = d.q;
    if (spec.methods != Methods::numeric) {
      const auto tr = barrier::transmission_reflection(d.q);
      row.cells[kTa] = tr.transmission;
      row.cells[kRa] = tr.reflection;
      try {
        for (Side s : sides) {
          const auto ph = barrier::phase_shifts(d.p, d.q, s);
          row.cells[s == Side::left ? kPhiL : kPhiR] = ph.phi;
          row.cells[s == Side::left ? kThetaL : kThetaR] = ph.theta;
        }
      } catch (const std::exception& e) {
        append_error(row, std::string("analytic phases: ") + e.what());
      }
    }
  }

  if (spec.methods != Methods::analytic) {
    try {
      const auto cfg =
          numeric::SolverConfig::for_model(spec.model, energy, spec.units);
      const auto basis =
          numeric::integrate_basis(spec.model, energy, cfg, spec.units);
      const bool hankel =
          spec.model.classify().right == potentials::Asymptote::diverging;
      double imbalance = 0.0;
      bool have_t = false;
      for (Side s : sides) {
        const auto r = hankel ? numeric::match_hankel_basis(basis, cfg, s)
                              : numeric::match_plane_waves(basis, cfg, s);
        if (!have_t) {
          row.cells[kTn] = r.t_coeff;
          row.cells[kRn] = r.r_coeff;
          have_t = true;
        }
        imbalance = std::max(imbalance, r.diagnostics.flux_imbalance);
        const int phi = s == Side::left ? kPhiL : kPhiR;
        const int theta = s == Side::left ? kThetaL : kThetaR;
        if (!row.cells[phi]) row.cells[phi] = r.phi;
        if (!row.cells[theta]) row.cells[theta] = r.theta;
      }
      row.cells[kFlux] = imbalance;
      row.cells[kDrift] = basis.wronskian_drift;
    } catch (const std::exception& e) {
      row.cells[kTn].reset();
      row.cells[kRn].reset();
      append_error(row, std::string("numeric: ") + e.what());
    }
  }
  return row;
}

bool parse_cell(const std::string& text, std::optional<double>& out) {
  if (text == "NA") {
    out.reset();
    return true;
  }
  if (text.empty()) return false;
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE) return false;
  out = v;
  return true;
}

}  // namespace

void SweepSpec::validate() const {
  if (!(e_min > 0.0) || !(e_max > e_min) || !std::isfinite(e_max))
    throw UsageError("energies must satisfy 0 < emin < emax");
  if (n_points < 2) throw UsageError("--n must be at least 2");
  if (methods != Methods::numeric && !has_closed_form(model))
    throw UsageError("the analytic method needs an exp or expshift model; use "
                     "--method numeric for " + model.describe());
  if (!(units.hbar > 0.0) || !(units.mass > 0.0) ||
      !std::isfinite(units.hbar) || !std::isfinite(units.mass))
    throw UsageError("hbar and mass must be positive");
}

std::vector<double> SweepSpec::energies() const {
  std::vector<double> e(static_cast<std::size_t>(n_points));
  const double last = n_points - 1;
  for (int i = 0; i < n_points; ++i) {
    const double t = i / last;
    e[i] = spacing == Spacing::linear
               ? e_min + (e_max - e_min) * t
               : e_min * std::pow(e_max / e_min, t);
  }
  e.front() = e_min;
  e.back() = e_max;
  return e;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const auto energies = spec.energies();
  std::vector<SweepRow> rows(energies.size());
  unsigned workers = spec.threads ? spec.threads
                                  : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(rows.size()));

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < rows.size(); i = next++)
      rows[i] = compute_row(spec, energies[i]);
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return rows;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void write_sweep(std::ostream& out, const SweepSpec& spec,
                 const std::vector<SweepRow>& rows) {
  char units[96];
  std::snprintf(units, sizeof units, "# hbar=%.17g mass=%.17g\n",
                spec.units.hbar, spec.units.mass);
  out << units;
  out << "# model=" << spec.model.describe() << '\n';
  out << kSweepHeader << '\n';
  for (const auto& row : rows) {
    for (int c = 0; c < kSweepColumns; ++c) {
      if (c) out << ',';
      out << (row.cells[c] ? format_number(*row.cells[c]) : "NA");
    }
    out << '\n';
    if (!row.error.empty()) {
      std::string msg = row.error;
      std::replace(msg.begin(), msg.end(), '\n', ' ');
      out << "# error E=" << format_number(*row.cells[kE]) << ": " << msg
          << '\n';
    }
  }
}

SweepTable read_sweep(std::istream& in) {
  SweepTable table;
  std::string line;
  std::size_t number = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r')
      throw ParseError("carriage return found; the table uses LF line endings",
                       number);
    if (!line.empty() && line[0] == '#') {
      table.comments.push_back(line);
      continue;
    }
    if (!header_seen) {
      if (line != kSweepHeader)
        throw ParseError("expected the sweep header '" +
                             std::string(kSweepHeader) + "'",
                         number);
      header_seen = true;
      continue;
    }
    if (line.empty()) throw ParseError("empty line in the data region", number);
    SweepRow row;
    std::size_t pos = 0;
    for (int c = 0; c < kSweepColumns; ++c) {
      const std::size_t comma = line.find(',', pos);
      const bool last = c == kSweepColumns - 1;
      if (last != (comma == std::string::npos))
        throw ParseError("expected " + std::to_string(kSweepColumns) +
                             " comma-separated fields",
                         number);
      const std::string cell =
          line.substr(pos, last ? std::string::npos : comma - pos);
      if (!parse_cell(cell, row.cells[c]))
        throw ParseError("bad value '" + cell + "' in column " +
                             std::to_string(c + 1),
                         number);
      pos = comma + 1;
    }
    if (!row.cells[kE])
      throw ParseError("energy column cannot be NA", number);
    table.rows.push_back(std::move(row));
  }
  if (!header_seen) throw ParseError("missing sweep header", number);
  return table;
}

}  // namespace expscatter::cli
