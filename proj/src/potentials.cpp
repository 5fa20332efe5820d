#include "expscatter/potentials.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "expscatter/errors.hpp"

namespace expscatter::potentials {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

double saturating_exp_well(double v0, double arg) {
  const double e = std::exp(arg);
  if (!std::isfinite(e)) return -std::numeric_limits<double>::infinity();
  return -v0 * e;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

PotentialModel PotentialModel::exponential(double v0, double a) {
  require(std::isfinite(v0) && v0 > 0.0, "exponential model needs v0 > 0");
  require(std::isfinite(a) && a > 0.0, "exponential model needs a > 0");
  return PotentialModel(Exponential{v0, a});
}

PotentialModel PotentialModel::shifted_exponential(double v0, double a,
                                                   double b) {
  require(std::isfinite(v0) && v0 > 0.0, "shifted exponential needs v0 > 0");
  require(std::isfinite(a) && a > 0.0, "shifted exponential needs a > 0");
  require(std::isfinite(b), "shifted exponential needs a finite shift b");
  return PotentialModel(ShiftedExponential{v0, a, b});
}

PotentialModel PotentialModel::rectangular(double v0, double half_width) {
  require(std::isfinite(v0), "rectangular model needs a finite v0");
  require(std::isfinite(half_width) && half_width > 0.0,
          "rectangular model needs half_width > 0");
  return PotentialModel(Rectangular{v0, half_width});
}

PotentialModel PotentialModel::free() { return PotentialModel(Free{}); }

Kind PotentialModel::kind() const noexcept {
  return std::visit(Overloaded{
                        [](const Exponential&) { return Kind::exponential; },
                        [](const ShiftedExponential&) {
                          return Kind::shifted_exponential;
                        },
                        [](const Rectangular&) { return Kind::rectangular; },
                        [](const Free&) { return Kind::free; },
                    },
                    params_);
}

double PotentialModel::evaluate(double x, Limit limit) const noexcept {
  return std::visit(
      Overloaded{
          [&](const Exponential& p) { return saturating_exp_well(p.v0, x / p.a); },
          [&](const ShiftedExponential& p) {
            return saturating_exp_well(p.v0, (x - p.b) / p.a);
          },
          [&](const Rectangular& p) {
            const double ax = std::abs(x);
            if (ax < p.half_width) return p.v0;
            if (ax > p.half_width) return 0.0;
            // exactly on an edge: the side facing the origin is inside
            const bool inward = (x > 0.0 && limit == Limit::from_below) ||
                                (x < 0.0 && limit == Limit::from_above);
            if (limit == Limit::none || inward) return p.v0;
            return 0.0;
          },
          [](const Free&) { return 0.0; },
      },
      params_);
}

AsymptoticClass PotentialModel::classify() const noexcept {
  switch (kind()) {
    case Kind::exponential:
    case Kind::shifted_exponential:
      return {Asymptote::vanishing, Asymptote::diverging};
    case Kind::rectangular:
    case Kind::free:
      break;
  }
  return {Asymptote::vanishing, Asymptote::vanishing};
}

std::vector<double> PotentialModel::breakpoints() const {
  if (const auto* r = std::get_if<Rectangular>(&params_))
    return {-r->half_width, r->half_width};
  return {};
}

std::string PotentialModel::describe() const {
  return std::visit(
      Overloaded{
          [](const Exponential& p) {
            return "exp:v0=" + fmt(p.v0) + ",a=" + fmt(p.a);
          },
          [](const ShiftedExponential& p) {
            return "expshift:v0=" + fmt(p.v0) + ",a=" + fmt(p.a) +
                   ",b=" + fmt(p.b);
          },
          [](const Rectangular& p) {
            return "rect:v0=" + fmt(p.v0) + ",w=" + fmt(2.0 * p.half_width);
          },
          [](const Free&) { return std::string("free"); },
      },
      params_);
}

double evaluate(const PotentialModel& model, double x) {
  return model.evaluate(x);
}

AsymptoticClass classify(const PotentialModel& model) {
  return model.classify();
}

}  // namespace expscatter::potentials
