#pragma once

#include <string>
#include <variant>
#include <vector>

namespace expscatter::potentials {

/// V(x) = -v0 e^{x/a}
struct Exponential {
  double v0;
  double a;
};

/// V(x) = -v0 e^{(x - b)/a}: the exponential translated right by b.
struct ShiftedExponential {
  double v0;
  double a;
  double b;
};

/// V(x) = v0 on |x| <= half_width, 0 elsewhere. v0 > 0 is a barrier,
/// v0 < 0 a well.
struct Rectangular {
  double v0;
  double half_width;
};

/// V(x) = 0
struct Free {};

enum class Kind { exponential, shifted_exponential, rectangular, free };
enum class Asymptote { vanishing, diverging };

struct AsymptoticClass {
  Asymptote left;
  Asymptote right;
  bool operator==(const AsymptoticClass&) const = default;
};

/// One-sided limit selector for evaluating at a jump of the potential.
enum class Limit { none, from_below, from_above };

class PotentialModel {
 public:
  using Params = std::variant<Exponential, ShiftedExponential, Rectangular, Free>;

  // Throw DomainError on non-positive a or half_width, non-positive
  // exponential strength, or non-finite parameters.
  static PotentialModel exponential(double v0, double a);
  static PotentialModel shifted_exponential(double v0, double a, double b);
  static PotentialModel rectangular(double v0, double half_width);
  static PotentialModel free();

  Kind kind() const noexcept;
  const Params& params() const noexcept { return params_; }

  /// V(x). Exponential overflow saturates to -infinity; callers treat a
  /// non-finite value as outside the solver's domain.
  double evaluate(double x, Limit limit = Limit::none) const noexcept;

  AsymptoticClass classify() const noexcept;

  /// Positions of jump discontinuities, ascending.
  std::vector<double> breakpoints() const;

  /// Descriptor text in the command-line grammar, e.g. "exp:v0=1,a=1".
  std::string describe() const;

 private:
  explicit PotentialModel(Params p) : params_(std::move(p)) {}
  Params params_;
};

double evaluate(const PotentialModel& model, double x);
AsymptoticClass classify(const PotentialModel& model);

}  // namespace expscatter::potentials
