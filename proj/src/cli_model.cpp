#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <map>
#include <set>

#include "expscatter/cli.hpp"
#include "expscatter/errors.hpp"

namespace expscatter::cli {

namespace {

double parse_real(const std::string& key, const std::string& text) {
  if (text.empty()) throw UsageError("empty value for " + key);
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE || !std::isfinite(v))
    throw UsageError("bad number for " + key + ": '" + text + "'");
  return v;
}

std::map<std::string, double> parse_fields(const std::string& body,
                                           const std::set<std::string>& keys,
                                           const std::string& kind) {
  std::map<std::string, double> out;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    const std::size_t comma = body.find(',', pos);
    const std::string item =
        body.substr(pos, comma == std::string::npos ? std::string::npos
                                                    : comma - pos);
    const std::size_t eq = item.find('=');
    if (eq == std::string::npos)
      throw UsageError("expected key=value in " + kind + " model, got '" +
                       item + "'");
    const std::string key = item.substr(0, eq);
    if (!keys.count(key))
      throw UsageError("unknown parameter '" + key + "' for " + kind);
    if (out.count(key)) throw UsageError("repeated parameter '" + key + "'");
    out[key] = parse_real(key, item.substr(eq + 1));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  for (const auto& k : keys)
    if (!out.count(k))
      throw UsageError("missing parameter '" + k + "' for " + kind);
  return out;
}

// Model constructors report bad values as DomainError; on the command line
// that is a usage problem.
template <class F>
PotentialModel build(F&& f) {
  try {
    return f();
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

}  // namespace

PotentialModel parse_model(const std::string& text) {
  if (text == "free") return PotentialModel::free();
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos)
    throw UsageError("unknown model '" + text +
                     "' (expected exp:, expshift:, rect: or free)");
  const std::string kind = text.substr(0, colon);
  const std::string body = text.substr(colon + 1);
  if (kind == "exp") {
    const auto f = parse_fields(body, {"v0", "a"}, kind);
    return build([&] { return PotentialModel::exponential(f.at("v0"), f.at("a")); });
  }
  if (kind == "expshift") {
    const auto f = parse_fields(body, {"v0", "a", "b"}, kind);
    return build([&] {
      return PotentialModel::shifted_exponential(f.at("v0"), f.at("a"),
                                                 f.at("b"));
    });
  }
  if (kind == "rect") {
    const auto f = parse_fields(body, {"v0", "w"}, kind);
    return build([&] {
      return PotentialModel::rectangular(f.at("v0"), f.at("w") / 2.0);
    });
  }
  throw UsageError("unknown model kind '" + kind + "'");
}

PotentialModel override_params(const PotentialModel& model,
                               std::optional<double> v0,
                               std::optional<double> a) {
  using namespace potentials;
  return build([&]() -> PotentialModel {
    if (const auto* e = std::get_if<Exponential>(&model.params()))
      return PotentialModel::exponential(v0.value_or(e->v0), a.value_or(e->a));
    if (const auto* s = std::get_if<ShiftedExponential>(&model.params()))
      return PotentialModel::shifted_exponential(v0.value_or(s->v0),
                                                 a.value_or(s->a), s->b);
    if (a) throw UsageError("--a applies to exponential models only");
    if (const auto* r = std::get_if<Rectangular>(&model.params()))
      return PotentialModel::rectangular(v0.value_or(r->v0), r->half_width);
    if (v0) throw UsageError("--v0 does not apply to the free model");
    return model;
  });
}

bool has_closed_form(const PotentialModel& model) {
  return model.kind() == potentials::Kind::exponential ||
         model.kind() == potentials::Kind::shifted_exponential;
}

}  // namespace expscatter::cli
