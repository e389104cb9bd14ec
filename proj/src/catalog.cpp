#include "mulgeo/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "mulgeo/error.hpp"

namespace mulgeo {
namespace {

constexpr double kPi = std::numbers::pi;

Domain log_domain(double lo, double hi) { return {MulScalar::from_log(lo), MulScalar::from_log(hi)}; }

// u -> log a · sec(u) · Y(u) over the log coordinates Y of a spherical curve.
class ScaledSource final : public CurveSource {
 public:
  ScaledSource(double log_a, MulCurve y, Backend backend) : log_a_(log_a), y_(std::move(y)), backend_(backend) {}

  std::array<double, 3> log_point(double u) const override {
    const auto p = y_.log_point(u);
    const double scale = log_a_ / std::cos(u);
    return {scale * p[0], scale * p[1], scale * p[2]};
  }

  std::array<Series, 3> log_series(double u, int order) const override {
    const auto y = y_.log_series(u, order, backend_);
    const Series scale = log_a_ * sec(Series::variable(order, u));
    return {scale * y[0], scale * y[1], scale * y[2]};
  }

 private:
  double log_a_;
  MulCurve y_;
  Backend backend_;
};

}  // namespace

std::vector<std::string> catalog_names() { return {"mul_circle", "equator", "chen_rectifying", "spherical_y"}; }

MulCurve catalog(std::string_view name) {
  const Domain full = log_domain(-kPi, kPi);
  if (name == "mul_circle" || name == "equator") {
    return MulCurve::from_strings("exp(cos(log(t)))", "exp(sin(log(t)))", "1", full, std::string(name));
  }
  if (name == "spherical_y") {
    return MulCurve::from_strings("exp(1/sqrt(2))", "exp(cos(log(t^sqrt(2)))/sqrt(2))",
                                  "exp(sin(log(t^sqrt(2)))/sqrt(2))", full, "spherical_y");
  }
  if (name == "chen_rectifying") {
    return MulCurve::from_strings("exp(sec(log(t))/sqrt(2))", "exp(sec(log(t))*cos(log(t^sqrt(2)))/sqrt(2))",
                                  "exp(sec(log(t))*sin(log(t^sqrt(2)))/sqrt(2))",
                                  log_domain(-kPi / 2 + kSecMargin, kPi / 2 - kSecMargin), "chen_rectifying",
                                  Parametrization::General);
  }
  throw Error(ErrorKind::UnknownCurve, "unknown catalog curve '" + std::string(name) + "'");
}

MulCurve construct_rectifying(MulScalar a, const MulCurve& y, const AnalysisOptions& options) {
  if (!(a.log() > 0.0)) throw Error(ErrorKind::InvalidArgument, "the scale a must exceed 1 (a > 0*)");
  const double tol = options.tolerance();
  if (y.parametrization() != Parametrization::ArcLength || !is_unit_speed(y, tol, options)) {
    throw Error(ErrorKind::NotUnitSpeed, y.label() + " is not parametrized by multiplicative arc length");
  }
  const MulSphere unit(MulVector3{}, MulScalar::one());
  for (double u : sample_log_parameters(y.domain(), options.samples, options.trim)) {
    if (!sphere_contains(unit, y.at(MulScalar::from_log(u)), tol)) {
      throw Error(ErrorKind::NotSpherical, y.label() + " leaves the unit multiplicative sphere at s = " +
                                               std::to_string(std::exp(u)));
    }
  }
  const double lo = std::max(y.domain().lo.log(), -kPi / 2 + kSecMargin);
  const double hi = std::min(y.domain().hi.log(), kPi / 2 - kSecMargin);
  if (!(lo < hi)) {
    throw Error(ErrorKind::InvalidArgument, "the domain of " + y.label() + " misses (e^{-pi/2}, e^{pi/2})");
  }
  char label[64];
  std::snprintf(label, sizeof label, "rectifying(a=e^%.6g)", a.log());
  return MulCurve(std::make_shared<ScaledSource>(a.log(), y, options.backend), log_domain(lo, hi),
                  std::string(label) + " over " + y.label(), Parametrization::General);
}

}  // namespace mulgeo
