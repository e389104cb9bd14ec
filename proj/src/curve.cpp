#include "mulgeo/curve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mulgeo/error.hpp"
#include "vec_series.hpp"

namespace mulgeo {
namespace {

constexpr double kArcLengthTol = 1e-13;

class ExprSource final : public CurveSource {
 public:
  explicit ExprSource(std::array<ExprAst, 3> components) : components_(std::move(components)) {}

  std::array<double, 3> log_point(double u) const override {
    std::array<double, 3> out;
    const double t = std::exp(u);
    for (std::size_t i = 0; i < 3; ++i) {
      const double v = evaluate(components_[i], t);
      if (!(v > 0.0)) {
        throw Error(ErrorKind::EvalDomainError,
                    "curve component " + std::to_string(i + 1) + " is not positive at s = " + std::to_string(t));
      }
      out[i] = std::log(v);
    }
    return out;
  }

  std::array<Series, 3> log_series(double u, int order) const override {
    std::array<Series, 3> out;
    for (std::size_t i = 0; i < 3; ++i) out[i] = evaluate_jet(components_[i], u, order).coeffs;
    return out;
  }

  const std::array<ExprAst, 3>& components() const noexcept { return components_; }

 private:
  std::array<ExprAst, 3> components_;
};

void check_domain(const Domain& d) {
  if (!(d.lo.value() < d.hi.value())) {
    throw Error(ErrorKind::InvalidArgument, "curve domain must satisfy 0 < lo < hi");
  }
}

// Log speed |X'(u)| in the curve's own parameter.
double log_speed_at(const MulCurve& curve, double u, Backend backend) {
  const auto x = curve.log_series(u, 1, backend);
  return std::sqrt(x[0][1] * x[0][1] + x[1][1] * x[1][1] + x[2][1] * x[2][1]);
}

struct ArcPosition {
  std::array<Series, 3> position;  // series in arc length about the point
  double log_speed = 0.0;
};

ArcPosition arc_position(const MulCurve& curve, MulScalar s, const AnalysisOptions& options) {
  if (!curve.contains(s)) {
    throw Error(ErrorKind::EvalDomainError,
                "parameter " + std::to_string(s.value()) + " lies outside the domain of " + curve.label());
  }
  const double u = s.log();
  ArcPosition out;
  const auto x = curve.log_series(u, kDefaultJetOrder, options.backend);
  const Vec3Series xp = derivative(x);
  const Series speed_series = sqrt(dot(xp, xp));
  out.log_speed = speed_series[0];
  if (out.log_speed < kRegularTol) {
    throw Error(ErrorKind::NotRegular, curve.label() + ": speed vanishes at s = " + std::to_string(s.value()));
  }
  const bool general = curve.parametrization() == Parametrization::General || options.reparametrize;
  if (!general) {
    if (std::abs(out.log_speed - 1.0) > options.tolerance()) {
      throw Error(ErrorKind::NotUnitSpeed,
                  curve.label() + ": log speed " + std::to_string(out.log_speed) +
                      " differs from 1 at s = " + std::to_string(s.value()) +
                      " (enable reparametrization for non-unit-speed curves)");
    }
    out.position = x;
    return out;
  }
  out.position = to_arc_length(x);
  return out;
}

// Unit-speed reparametrization backed by a cumulative arc-length table and
// safeguarded Newton inversion.
class ReparamSource final : public CurveSource {
 public:
  ReparamSource(MulCurve base, Backend backend) : base_(std::move(base)), backend_(backend) {
    const double lo = base_.domain().lo.log();
    const double hi = base_.domain().hi.log();
    const double origin = arc_length_origin(base_);
    constexpr int kNodes = 256;
    nodes_u_.resize(kNodes + 1);
    nodes_sigma_.resize(kNodes + 1);
    for (int i = 0; i <= kNodes; ++i) nodes_u_[i] = lo + (hi - lo) * i / kNodes;
    nodes_sigma_[0] = 0.0;
    for (int i = 1; i <= kNodes; ++i) nodes_sigma_[i] = nodes_sigma_[i - 1] + segment(nodes_u_[i - 1], nodes_u_[i]);
    // Shift so that sigma(origin) = 0.
    const double shift = sigma_of(origin);
    for (double& v : nodes_sigma_) v -= shift;
  }

  std::array<double, 3> log_point(double sigma) const override { return base_.log_point(invert(sigma)); }

  std::array<Series, 3> log_series(double sigma, int order) const override {
    const auto x = base_.log_series(invert(sigma), order, backend_);
    return to_arc_length(x);
  }

  double sigma_lo() const { return nodes_sigma_.front(); }
  double sigma_hi() const { return nodes_sigma_.back(); }

 private:
  double segment(double a, double b) const {
    return adaptive_simpson([this](double u) { return log_speed_at(base_, u, backend_); }, a, b, kArcLengthTol);
  }

  std::size_t node_index(double u) const {
    auto it = std::upper_bound(nodes_u_.begin(), nodes_u_.end(), u);
    std::size_t i = it == nodes_u_.begin() ? 0 : static_cast<std::size_t>(it - nodes_u_.begin()) - 1;
    return std::min(i, nodes_u_.size() - 2);
  }

  double sigma_of(double u) const {
    const std::size_t i = node_index(u);
    return nodes_sigma_[i] + segment(nodes_u_[i], u);
  }

  double invert(double sigma) const {
    if (sigma < nodes_sigma_.front() - 1e-12 || sigma > nodes_sigma_.back() + 1e-12) {
      throw Error(ErrorKind::EvalDomainError, "arc-length parameter outside the reparametrized domain");
    }
    auto it = std::upper_bound(nodes_sigma_.begin(), nodes_sigma_.end(), sigma);
    std::size_t i = it == nodes_sigma_.begin() ? 0 : static_cast<std::size_t>(it - nodes_sigma_.begin()) - 1;
    i = std::min(i, nodes_sigma_.size() - 2);
    double a = nodes_u_[i];
    double b = nodes_u_[i + 1];
    const double base_sigma = nodes_sigma_[i];
    double u = a + (b - a) * (sigma - base_sigma) / (nodes_sigma_[i + 1] - base_sigma);
    for (int iter = 0; iter < 60; ++iter) {
      const double f = base_sigma + segment(nodes_u_[i], u) - sigma;
      if (std::abs(f) <= 1e-13) break;
      if (f > 0.0) b = u; else a = u;
      double next = u - f / log_speed_at(base_, u, backend_);
      if (!(next > a && next < b)) next = 0.5 * (a + b);
      if (std::abs(next - u) <= 1e-15) {
        u = next;
        break;
      }
      u = next;
    }
    return u;
  }

  MulCurve base_;
  Backend backend_;
  std::vector<double> nodes_u_;
  std::vector<double> nodes_sigma_;
};

}  // namespace

double default_tolerance(Backend backend) noexcept {
  return backend == Backend::Jet ? 1e-8 : 1e-4;
}

MulCurve::MulCurve(std::array<ExprAst, 3> components, Domain domain, std::string label,
                   Parametrization parametrization)
    : MulCurve(std::make_shared<ExprSource>(std::move(components)), domain, std::move(label), parametrization) {}

MulCurve::MulCurve(std::shared_ptr<const CurveSource> source, Domain domain, std::string label,
                   Parametrization parametrization)
    : source_(std::move(source)), domain_(domain), label_(std::move(label)), parametrization_(parametrization) {
  if (!source_) throw Error(ErrorKind::InvalidArgument, "curve source is null");
  check_domain(domain_);
}

MulCurve MulCurve::from_strings(std::string_view x, std::string_view y, std::string_view z, Domain domain,
                                std::string label, Parametrization parametrization) {
  return MulCurve({parse(x), parse(y), parse(z)}, domain, std::move(label), parametrization);
}

MulVector3 MulCurve::at(MulScalar s) const { return MulVector3::from_log(log_point(s.log())); }

std::array<Series, 3> MulCurve::log_series(double u, int order, Backend backend) const {
  if (backend == Backend::Jet) return source_->log_series(u, order);
  std::array<std::array<double, 7>, 3> samples{};
  for (int k = -3; k <= 3; ++k) {
    if (k != 0 && order == 0) continue;
    const auto p = source_->log_point(u + k * kFdJetStep);
    for (std::size_t i = 0; i < 3; ++i) samples[i][static_cast<std::size_t>(k + 3)] = p[i];
  }
  std::array<Series, 3> out;
  for (std::size_t i = 0; i < 3; ++i) out[i] = finite_difference_series(samples[i], std::min(order, 4), kFdJetStep);
  return out;
}

const std::array<ExprAst, 3>* MulCurve::components() const noexcept {
  const auto* expr = dynamic_cast<const ExprSource*>(source_.get());
  return expr ? &expr->components() : nullptr;
}

MulCurve MulCurve::with_domain(Domain domain) const {
  return MulCurve(source_, domain, label_, parametrization_);
}

MulCurve MulCurve::with_parametrization(Parametrization p) const {
  return MulCurve(source_, domain_, label_, p);
}

bool MulCurve::contains(MulScalar s) const noexcept {
  return s.value() >= domain_.lo.value() && s.value() <= domain_.hi.value();
}

MulScalar speed(const MulCurve& curve, MulScalar s, Backend backend) {
  const auto x = curve.log_series(s.log(), 1, backend);
  MulVector3 derivative;
  for (std::size_t i = 0; i < 3; ++i) derivative[i] = MulScalar::from_log(x[i][1]);
  return norm(derivative);
}

std::vector<double> sample_log_parameters(const Domain& domain, int samples, double trim) {
  if (samples < 2) throw Error(ErrorKind::InvalidArgument, "at least two samples are required");
  if (trim < 0.0 || trim >= 0.5) throw Error(ErrorKind::InvalidArgument, "trim must lie in [0, 0.5)");
  const double lo = domain.lo.log();
  const double hi = domain.hi.log();
  const double a = lo + (hi - lo) * trim;
  const double b = hi - (hi - lo) * trim;
  std::vector<double> out(static_cast<std::size_t>(samples));
  for (int j = 0; j < samples; ++j) out[static_cast<std::size_t>(j)] = a + (b - a) * j / (samples - 1);
  return out;
}

bool is_unit_speed(const MulCurve& curve, double tol, const AnalysisOptions& options) {
  for (double u : sample_log_parameters(curve.domain(), options.samples, options.trim)) {
    if (std::abs(speed(curve, MulScalar::from_log(u), options.backend).log() - 1.0) > tol) return false;
  }
  return true;
}

MulScalar arc_length(const MulCurve& curve, MulScalar s0, MulScalar s1, const AnalysisOptions& options) {
  if (s0.value() > s1.value()) throw Error(ErrorKind::InvalidArgument, "arc length needs s0 <= s1");
  if (!curve.contains(s0) || !curve.contains(s1)) {
    throw Error(ErrorKind::EvalDomainError, "arc-length endpoints lie outside the curve domain");
  }
  const double length = adaptive_simpson(
      [&](double u) {
        const double v = log_speed_at(curve, u, options.backend);
        if (v < kRegularTol) {
          throw Error(ErrorKind::NotRegular, curve.label() + ": speed vanishes at s = " + std::to_string(std::exp(u)));
        }
        return v;
      },
      s0.log(), s1.log(), kArcLengthTol);
  return MulScalar::from_log(length);
}

double arc_length_origin(const MulCurve& curve) noexcept {
  const double lo = curve.domain().lo.log();
  const double hi = curve.domain().hi.log();
  return (lo < 0.0 && hi > 0.0) ? 0.0 : lo;
}

MulCurve reparametrize_unit_speed(const MulCurve& curve, const AnalysisOptions& options) {
  auto source = std::make_shared<ReparamSource>(curve, options.backend);
  const Domain domain{MulScalar::from_log(source->sigma_lo()), MulScalar::from_log(source->sigma_hi())};
  return MulCurve(std::move(source), domain, curve.label() + " (arc length)", Parametrization::ArcLength);
}

FrameJets frame_jets(const MulCurve& curve, MulScalar s, const AnalysisOptions& options) {
  const ArcPosition arc = arc_position(curve, s, options);
  FrameJets out;
  out.u = s.log();
  out.log_speed = arc.log_speed;
  out.position = arc.position;
  out.tangent = derivative(arc.position);
  const Vec3Series accel = derivative(out.tangent);
  const Series accel_sq = dot(accel, accel);
  // Checked before the square root, whose jet is singular at zero.
  if (!(std::sqrt(std::max(accel_sq[0], 0.0)) > kBiregularTol)) {
    throw Error(ErrorKind::NotBiregular,
                curve.label() + ": curvature is the multiplicative zero at s = " + std::to_string(s.value()));
  }
  out.curvature = sqrt(accel_sq);
  for (std::size_t i = 0; i < 3; ++i) out.normal[i] = accel[i] / out.curvature;
  out.binormal = cross(out.tangent, out.normal);
  out.torsion = dot(derivative(out.normal), out.binormal);
  return out;
}

double log_curvature(const MulCurve& curve, MulScalar s, const AnalysisOptions& options) {
  const ArcPosition arc = arc_position(curve, s, options);
  const Vec3Series accel = derivative(derivative(arc.position));
  return std::sqrt(accel[0][0] * accel[0][0] + accel[1][0] * accel[1][0] + accel[2][0] * accel[2][0]);
}

FrenetData frenet(const MulCurve& curve, MulScalar s, const AnalysisOptions& options) {
  const FrameJets jets = frame_jets(curve, s, options);
  std::array<double, 3> first{}, second{}, normal_rate{};
  for (std::size_t i = 0; i < 3; ++i) {
    first[i] = jets.position[i].derivative_at(1);
    second[i] = jets.position[i].derivative_at(2);
    normal_rate[i] = jets.normal[i].derivative_at(1);
  }
  FrenetData out;
  out.s = s;
  out.t = MulVector3::from_log(first);
  const MulVector3 x2 = MulVector3::from_log(second);
  out.kappa = norm(x2);
  out.n = scalar_div(x2, out.kappa);
  out.b = cross(out.t, out.n);
  out.tau = inner(MulVector3::from_log(normal_rate), out.b);
  out.speed = MulScalar::from_log(jets.log_speed);
  return out;
}

Decomposition decompose(const MulVector3& x, const FrenetData& frame) {
  Decomposition out;
  out.s = frame.s;
  out.lambda = inner(x, frame.t);
  out.nu = inner(x, frame.n);
  out.mu = inner(x, frame.b);
  out.rho = norm(x);
  out.perp_norm = sqrt(add(square(out.nu), square(out.mu)));
  return out;
}

Decomposition decompose(const MulCurve& curve, MulScalar s, const AnalysisOptions& options) {
  return decompose(curve.at(s), frenet(curve, s, options));
}

}  // namespace mulgeo
