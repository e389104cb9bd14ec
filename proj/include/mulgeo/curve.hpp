#pragma once

// Multiplicative space curves x : I ⊂ R* -> E*^3 and their Frenet apparatus.
//
// Every computation runs in log coordinates: with u = log s the curve becomes
// the classical curve X(u) = (log x_1(e^u), log x_2(e^u), log x_3(e^u)), and the
// n-th multiplicative derivative x^{*(n)} has log coordinates X^{(n)}(u).

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mulgeo/expr.hpp"
#include "mulgeo/mulcalc.hpp"
#include "mulgeo/mulcore.hpp"
#include "mulgeo/mulvec.hpp"
#include "mulgeo/series.hpp"

namespace mulgeo {

/// Parameter interval (lo, hi) with 0 < lo < hi.
struct Domain {
  MulScalar lo;
  MulScalar hi;
};

/// Whether the curve's own parameter is multiplicative arc length. Curves
/// declared General are analysed through a local arc-length reparametrization.
enum class Parametrization { ArcLength, General };

/// Supplies log coordinates of a curve and their Taylor series.
class CurveSource {
 public:
  virtual ~CurveSource() = default;
  /// (log x_1, log x_2, log x_3) at s = e^u.
  virtual std::array<double, 3> log_point(double u) const = 0;
  /// Taylor series of w -> log x_i(e^{u + w}).
  virtual std::array<Series, 3> log_series(double u, int order) const = 0;
};

inline constexpr double kBiregularTol = 1e-10;
inline constexpr double kRegularTol = 1e-12;
inline constexpr double kNonconstantTol = 1e-6;
/// Log-domain step of the finite-difference backend's fourth-order stencils.
inline constexpr double kFdJetStep = 1e-2;

/// 1e-8 for the jet backend, 1e-4 for finite differences.
double default_tolerance(Backend backend) noexcept;

struct AnalysisOptions {
  Backend backend = Backend::Jet;
  /// Zero-test tolerance in the log metric; the backend default when unset.
  std::optional<double> tol;
  /// Accept non-unit-speed input by reparametrizing it by arc length.
  bool reparametrize = false;
  int samples = 512;
  /// Fraction of the log-domain trimmed from each end before sampling.
  double trim = 0.02;

  double tolerance() const noexcept { return tol ? *tol : default_tolerance(backend); }
};

class MulCurve {
 public:
  /// Curve with expression components. Throws InvalidArgument for an empty domain.
  MulCurve(std::array<ExprAst, 3> components, Domain domain, std::string label,
           Parametrization parametrization = Parametrization::ArcLength);
  MulCurve(std::shared_ptr<const CurveSource> source, Domain domain, std::string label,
           Parametrization parametrization);

  /// Parses the three component expressions.
  static MulCurve from_strings(std::string_view x, std::string_view y, std::string_view z,
                               Domain domain, std::string label,
                               Parametrization parametrization = Parametrization::ArcLength);

  MulVector3 at(MulScalar s) const;
  std::array<double, 3> log_point(double u) const { return source_->log_point(u); }
  std::array<Series, 3> log_series(double u, int order, Backend backend) const;

  const Domain& domain() const noexcept { return domain_; }
  const std::string& label() const noexcept { return label_; }
  Parametrization parametrization() const noexcept { return parametrization_; }
  /// Component expressions, or nullptr for curves built from other sources.
  const std::array<ExprAst, 3>* components() const noexcept;
  const std::shared_ptr<const CurveSource>& source() const noexcept { return source_; }

  MulCurve with_domain(Domain domain) const;
  MulCurve with_parametrization(Parametrization p) const;
  bool contains(MulScalar s) const noexcept;

 private:
  std::shared_ptr<const CurveSource> source_;
  Domain domain_;
  std::string label_;
  Parametrization parametrization_;
};

/// ‖x*(s)‖*, the multiplicative speed in the curve's own parameter.
MulScalar speed(const MulCurve& curve, MulScalar s, Backend backend = Backend::Jet);

/// |log speed - 1| <= tol on the options' sample grid.
bool is_unit_speed(const MulCurve& curve, double tol, const AnalysisOptions& options = {});

/// Multiplicative arc length between s0 <= s1: the multiplicative integral of
/// the speed, i.e. e^{int |X'(u)| du}.
MulScalar arc_length(const MulCurve& curve, MulScalar s0, MulScalar s1,
                     const AnalysisOptions& options = {});

/// Log of the arc-length origin used for non-unit-speed curves: u = 0 (s = 0*)
/// when the domain contains it, the lower end otherwise.
double arc_length_origin(const MulCurve& curve) noexcept;

/// Unit-speed reparametrization. The new parameter is e^{sigma} where sigma
/// is arc length measured from arc_length_origin. Throws NotRegular when the
/// speed vanishes.
MulCurve reparametrize_unit_speed(const MulCurve& curve, const AnalysisOptions& options = {});

/// Frenet apparatus as Taylor series in arc length about one point, all in
/// log coordinates. Orders: position 4, tangent 3, normal/binormal/curvature 2,
/// torsion 1.
struct FrameJets {
  double u = 0.0;          // log of the curve parameter
  double log_speed = 0.0;  // log ‖x*‖* in the curve's own parameter
  std::array<Series, 3> position;
  std::array<Series, 3> tangent;
  std::array<Series, 3> normal;
  std::array<Series, 3> binormal;
  Series curvature;  // log κ
  Series torsion;    // log τ
};

/// Throws NotRegular, NotUnitSpeed (unit-speed curves only, unless
/// options.reparametrize), or NotBiregular when log κ <= 1e-10.
FrameJets frame_jets(const MulCurve& curve, MulScalar s, const AnalysisOptions& options = {});

/// log κ at s without requiring biregularity.
double log_curvature(const MulCurve& curve, MulScalar s, const AnalysisOptions& options = {});

struct FrenetData {
  MulScalar s;
  MulVector3 t;
  MulVector3 n;
  MulVector3 b;
  MulScalar kappa;
  MulScalar tau;
  MulScalar speed;
};

/// t = x*, κ = ‖x**‖*, n = x** /* κ, b = t ×* n, τ = <n*, b>*.
FrenetData frenet(const MulCurve& curve, MulScalar s, const AnalysisOptions& options = {});

struct Decomposition {
  MulScalar s;
  MulScalar lambda;     // <x, t>*
  MulScalar nu;         // <x, n>*
  MulScalar mu;         // <x, b>*
  MulScalar rho;        // ‖x‖*
  MulScalar perp_norm;  // ‖x^⊥*‖*
};

Decomposition decompose(const MulCurve& curve, MulScalar s, const AnalysisOptions& options = {});
Decomposition decompose(const MulVector3& x, const FrenetData& frame);

/// Log-uniform sample parameters over the domain with options.trim removed
/// from each end (log values).
std::vector<double> sample_log_parameters(const Domain& domain, int samples, double trim);

}  // namespace mulgeo
