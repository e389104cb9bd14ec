#pragma once

// Sampled classification of multiplicative curves: lines, planar curves,
// spherical curves and rectifying curves. Every fit is carried out in log
// coordinates, where each characterization is affine or quadratic.

#include <string>
#include <vector>

#include "mulgeo/curve.hpp"

namespace mulgeo {

/// Log-slope magnitude below which the curvature-ratio law is reported as
/// degenerate (helix-like) rather than judged.
inline constexpr double kRatioSlopeFloor = 1e-6;

struct LineTest {
  bool verdict = false;
  double residual = 0.0;  // max |log κ|
};

struct PlanarTest {
  bool verdict = false;
  bool biregular = false;
  double residual = 0.0;  // max |log τ|
  std::vector<std::string> diagnostics;
};

struct SphericalReport {
  bool spherical = false;
  MulVector3 center;
  MulScalar radius;
  /// max | ‖x −* C‖* − r | in the log metric.
  double residual = 0.0;
  /// True when every sample has τ ≠ 0*; the twisted position formula is used
  /// there and the degenerate one elsewhere.
  bool twisted = false;
  int degenerate_samples = 0;
  /// Samplewise position-formula residual, max over components.
  double position_residual = 0.0;
  /// max | r_identity − log r | for the radius identity.
  double radius_identity_residual = 0.0;
  /// Mean log radius predicted by the identity.
  double identity_radius_log = 0.0;
  int samples_used = 0;
  std::vector<std::string> diagnostics;
};

struct RectifyingFits {
  // Tangential law: log λ = σ + a_log, with μ ≡ b_log ≠ 0.
  double a_log = 0.0;
  double b_log = 0.0;
  double tangential_residual = 0.0;
  double binormal_residual = 0.0;
  bool tangential_pass = false;

  // Curvature-ratio law: log τ / log κ = c σ + d_log.
  double c = 0.0;
  double d_log = 0.0;
  double ratio_residual = 0.0;
  bool ratio_degenerate = false;
  bool ratio_pass = false;

  // Distance law: (log ρ)² = σ² + c σ + d, reported as the completed square
  // (σ + shift)² + offset.
  double quad_c = 0.0;
  double quad_d = 0.0;
  double shift = 0.0;
  double offset = 0.0;
  double distance_residual = 0.0;
  bool distance_pass = false;

  // ρ nonconstant and ‖x^⊥*‖* constant.
  double rho_range_log = 0.0;
  double perp_norm_log = 0.0;
  double perp_residual = 0.0;
  bool perp_pass = false;
};

struct ClassificationReport {
  bool line = false;
  bool planar = false;
  bool spherical = false;
  bool rectifying = false;

  double line_residual = 0.0;
  double planar_residual = 0.0;
  double spherical_residual = 0.0;
  /// max |log ⟨x, n⟩*|.
  double rectifying_residual = 0.0;

  SphericalReport sphere;
  RectifyingFits fits;
  bool rectifying_evaluated = false;
  bool spherical_evaluated = false;

  int samples_used = 0;
  double tolerance = 0.0;
  std::vector<std::string> diagnostics;
};

/// Log arc length σ at each log parameter, measured from arc_length_origin
/// (σ = u for curves parametrized by arc length).
std::vector<double> arc_length_coordinates(const MulCurve& curve, const std::vector<double>& us,
                                           const AnalysisOptions& options);

LineTest line_test(const MulCurve& curve, const AnalysisOptions& options = {});
PlanarTest planar_test(const MulCurve& curve, const AnalysisOptions& options = {});

/// max |log κ| <= tol.
bool classify_line(const MulCurve& curve, const AnalysisOptions& options = {});
/// Biregular everywhere and max |log τ| <= tol.
bool classify_planar(const MulCurve& curve, const AnalysisOptions& options = {});

/// Sphere fit: the origin-centred sphere when ‖x‖* is constant, otherwise a
/// least-squares sphere in log coordinates (minimum-norm centre for planar
/// data). Throws NotBiregular from the identity cross-checks.
SphericalReport classify_spherical(const MulCurve& curve, const AnalysisOptions& options = {});

/// Verdict plus the four equivalent characterizations. Throws NotBiregular and
/// DegenerateFit.
ClassificationReport classify_rectifying(const MulCurve& curve, const AnalysisOptions& options = {});

/// All four verdicts. Failures of the biregular-only tests are reported as
/// false with a diagnostic rather than thrown.
ClassificationReport classify(const MulCurve& curve, const AnalysisOptions& options = {});

}  // namespace mulgeo
