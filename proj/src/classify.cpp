#include "mulgeo/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "mulgeo/error.hpp"

namespace mulgeo {
namespace {

constexpr double kArcLengthTol = 1e-13;

bool uses_arc_length_parameter(const MulCurve& curve, const AnalysisOptions& options) {
  return curve.parametrization() == Parametrization::ArcLength && !options.reparametrize;
}

struct FrameSample {
  double u = 0.0;
  double sigma = 0.0;
  FrameJets jets;
  std::array<double, 3> p{};  // log position
};

std::vector<FrameSample> collect_frames(const MulCurve& curve, const AnalysisOptions& options) {
  const auto us = sample_log_parameters(curve.domain(), options.samples, options.trim);
  const auto sigmas = arc_length_coordinates(curve, us, options);
  std::vector<FrameSample> out(us.size());
  for (std::size_t j = 0; j < us.size(); ++j) {
    out[j].u = us[j];
    out[j].sigma = sigmas[j];
    out[j].jets = frame_jets(curve, MulScalar::from_log(us[j]), options);
    for (std::size_t i = 0; i < 3; ++i) out[j].p[i] = out[j].jets.position[i][0];
  }
  return out;
}

double dot0(const std::array<double, 3>& a, const std::array<Series, 3>& b) {
  return a[0] * b[0][0] + a[1] * b[1][0] + a[2] * b[2][0];
}

double norm3(const std::array<double, 3>& a) { return std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]); }

struct AffineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
};

// Least-squares y = slope x + intercept.
AffineFit fit_affine(const std::vector<double>& x, const std::vector<double>& y, const char* what) {
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    design(j, 0) = x[static_cast<std::size_t>(j)];
    design(j, 1) = 1.0;
    rhs(j) = y[static_cast<std::size_t>(j)];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-12);
  if (qr.rank() < 2) {
    throw Error(ErrorKind::DegenerateFit, std::string("rank-deficient design matrix in the ") + what + " fit");
  }
  const Eigen::VectorXd coef = qr.solve(rhs);
  AffineFit out;
  out.slope = coef(0);
  out.intercept = coef(1);
  out.residual = (design * coef - rhs).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace

std::vector<double> arc_length_coordinates(const MulCurve& curve, const std::vector<double>& us,
                                           const AnalysisOptions& options) {
  if (uses_arc_length_parameter(curve, options)) return us;
  auto speed_at = [&](double u) {
    const auto x = curve.log_series(u, 1, options.backend);
    const double v = std::sqrt(x[0][1] * x[0][1] + x[1][1] * x[1][1] + x[2][1] * x[2][1]);
    if (v < kRegularTol) {
      throw Error(ErrorKind::NotRegular, curve.label() + ": speed vanishes at s = " + std::to_string(std::exp(u)));
    }
    return v;
  };
  const double origin = arc_length_origin(curve);
  std::vector<double> out(us.size());
  double prev_u = origin;
  double acc = 0.0;
  for (std::size_t j = 0; j < us.size(); ++j) {
    const double u = us[j];
    if (j == 0 || u < prev_u) {
      acc = u >= origin ? adaptive_simpson(speed_at, origin, u, kArcLengthTol)
                        : -adaptive_simpson(speed_at, u, origin, kArcLengthTol);
    } else {
      acc += adaptive_simpson(speed_at, prev_u, u, kArcLengthTol);
    }
    out[j] = acc;
    prev_u = u;
  }
  return out;
}

LineTest line_test(const MulCurve& curve, const AnalysisOptions& options) {
  LineTest out;
  for (double u : sample_log_parameters(curve.domain(), options.samples, options.trim)) {
    out.residual = std::max(out.residual, std::abs(log_curvature(curve, MulScalar::from_log(u), options)));
  }
  out.verdict = out.residual <= options.tolerance();
  return out;
}

PlanarTest planar_test(const MulCurve& curve, const AnalysisOptions& options) {
  PlanarTest out;
  try {
    for (double u : sample_log_parameters(curve.domain(), options.samples, options.trim)) {
      const FrameJets jets = frame_jets(curve, MulScalar::from_log(u), options);
      out.residual = std::max(out.residual, std::abs(jets.torsion[0]));
    }
    out.biregular = true;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotBiregular) throw;
    out.diagnostics.push_back(std::string("planar: ") + e.what());
    return out;
  }
  out.verdict = out.residual <= options.tolerance();
  return out;
}

bool classify_line(const MulCurve& curve, const AnalysisOptions& options) {
  return line_test(curve, options).verdict;
}

bool classify_planar(const MulCurve& curve, const AnalysisOptions& options) {
  return planar_test(curve, options).verdict;
}

SphericalReport classify_spherical(const MulCurve& curve, const AnalysisOptions& options) {
  const double tol = options.tolerance();
  const auto frames = collect_frames(curve, options);
  SphericalReport out;
  out.samples_used = static_cast<int>(frames.size());

  std::array<double, 3> center{};
  double radius = 0.0;
  double rho_min = std::numeric_limits<double>::infinity();
  double rho_max = -rho_min;
  for (const auto& f : frames) {
    const double rho = norm3(f.p);
    rho_min = std::min(rho_min, rho);
    rho_max = std::max(rho_max, rho);
  }
  if (rho_max - rho_min <= tol) {
    radius = 0.5 * (rho_min + rho_max);
  } else {
    // |Q|² = 2 c·Q + k with Q = P − centroid; minimum-norm c for planar data.
    std::array<double, 3> centroid{};
    for (const auto& f : frames)
      for (std::size_t i = 0; i < 3; ++i) centroid[i] += f.p[i] / static_cast<double>(frames.size());
    const auto n = static_cast<Eigen::Index>(frames.size());
    Eigen::MatrixXd design(n, 4);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& p = frames[static_cast<std::size_t>(j)].p;
      double q2 = 0.0;
      for (Eigen::Index i = 0; i < 3; ++i) {
        const double q = p[static_cast<std::size_t>(i)] - centroid[static_cast<std::size_t>(i)];
        design(j, i) = 2.0 * q;
        q2 += q * q;
      }
      design(j, 3) = 1.0;
      rhs(j) = q2;
    }
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(design);
    cod.setThreshold(1e-10);
    const Eigen::VectorXd sol = cod.solve(rhs);
    double c2 = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      center[i] = centroid[i] + sol(static_cast<Eigen::Index>(i));
      c2 += sol(static_cast<Eigen::Index>(i)) * sol(static_cast<Eigen::Index>(i));
    }
    const double r2 = sol(3) + c2;
    if (!(r2 > 0.0)) {
      out.residual = std::numeric_limits<double>::infinity();
      out.diagnostics.push_back("spherical: fitted squared radius is not positive");
      return out;
    }
    radius = std::sqrt(r2);
  }
  for (const auto& f : frames) {
    const std::array<double, 3> q{f.p[0] - center[0], f.p[1] - center[1], f.p[2] - center[2]};
    out.residual = std::max(out.residual, std::abs(norm3(q) - radius));
  }
  out.center = MulVector3::from_log(center);
  out.radius = MulScalar::from_log(radius);
  out.spherical = out.residual <= tol && radius > tol;

  // Identity cross-checks: x −* C = f·*n +* (f*/*τ)·*b with f = e^{-1}/*κ,
  // reducing to x −* C = f·*n when τ = 0*.
  double radius_sum = 0.0;
  out.twisted = true;
  for (const auto& fr : frames) {
    const double k = fr.jets.curvature[0];
    const double kp = fr.jets.curvature[1];
    const double tau = fr.jets.torsion[0];
    const double f = -1.0 / k;
    const double fp = kp / (k * k);
    const bool twisted = std::abs(tau) > tol;
    if (!twisted) {
      out.twisted = false;
      ++out.degenerate_samples;
    }
    const double g = twisted ? fp / tau : 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      const double predicted = f * fr.jets.normal[i][0] + g * fr.jets.binormal[i][0];
      out.position_residual = std::max(out.position_residual, std::abs(fr.p[i] - center[i] - predicted));
    }
    const double r_identity = std::sqrt(f * f + g * g);
    radius_sum += r_identity;
    out.radius_identity_residual = std::max(out.radius_identity_residual, std::abs(r_identity - radius));
  }
  out.identity_radius_log = radius_sum / static_cast<double>(frames.size());
  if (out.degenerate_samples > 0) {
    out.diagnostics.push_back("spherical: torsion vanishes at " + std::to_string(out.degenerate_samples) +
                              " samples; degenerate identity applied there");
  }
  return out;
}

ClassificationReport classify_rectifying(const MulCurve& curve, const AnalysisOptions& options) {
  const double tol = options.tolerance();
  const auto frames = collect_frames(curve, options);
  ClassificationReport report;
  report.tolerance = tol;
  report.samples_used = static_cast<int>(frames.size());
  report.rectifying_evaluated = true;

  const std::size_t n = frames.size();
  std::vector<double> sigma(n), lambda(n), nu(n), mu(n), rho(n), perp(n), ratio(n), quad(n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto& f = frames[j];
    sigma[j] = f.sigma;
    lambda[j] = dot0(f.p, f.jets.tangent);
    nu[j] = dot0(f.p, f.jets.normal);
    mu[j] = dot0(f.p, f.jets.binormal);
    rho[j] = norm3(f.p);
    perp[j] = std::sqrt(nu[j] * nu[j] + mu[j] * mu[j]);
    ratio[j] = f.jets.torsion[0] / f.jets.curvature[0];
    quad[j] = rho[j] * rho[j] - sigma[j] * sigma[j];
    report.rectifying_residual = std::max(report.rectifying_residual, std::abs(nu[j]));
  }
  report.rectifying = report.rectifying_residual <= tol;

  auto mean = [](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
  };
  auto max_dev = [](const std::vector<double>& v, double centre) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x - centre));
    return m;
  };

  RectifyingFits& fits = report.fits;

  std::vector<double> shifted(n);
  for (std::size_t j = 0; j < n; ++j) shifted[j] = lambda[j] - sigma[j];
  fits.a_log = mean(shifted);
  fits.tangential_residual = max_dev(shifted, fits.a_log);
  fits.b_log = mean(mu);
  fits.binormal_residual = max_dev(mu, fits.b_log);
  fits.tangential_pass =
      fits.tangential_residual <= tol && fits.binormal_residual <= tol && std::abs(fits.b_log) > tol;

  const AffineFit ratio_fit = fit_affine(sigma, ratio, "curvature-ratio");
  fits.c = ratio_fit.slope;
  fits.d_log = ratio_fit.intercept;
  fits.ratio_residual = ratio_fit.residual;
  fits.ratio_degenerate = std::abs(fits.c) <= kRatioSlopeFloor;
  fits.ratio_pass = !fits.ratio_degenerate && fits.ratio_residual <= tol;
  if (fits.ratio_degenerate) {
    report.diagnostics.push_back("rectifying: curvature ratio slope is indistinguishable from zero "
                                 "(helix-like); no verdict from the ratio law");
  }

  const AffineFit quad_fit = fit_affine(sigma, quad, "distance");
  fits.quad_c = quad_fit.slope;
  fits.quad_d = quad_fit.intercept;
  fits.shift = 0.5 * fits.quad_c;
  fits.offset = fits.quad_d - 0.25 * fits.quad_c * fits.quad_c;
  double scale = 1.0;
  for (double r : rho) scale = std::max(scale, r * r);
  fits.distance_residual = quad_fit.residual / scale;
  fits.distance_pass = fits.distance_residual <= tol && fits.offset > tol;

  const auto [rho_lo, rho_hi] = std::minmax_element(rho.begin(), rho.end());
  fits.rho_range_log = *rho_hi - *rho_lo;
  fits.perp_norm_log = mean(perp);
  fits.perp_residual = max_dev(perp, fits.perp_norm_log);
  fits.perp_pass = fits.rho_range_log > kNonconstantTol && fits.perp_residual <= tol;
  return report;
}

ClassificationReport classify(const MulCurve& curve, const AnalysisOptions& options) {
  const LineTest line = line_test(curve, options);
  ClassificationReport report;
  if (line.verdict) {
    report.tolerance = options.tolerance();
    report.samples_used = options.samples;
    report.diagnostics.push_back("curve is a multiplicative line; the principal normal is undefined");
  } else {
    try {
      report = classify_rectifying(curve, options);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotBiregular && e.kind() != ErrorKind::DegenerateFit) throw;
      report.tolerance = options.tolerance();
      report.samples_used = options.samples;
      report.diagnostics.push_back(std::string("rectifying: ") + e.what());
    }
    try {
      report.sphere = classify_spherical(curve, options);
      report.spherical_evaluated = true;
      report.spherical = report.sphere.spherical;
      report.spherical_residual = report.sphere.residual;
      for (const auto& d : report.sphere.diagnostics) report.diagnostics.push_back(d);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NotBiregular) throw;
      report.diagnostics.push_back(std::string("spherical: ") + e.what());
    }
  }
  report.line = line.verdict;
  report.line_residual = line.residual;
  if (!line.verdict) {
    const PlanarTest planar = planar_test(curve, options);
    report.planar = planar.verdict;
    report.planar_residual = planar.residual;
    for (const auto& d : planar.diagnostics) report.diagnostics.push_back(d);
  }
  return report;
}

}  // namespace mulgeo
