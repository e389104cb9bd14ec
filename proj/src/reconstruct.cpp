#include "mulgeo/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mulgeo/error.hpp"

namespace mulgeo {
namespace {

using V3 = std::array<double, 3>;

struct State {
  V3 x, t, n, b;
};

V3 operator+(const V3& a, const V3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
V3 operator-(const V3& a, const V3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
V3 operator*(double k, const V3& a) { return {k * a[0], k * a[1], k * a[2]}; }
double dot(const V3& a, const V3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
V3 cross(const V3& a, const V3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
V3 normalized(const V3& a) { return (1.0 / std::sqrt(dot(a, a))) * a; }
double max_abs(const V3& a) { return std::max({std::abs(a[0]), std::abs(a[1]), std::abs(a[2])}); }

State operator+(const State& a, const State& b) { return {a.x + b.x, a.t + b.t, a.n + b.n, a.b + b.b}; }
State operator*(double k, const State& a) { return {k * a.x, k * a.t, k * a.n, k * a.b}; }

class Integrator {
 public:
  Integrator(const std::function<double(double)>& log_kappa, const std::function<double(double)>& log_tau)
      : log_kappa_(log_kappa), log_tau_(log_tau) {}

  State rate(double u, const State& s) const {
    const double k = kappa(u);
    const double tau = torsion(u);
    return {s.t, k * s.n, (-k) * s.t + tau * s.b, (-tau) * s.n};
  }

  // One RK4 step followed by Gram–Schmidt; returns the size of the correction.
  double step(double u, double h, State& s) const {
    const State k1 = rate(u, s);
    const State k2 = rate(u + 0.5 * h, s + (0.5 * h) * k1);
    const State k3 = rate(u + 0.5 * h, s + (0.5 * h) * k2);
    const State k4 = rate(u + h, s + h * k3);
    s = s + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const V3 t = normalized(s.t);
    const V3 n = normalized(s.n - dot(s.n, t) * t);
    const V3 b = cross(t, n);
    const double correction = std::max({max_abs(t - s.t), max_abs(n - s.n), max_abs(b - s.b)});
    s.t = t;
    s.n = n;
    s.b = b;
    return correction;
  }

 private:
  double kappa(double u) const {
    const double k = guarded(log_kappa_, u, "curvature");
    if (!(k > 0.0)) {
      throw Error(ErrorKind::StepDomainError,
                  "curvature must exceed 0* (log kappa > 0) at s = " + std::to_string(std::exp(u)));
    }
    return k;
  }
  double torsion(double u) const { return guarded(log_tau_, u, "torsion"); }

  static double guarded(const std::function<double(double)>& f, double u, const char* what) {
    double v;
    try {
      v = f(u);
    } catch (const Error& e) {
      throw Error(ErrorKind::StepDomainError,
                  std::string(what) + " failed at s = " + std::to_string(std::exp(u)) + ": " + e.what());
    }
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::StepDomainError,
                  std::string(what) + " is not finite at s = " + std::to_string(std::exp(u)));
    }
    return v;
  }

  const std::function<double(double)>& log_kappa_;
  const std::function<double(double)>& log_tau_;
};

ReconstructionSample to_sample(double u, const State& s) {
  return {MulScalar::from_log(u), MulVector3::from_log(s.x),
          {MulVector3::from_log(s.t), MulVector3::from_log(s.n), MulVector3::from_log(s.b)}};
}

}  // namespace

Frame complete_frame(const MulVector3& t, const MulVector3& n) { return {t, n, cross(t, n)}; }

void validate_frame(const Frame& frame, double tol) {
  const V3 t = frame.t.log_coords();
  const V3 n = frame.n.log_coords();
  const V3 b = frame.b.log_coords();
  const double err = std::max({std::abs(dot(t, t) - 1.0), std::abs(dot(n, n) - 1.0), std::abs(dot(b, b) - 1.0),
                               std::abs(dot(t, n)), std::abs(dot(t, b)), std::abs(dot(n, b)),
                               max_abs(cross(t, n) - b)});
  if (err > tol) {
    throw Error(ErrorKind::InvalidArgument, "initial frame is not a right-handed multiplicative-orthonormal frame");
  }
}

Reconstruction reconstruct_from_curvatures(const std::function<double(double)>& log_kappa,
                                           const std::function<double(double)>& log_tau,
                                           const MulVector3& x0, const Frame& frame0, Domain domain,
                                           MulScalar s0, double step) {
  if (!(domain.lo.value() < domain.hi.value())) throw Error(ErrorKind::InvalidArgument, "empty domain");
  if (s0.value() < domain.lo.value() || s0.value() > domain.hi.value()) {
    throw Error(ErrorKind::InvalidArgument, "initial parameter lies outside the domain");
  }
  if (!(step > 0.0)) throw Error(ErrorKind::InvalidArgument, "step must be positive");
  validate_frame(frame0);

  const double lo = domain.lo.log();
  const double hi = domain.hi.log();
  const double u0 = s0.log();
  // One step size for both directions so the samples form a uniform grid.
  const double h = std::max(u0 - lo, hi - u0) > 0.0
                       ? std::max(u0 - lo, hi - u0) / std::ceil(std::max(u0 - lo, hi - u0) / step)
                       : step;
  const int back = static_cast<int>(std::ceil((u0 - lo) / h - 1e-9));
  const int fwd = static_cast<int>(std::ceil((hi - u0) / h - 1e-9));

  const Integrator rk(log_kappa, log_tau);
  const State start{x0.log_coords(), frame0.t.log_coords(), frame0.n.log_coords(), frame0.b.log_coords()};
  Reconstruction out;
  out.step = h;

  auto march = [&](int count, double dir, std::vector<ReconstructionSample>& into) {
    State s = start;
    double u = u0;
    for (int i = 0; i < count; ++i) {
      const double target = i + 1 == count ? (dir > 0 ? hi : lo) : u0 + dir * h * (i + 1);
      const double correction = rk.step(u, target - u, s);
      out.max_correction = std::max(out.max_correction, correction);
      if (correction > kMaxFrameCorrection) {
        throw Error(ErrorKind::FrameDrift, "frame renormalization correction " + std::to_string(correction) +
                                               " exceeds 1e-6 at s = " + std::to_string(std::exp(target)));
      }
      u = target;
      into.push_back(to_sample(u, s));
    }
  };

  std::vector<ReconstructionSample> backward;
  march(back, -1.0, backward);
  std::reverse(backward.begin(), backward.end());
  out.samples = std::move(backward);
  out.samples.push_back(to_sample(u0, start));
  march(fwd, 1.0, out.samples);
  return out;
}

Reconstruction reconstruct_from_curvatures(const ExprAst& kappa, const ExprAst& tau, const MulVector3& x0,
                                           const Frame& frame0, Domain domain, MulScalar s0, double step) {
  const std::function<double(double)> log_kappa = [&](double u) {
    const double v = evaluate(kappa, std::exp(u));
    if (!(v > 0.0)) throw Error(ErrorKind::EvalDomainError, "curvature expression is not positive");
    return std::log(v);
  };
  const std::function<double(double)> log_tau = [&](double u) {
    const double v = evaluate(tau, std::exp(u));
    if (!(v > 0.0)) throw Error(ErrorKind::EvalDomainError, "torsion expression is not positive");
    return std::log(v);
  };
  return reconstruct_from_curvatures(log_kappa, log_tau, x0, frame0, domain, s0, step);
}

std::vector<Invariants> recompute_invariants(const Reconstruction& r) {
  std::vector<Invariants> out;
  const auto& sm = r.samples;
  if (sm.size() < 5) return out;
  auto d5 = [&](std::size_t j, auto get) {
    const double h = (sm[j + 2].s.log() - sm[j - 2].s.log()) / 4.0;
    const V3 a = get(sm[j - 2]), b = get(sm[j - 1]), c = get(sm[j + 1]), d = get(sm[j + 2]);
    return (1.0 / (12.0 * h)) * ((a - d) + 8.0 * (c - b));
  };
  auto uniform = [&](std::size_t j) {
    for (std::size_t i = j - 2; i < j + 2; ++i) {
      if (std::abs(sm[i + 1].s.log() - sm[i].s.log() - r.step) > 1e-9 * r.step) return false;
    }
    return true;
  };
  for (std::size_t j = 2; j + 2 < sm.size(); ++j) {
    if (!uniform(j)) continue;  // shortened final steps
    const V3 tp = d5(j, [](const ReconstructionSample& q) { return q.frame.t.log_coords(); });
    const V3 np = d5(j, [](const ReconstructionSample& q) { return q.frame.n.log_coords(); });
    out.push_back({sm[j].s, dot(tp, sm[j].frame.n.log_coords()), dot(np, sm[j].frame.b.log_coords())});
  }
  return out;
}

}  // namespace mulgeo
