#pragma once

// Curves from prescribed curvature and torsion: integrates the multiplicative
// Frenet system, which in log coordinates u = log s is the classical one
//   X' = T,  T' = κ N,  N' = −κ T + τ B,  B' = −τ N.

#include <functional>
#include <vector>

#include "mulgeo/curve.hpp"
#include "mulgeo/expr.hpp"

namespace mulgeo {

inline constexpr double kReconstructStep = 1e-3;
/// Largest per-step Gram–Schmidt correction tolerated before FrameDrift.
inline constexpr double kMaxFrameCorrection = 1e-6;

struct Frame {
  MulVector3 t;
  MulVector3 n;
  MulVector3 b;
};

struct ReconstructionSample {
  MulScalar s;
  MulVector3 x;
  Frame frame;
};

struct Reconstruction {
  std::vector<ReconstructionSample> samples;  // increasing s, uniform in log s
  double step = 0.0;                          // log step actually used
  double max_correction = 0.0;
};

struct Invariants {
  MulScalar s;
  double kappa_log = 0.0;
  double tau_log = 0.0;
};

/// b = t ×* n completes (t, n) to a frame.
Frame complete_frame(const MulVector3& t, const MulVector3& n);

/// Throws InvalidArgument unless the frame is multiplicative-orthonormal and
/// right-handed within tol (log metric).
void validate_frame(const Frame& frame, double tol = 1e-10);

/// Log-domain curvature functions of u = log s. The initial point and frame are
/// taken at s0 and integration proceeds in both directions to the domain ends
/// with fixed RK4 steps of about `step`. Throws StepDomainError when κ or τ
/// fails to evaluate or log κ <= 0, FrameDrift on excessive renormalization.
Reconstruction reconstruct_from_curvatures(const std::function<double(double)>& log_kappa,
                                           const std::function<double(double)>& log_tau,
                                           const MulVector3& x0, const Frame& frame0, Domain domain,
                                           MulScalar s0, double step = kReconstructStep);

/// κ and τ given as positive-valued expressions in s.
Reconstruction reconstruct_from_curvatures(const ExprAst& kappa, const ExprAst& tau, const MulVector3& x0,
                                           const Frame& frame0, Domain domain, MulScalar s0,
                                           double step = kReconstructStep);

/// κ = ⟨t*, n⟩*, τ = ⟨n*, b⟩* from five-point differences of the sampled
/// frame; samples without a uniform five-point neighbourhood are skipped.
std::vector<Invariants> recompute_invariants(const Reconstruction& r);

}  // namespace mulgeo
