#pragma once

// Multiplicative Euclidean space E*^n: componentwise field operations, the
// inner product e^{sum log x_i log y_i}, the induced norm, and in dimension 3
// the cross product together with lines, planes and spheres.

#include <array>
#include <cstddef>
#include <initializer_list>
#include <numbers>

#include "mulgeo/mulcore.hpp"

namespace mulgeo {

/// Threshold on log norm(cross(u, v)) below which u and v count as collinear.
inline constexpr double kCollinearTol = 1e-10;

template <std::size_t N>
class MulVector {
 public:
  static_assert(N >= 1);

  /// The multiplicative zero vector (1, ..., 1).
  MulVector() = default;
  explicit MulVector(const std::array<MulScalar, N>& components) : c_(components) {}

  /// Builds a vector from log coordinates; throws RangeOverflow like from_log.
  static MulVector from_log(const std::array<double, N>& logs) {
    std::array<MulScalar, N> c;
    for (std::size_t i = 0; i < N; ++i) c[i] = MulScalar::from_log(logs[i]);
    return MulVector(c);
  }

  /// Canonical basis vector e_i (1* in slot i, 0* elsewhere).
  static MulVector basis(std::size_t i) {
    MulVector v;
    v.c_.at(i) = MulScalar::one();
    return v;
  }

  const MulScalar& operator[](std::size_t i) const { return c_[i]; }
  MulScalar& operator[](std::size_t i) { return c_[i]; }
  const std::array<MulScalar, N>& components() const noexcept { return c_; }

  std::array<double, N> log_coords() const noexcept {
    std::array<double, N> out;
    for (std::size_t i = 0; i < N; ++i) out[i] = c_[i].log();
    return out;
  }

  bool is_zero() const noexcept {
    for (const auto& x : c_)
      if (x.log() != 0.0) return false;
    return true;
  }

 private:
  std::array<MulScalar, N> c_{};
};

using MulVector3 = MulVector<3>;

template <std::size_t N>
MulVector<N> vec_add(const MulVector<N>& u, const MulVector<N>& v) {
  MulVector<N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = add(u[i], v[i]);
  return out;
}

template <std::size_t N>
MulVector<N> vec_sub(const MulVector<N>& u, const MulVector<N>& v) {
  MulVector<N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = sub(u[i], v[i]);
  return out;
}

template <std::size_t N>
MulVector<N> vec_neg(const MulVector<N>& u) {
  MulVector<N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = neg(u[i]);
  return out;
}

/// a ·* u, componentwise e^{log a log u_i}.
template <std::size_t N>
MulVector<N> scalar_mul(MulScalar a, const MulVector<N>& u) {
  MulVector<N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = mul(a, u[i]);
  return out;
}

/// u /* a, componentwise; throws DivisionByMulZero for a = 0*.
template <std::size_t N>
MulVector<N> scalar_div(const MulVector<N>& u, MulScalar a) {
  MulVector<N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = div(u[i], a);
  return out;
}

template <std::size_t N>
MulScalar inner(const MulVector<N>& u, const MulVector<N>& v) {
  MulScalar acc;
  for (std::size_t i = 0; i < N; ++i) acc = add(acc, mul(u[i], v[i]));
  return acc;
}

template <std::size_t N>
MulScalar norm(const MulVector<N>& u) {
  return sqrt(inner(u, u));
}

/// norm(u -* v).
template <std::size_t N>
MulScalar distance(const MulVector<N>& u, const MulVector<N>& v) {
  return norm(vec_sub(u, v));
}

MulVector3 cross(const MulVector3& u, const MulVector3& v);

/// Multiplicative radian measure in [1, e^pi]. Throws ZeroVectorAngle when
/// either argument is the zero vector.
MulScalar angle(const MulVector3& u, const MulVector3& v);

/// log norm(cross(u, v)) <= tol.
bool collinear(const MulVector3& u, const MulVector3& v, double tol = kCollinearTol);

/// Largest componentwise |log u_i - log v_i|.
double max_log_distance(const MulVector3& u, const MulVector3& v) noexcept;

class MulLine {
 public:
  /// Throws InvalidArgument when direction is the zero vector.
  MulLine(MulVector3 point, MulVector3 direction);
  const MulVector3& point() const noexcept { return point_; }
  const MulVector3& direction() const noexcept { return direction_; }
  /// P +* t ·* v.
  MulVector3 at(MulScalar t) const;

 private:
  MulVector3 point_;
  MulVector3 direction_;
};

class MulPlane {
 public:
  /// Throws InvalidArgument when normal is the zero vector.
  MulPlane(MulVector3 point, MulVector3 normal);
  const MulVector3& point() const noexcept { return point_; }
  const MulVector3& normal() const noexcept { return normal_; }

 private:
  MulVector3 point_;
  MulVector3 normal_;
};

class MulSphere {
 public:
  /// Throws InvalidArgument unless radius > 0* (log radius > 0).
  MulSphere(MulVector3 center, MulScalar radius);
  const MulVector3& center() const noexcept { return center_; }
  MulScalar radius() const noexcept { return radius_; }

 private:
  MulVector3 center_;
  MulScalar radius_;
};

/// Log-metric distance from p to the line, tested against tol.
bool line_contains(const MulLine& line, const MulVector3& p, double tol);
/// |log <p -* P, v>*| / log norm(v) <= tol, i.e. log-metric distance to the plane.
bool plane_contains(const MulPlane& plane, const MulVector3& p, double tol);
/// |log norm(p -* C) - log r| <= tol.
bool sphere_contains(const MulSphere& sphere, const MulVector3& p, double tol);

}  // namespace mulgeo
