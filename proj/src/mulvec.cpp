#include "mulgeo/mulvec.hpp"

#include <algorithm>
#include <cmath>

#include "mulgeo/error.hpp"

namespace mulgeo {

MulVector3 cross(const MulVector3& u, const MulVector3& v) {
  MulVector3 out;
  out[0] = sub(mul(u[1], v[2]), mul(u[2], v[1]));
  out[1] = sub(mul(u[2], v[0]), mul(u[0], v[2]));
  out[2] = sub(mul(u[0], v[1]), mul(u[1], v[0]));
  return out;
}

MulScalar angle(const MulVector3& u, const MulVector3& v) {
  const double nu = norm(u).log();
  const double nv = norm(v).log();
  if (nu == 0.0 || nv == 0.0) {
    throw Error(ErrorKind::ZeroVectorAngle, "angle*: an argument is the multiplicative zero vector");
  }
  return arccos(MulScalar::from_log(inner(u, v).log() / (nu * nv)));
}

bool collinear(const MulVector3& u, const MulVector3& v, double tol) {
  return norm(cross(u, v)).log() <= tol;
}

double max_log_distance(const MulVector3& u, const MulVector3& v) noexcept {
  double worst = 0.0;
  for (std::size_t i = 0; i < 3; ++i) worst = std::max(worst, log_distance(u[i], v[i]));
  return worst;
}

MulLine::MulLine(MulVector3 point, MulVector3 direction)
    : point_(point), direction_(direction) {
  if (direction_.is_zero()) {
    throw Error(ErrorKind::InvalidArgument, "line direction is the multiplicative zero vector");
  }
}

MulVector3 MulLine::at(MulScalar t) const { return vec_add(point_, scalar_mul(t, direction_)); }

MulPlane::MulPlane(MulVector3 point, MulVector3 normal) : point_(point), normal_(normal) {
  if (normal_.is_zero()) {
    throw Error(ErrorKind::InvalidArgument, "plane normal is the multiplicative zero vector");
  }
}

MulSphere::MulSphere(MulVector3 center, MulScalar radius) : center_(center), radius_(radius) {
  if (!(radius_.log() > 0.0)) {
    throw Error(ErrorKind::InvalidArgument, "sphere radius must exceed the multiplicative zero");
  }
}

bool line_contains(const MulLine& line, const MulVector3& p, double tol) {
  const MulVector3 offset = vec_sub(p, line.point());
  const double dist = norm(cross(offset, line.direction())).log() / norm(line.direction()).log();
  return dist <= tol;
}

bool plane_contains(const MulPlane& plane, const MulVector3& p, double tol) {
  const MulVector3 offset = vec_sub(p, plane.point());
  const double dist = std::abs(inner(offset, plane.normal()).log()) / norm(plane.normal()).log();
  return dist <= tol;
}

bool sphere_contains(const MulSphere& sphere, const MulVector3& p, double tol) {
  return std::abs(distance(p, sphere.center()).log() - sphere.radius().log()) <= tol;
}

}  // namespace mulgeo
