#pragma once

// Small vector algebra over Taylor series, shared by the curve and
// classification code.

#include <array>

#include "mulgeo/series.hpp"

namespace mulgeo {

using Vec3Series = std::array<Series, 3>;

inline Vec3Series derivative(const Vec3Series& v) {
  return {v[0].derivative(), v[1].derivative(), v[2].derivative()};
}

inline Series dot(const Vec3Series& a, const Vec3Series& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline Vec3Series cross(const Vec3Series& a, const Vec3Series& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Re-expands a position series in local arc length: with sigma = int |X'|,
// the result is X(sigma^{-1}(w)).
inline Vec3Series to_arc_length(const Vec3Series& x) {
  const Vec3Series xp = derivative(x);
  const Series w = sqrt(dot(xp, xp)).integral().revert();
  return {x[0].compose(w), x[1].compose(w), x[2].compose(w)};
}

}  // namespace mulgeo
