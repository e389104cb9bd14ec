#pragma once

// Named closed-form curves and the rectifying-curve builder
//   x(s̃) = (a ·* sec* s̃) ·* y(s̃)
// for a unit-speed curve y on the unit multiplicative sphere.

#include <string>
#include <string_view>
#include <vector>

#include "mulgeo/curve.hpp"

namespace mulgeo {

/// Log-distance kept between the rectifying domain and the poles of sec*.
inline constexpr double kSecMargin = 0.05;

/// mul_circle, equator, chen_rectifying, spherical_y. Throws UnknownCurve.
MulCurve catalog(std::string_view name);
std::vector<std::string> catalog_names();

/// Multiplicative rectifying curve over y. The result is declared General:
/// its own parameter s̃ is not arc length. Its domain is y's domain clipped to
/// (e^{-π/2+0.05}, e^{π/2-0.05}).
/// Throws InvalidArgument unless a > 1, NotUnitSpeed, or NotSpherical when y
/// leaves the sphere of radius e about 0*.
MulCurve construct_rectifying(MulScalar a, const MulCurve& y, const AnalysisOptions& options = {});

}  // namespace mulgeo
