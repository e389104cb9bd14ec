#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "mulgeo/catalog.hpp"
#include "mulgeo/curve.hpp"
#include "mulgeo/error.hpp"
#include "oracles.hpp"
#include "property_suites.hpp"

using namespace mulgeo;
using oracle::throws_kind;

namespace {

MulCurve line_curve() {
  // (e,1,1) +* s ·* (1,e,1) = (e, s, 1).
  return MulCurve::from_strings("e", "t", "1", {MulScalar(0.1), MulScalar(10.0)}, "line");
}

bool vec_near(const MulVector3& v, const std::array<double, 3>& logs, double tol) {
  const auto l = v.log_coords();
  for (int i = 0; i < 3; ++i)
    if (!(std::abs(l[i] - logs[i]) <= tol)) return false;
  return true;
}

double log_norm(const MulVector3& v) { return norm(v).log(); }

MulVector3 from_series_derivative(const std::array<Series, 3>& s) {
  return MulVector3::from_log({s[0].derivative_at(1), s[1].derivative_at(1), s[2].derivative_at(1)});
}
MulVector3 from_series_value(const std::array<Series, 3>& s) {
  return MulVector3::from_log({s[0][0], s[1][0], s[2][0]});
}

struct CatalogOracle {
  const char* name;
  std::function<double(double)> kappa, tau;
};

std::vector<CatalogOracle> catalog_oracles() {
  const oracle::SecTimesSphere chen{true}, sph{false};
  return {{"mul_circle", [](double) { return 1.0; }, [](double) { return 0.0; }},
          {"equator", [](double) { return 1.0; }, [](double) { return 0.0; }},
          {"chen_rectifying", [=](double u) { return chen.kappa(u); }, [=](double u) { return chen.tau(u); }},
          {"spherical_y", [=](double u) { return sph.kappa(u); }, [=](double u) { return sph.tau(u); }}};
}

}  // namespace

TEST_CASE("speed and unit speed", "[curve]") {
  const MulCurve circle = catalog("mul_circle");
  for (double u : {-2.0, 0.0, 1.3}) CHECK(std::abs(speed(circle, MulScalar::from_log(u)).log() - 1.0) <= 1e-14);
  CHECK(is_unit_speed(circle, 1e-10));
  CHECK(std::abs(speed(line_curve(), MulScalar(2.0)).log() - 1.0) <= 1e-15);
  const MulCurve sq = MulCurve::from_strings("t^2", "1", "1", {MulScalar(0.5), MulScalar(2.0)}, "square");
  CHECK(std::abs(speed(sq, MulScalar(1.7)).log() - 2.0) <= 1e-14);
  CHECK_FALSE(is_unit_speed(sq, 1e-8));
  CHECK(std::abs(speed(circle, MulScalar(2.0), Backend::FiniteDifference).log() - 1.0) <= 1e-8);
}

TEST_CASE("curve construction and evaluation", "[curve]") {
  CHECK(throws_kind([] { MulCurve::from_strings("t", "t", "t", {MulScalar(2.0), MulScalar(1.0)}, "bad"); },
                    ErrorKind::InvalidArgument));
  const MulCurve eq = catalog("equator");
  CHECK(vec_near(eq.at(MulScalar(1.0)), {1, 0, 0}, 1e-15));
  CHECK(eq.contains(MulScalar(1.0)));
  CHECK_FALSE(eq.contains(MulScalar::from_log(4.0)));
  CHECK(throws_kind([&] { frenet(eq, MulScalar::from_log(4.0)); }, ErrorKind::EvalDomainError));
  const MulCurve neg = MulCurve::from_strings("t-2", "1", "1", {MulScalar(1.0), MulScalar(3.0)}, "negative");
  CHECK(throws_kind([&] { neg.at(MulScalar(1.5)); }, ErrorKind::EvalDomainError));
  CHECK(eq.components() != nullptr);
}

TEST_CASE("arc length", "[curve]") {
  const MulCurve circle = catalog("mul_circle");
  CHECK(std::abs(arc_length(circle, MulScalar(1.0), MulScalar::from_log(M_PI / 2)).log() - M_PI / 2) <= 1e-12);
  const MulScalar s0 = MulScalar::from_log(-0.4), s1 = MulScalar::from_log(1.1);
  CHECK(std::abs(arc_length(circle, s0, s1).log() - sub(s1, s0).log()) <= 1e-12);
  CHECK(throws_kind([&] { arc_length(circle, s1, s0); }, ErrorKind::InvalidArgument));
  const MulCurve constant = MulCurve::from_strings("2", "3", "4", {MulScalar(0.5), MulScalar(2.0)}, "point");
  CHECK(throws_kind([&] { arc_length(constant, MulScalar(0.6), MulScalar(1.5)); }, ErrorKind::NotRegular));
}

TEST_CASE("arc length of the scaled spherical curve follows s = a tan* s~", "[curve]") {
  const MulCurve y = catalog("spherical_y");
  for (double la : {0.5, 1.0, 2.0}) {
    const MulCurve x = construct_rectifying(MulScalar::from_log(la), y);
    for (double v : {0.2, 0.7, 1.3}) {
      const double forward = arc_length(x, MulScalar(1.0), MulScalar::from_log(v)).log();
      const double backward = arc_length(x, MulScalar::from_log(-v), MulScalar(1.0)).log();
      INFO("a = e^" << la << ", log s~ = " << v);
      CHECK(std::abs(forward - la * std::tan(v)) <= 1e-9 * std::max(1.0, la * std::tan(v)));
      CHECK(std::abs(backward - la * std::tan(v)) <= 1e-9 * std::max(1.0, la * std::tan(v)));
      // Inverting the relation recovers the spherical parameter.
      CHECK(std::abs(std::atan(forward / la) - v) <= 1e-9);
    }
  }
}

TEST_CASE("unit-speed reparametrization preserves invariants", "[curve]") {
  const MulCurve chen = catalog("chen_rectifying");
  const MulCurve r = reparametrize_unit_speed(chen);
  CHECK(r.parametrization() == Parametrization::ArcLength);
  CHECK(std::abs(r.domain().hi.log() - std::tan(M_PI / 2 - kSecMargin)) <= 1e-8);
  AnalysisOptions opts;
  opts.samples = 64;
  CHECK(is_unit_speed(r, 1e-8, opts));
  const oracle::SecTimesSphere o;
  for (double u : {-1.2, -0.3, 0.0, 0.9, 1.4}) {
    const double sigma = std::tan(u);
    const FrenetData f = frenet(r, MulScalar::from_log(sigma));
    INFO("u = " << u);
    CHECK(std::abs(f.kappa.log() - o.kappa(u)) <= 1e-8);
    CHECK(std::abs(f.tau.log() - o.tau(u)) <= 1e-8);
    CHECK(vec_near(r.at(MulScalar::from_log(sigma)), chen.log_point(u), 1e-9));
  }
}

TEST_CASE("Frenet apparatus of the equator", "[curve]") {
  const MulCurve eq = catalog("equator");
  for (double u : {-2.5, -0.3, 0.0, 1.0, 2.9}) {
    const FrenetData f = frenet(eq, MulScalar::from_log(u));
    CHECK(std::abs(f.kappa.log() - 1.0) <= 1e-12);
    CHECK(std::abs(f.tau.log()) <= 1e-12);
    CHECK(vec_near(f.n, {-std::cos(u), -std::sin(u), 0.0}, 1e-12));
    CHECK(vec_near(f.t, {-std::sin(u), std::cos(u), 0.0}, 1e-12));
    CHECK(vec_near(f.b, {0.0, 0.0, 1.0}, 1e-12));
  }
}

TEST_CASE("lines are not biregular and non-unit-speed input is rejected", "[curve]") {
  CHECK(throws_kind([] { frenet(line_curve(), MulScalar(2.0)); }, ErrorKind::NotBiregular));
  CHECK(std::abs(log_curvature(line_curve(), MulScalar(2.0))) <= 1e-14);
  const MulCurve helix = MulCurve::from_strings("exp(cos(log(t)))", "exp(sin(log(t)))", "t",
                                                {MulScalar(0.5), MulScalar(2.0)}, "helix");
  CHECK(throws_kind([&] { frenet(helix, MulScalar(1.0)); }, ErrorKind::NotUnitSpeed));
  AnalysisOptions opts;
  opts.reparametrize = true;
  const FrenetData f = frenet(helix, MulScalar(1.0), opts);
  // Helix (cos u, sin u, u): κ = τ = 1/2, speed √2.
  CHECK(std::abs(f.kappa.log() - 0.5) <= 1e-12);
  CHECK(std::abs(f.tau.log() - 0.5) <= 1e-12);
  CHECK(std::abs(f.speed.log() - std::sqrt(2.0)) <= 1e-12);
  CHECK(frenet(helix.with_parametrization(Parametrization::General), MulScalar(1.0)).kappa.log() ==
        f.kappa.log());
}

TEST_CASE("Frenet apparatus of the rectifying example", "[curve]") {
  const MulCurve chen = catalog("chen_rectifying");
  const FrenetData f = frenet(chen, MulScalar::from_log(0.3));
  const oracle::SecTimesSphere o;
  CHECK(std::abs(f.kappa.log() - o.kappa(0.3)) <= 1e-12);
  CHECK(std::abs(f.tau.log() - o.tau(0.3)) <= 1e-12);
  CHECK(std::abs(f.tau.log()) > 0.1);
  CHECK(std::abs(f.speed.log() - 1.0 / std::pow(std::cos(0.3), 2)) <= 1e-12);
}

TEST_CASE("frames are orthonormal and right-handed", "[curve][property]") {
  for (const auto& name : catalog_names()) {
    const MulCurve c = catalog(name);
    for (double u : sample_log_parameters(c.domain(), 64, 0.02)) {
      const FrenetData f = frenet(c, MulScalar::from_log(u));
      INFO(name << " at u = " << u);
      REQUIRE(std::abs(log_norm(f.t) - 1.0) <= 1e-10);
      REQUIRE(std::abs(log_norm(f.n) - 1.0) <= 1e-10);
      REQUIRE(std::abs(log_norm(f.b) - 1.0) <= 1e-10);
      REQUIRE(std::abs(inner(f.t, f.n).log()) <= 1e-10);
      REQUIRE(std::abs(inner(f.t, f.b).log()) <= 1e-10);
      REQUIRE(std::abs(inner(f.n, f.b).log()) <= 1e-10);
      REQUIRE(log_norm(vec_sub(cross(f.n, f.b), f.t)) <= 1e-10);
      REQUIRE(log_norm(vec_sub(cross(f.b, f.t), f.n)) <= 1e-10);
    }
  }
}

TEST_CASE("multiplicative Frenet formulas hold samplewise", "[curve][property]") {
  for (const auto& name : catalog_names()) {
    const MulCurve c = catalog(name);
    double worst = 0.0;
    for (double u : sample_log_parameters(c.domain(), 128, 0.02)) {
      const FrameJets j = frame_jets(c, MulScalar::from_log(u));
      const MulScalar kappa = MulScalar::from_log(j.curvature[0]);
      const MulScalar tau = MulScalar::from_log(j.torsion[0]);
      const MulVector3 t = from_series_value(j.tangent), n = from_series_value(j.normal),
                       b = from_series_value(j.binormal);
      const MulVector3 dt = from_series_derivative(j.tangent), dn = from_series_derivative(j.normal),
                       db = from_series_derivative(j.binormal);
      // Scaled by the size of the terms so the sec-type blow-up near the
      // domain ends does not masquerade as error.
      const double scale = std::max(1.0, std::abs(kappa.log()) + std::abs(tau.log()));
      worst = std::max(worst, log_norm(vec_sub(dt, scalar_mul(kappa, n))) / scale);
      worst = std::max(worst,
                       log_norm(vec_sub(dn, vec_add(vec_neg(scalar_mul(kappa, t)), scalar_mul(tau, b)))) / scale);
      worst = std::max(worst, log_norm(vec_sub(db, vec_neg(scalar_mul(tau, n)))) / scale);
    }
    INFO(name << " worst residual " << worst);
    CHECK(worst <= 1e-8);
  }
}

TEST_CASE("metric compatibility of the frame fields", "[curve][property]") {
  for (const auto& name : catalog_names()) {
    const MulCurve c = catalog(name);
    for (double u : sample_log_parameters(c.domain(), 32, 0.02)) {
      const FrameJets j = frame_jets(c, MulScalar::from_log(u));
      const std::array<const std::array<Series, 3>*, 3> fields{&j.tangent, &j.normal, &j.binormal};
      for (auto* p : fields) {
        for (auto* q : fields) {
          const Series pq = (*p)[0] * (*q)[0] + (*p)[1] * (*q)[1] + (*p)[2] * (*q)[2];
          const MulScalar lhs = MulScalar::from_log(pq.derivative_at(1));
          const MulScalar rhs = add(inner(from_series_derivative(*p), from_series_value(*q)),
                                    inner(from_series_value(*p), from_series_derivative(*q)));
          REQUIRE(std::abs(lhs.log() - rhs.log()) <= 1e-8 * std::max(1.0, std::abs(rhs.log())));
        }
      }
    }
  }
}

TEST_CASE("position decomposition", "[curve]") {
  const MulCurve eq = catalog("equator");
  for (double u : {-1.0, 0.5, 2.0}) {
    const Decomposition d = decompose(eq, MulScalar::from_log(u));
    CHECK(std::abs(d.lambda.log()) <= 1e-12);
    CHECK(std::abs(d.nu.log() + 1.0) <= 1e-12);
    CHECK(std::abs(d.mu.log()) <= 1e-12);
    CHECK(std::abs(d.rho.log() - 1.0) <= 1e-12);
  }
  const MulCurve chen = catalog("chen_rectifying");
  for (double u : sample_log_parameters(chen.domain(), 64, 0.02)) {
    const Decomposition d = decompose(chen, MulScalar::from_log(u));
    REQUIRE(std::abs(d.nu.log()) <= 1e-8);
    REQUIRE(std::abs(d.perp_norm.log() - 1.0) <= 1e-8);
    // ρ²* = λ²* +* ν²* +* μ²*.
    const MulScalar sum = add(add(square(d.lambda), square(d.nu)), square(d.mu));
    REQUIRE(std::abs(square(d.rho).log() - sum.log()) <= 1e-10 * std::max(1.0, sum.log()));
  }
}

TEST_CASE("master conjugation on catalog curves", "[curve][property]") {
  std::mt19937_64 rng(61);
  for (const auto& o : catalog_oracles()) {
    const MulCurve c = catalog(o.name);
    const double lo = c.domain().lo.log(), hi = c.domain().hi.log();
    const double pad = 0.02 * (hi - lo);
    std::uniform_real_distribution<double> at(lo + pad, hi - pad);
    double jet_err = 0.0, fd_err = 0.0;
    AnalysisOptions fd;
    fd.backend = Backend::FiniteDifference;
    for (int i = 0; i < 100; ++i) {
      const double u = at(rng);
      const MulScalar s = MulScalar::from_log(u);
      const FrenetData a = frenet(c, s);
      jet_err = std::max({jet_err, std::abs(a.kappa.log() - o.kappa(u)), std::abs(a.tau.log() - o.tau(u))});
      const FrenetData b = frenet(c, s, fd);
      // Relative for the sec-type curve whose invariants grow near the poles.
      const double scale = std::max(1.0, std::abs(o.kappa(u)) + std::abs(o.tau(u)));
      fd_err = std::max({fd_err, std::abs(b.kappa.log() - o.kappa(u)) / scale,
                         std::abs(b.tau.log() - o.tau(u)) / scale});
    }
    INFO(o.name << ": jet " << jet_err << ", fd " << fd_err);
    CHECK(jet_err <= 1e-8);
    CHECK(fd_err <= 1e-4);
  }
}

TEST_CASE("random curves conjugate to classical curvature and torsion", "[curve][property]") {
  const auto jet = suites::curve_conjugation(100, Backend::Jet);
  const auto fd = suites::curve_conjugation(100, Backend::FiniteDifference);
  INFO("jet " << jet.kappa.max_error << " / " << jet.tau.max_error << ", fd " << fd.kappa.max_error << " / "
              << fd.tau.max_error);
  CHECK(jet.kappa.cases == 500);
  CHECK(jet.kappa.max_error <= 1e-8);
  CHECK(jet.tau.max_error <= 1e-8);
  CHECK(fd.kappa.max_error <= 1e-4);
  CHECK(fd.tau.max_error <= 1e-4);
}

TEST_CASE("log-uniform sampling", "[curve]") {
  const Domain d{MulScalar::from_log(-1.0), MulScalar::from_log(3.0)};
  const auto us = sample_log_parameters(d, 5, 0.25);
  REQUIRE(us.size() == 5);
  CHECK(us.front() == 0.0);
  CHECK(us.back() == 2.0);
  CHECK(std::abs(us[2] - 1.0) <= 1e-15);
  CHECK(throws_kind([&] { sample_log_parameters(d, 1, 0.0); }, ErrorKind::InvalidArgument));
  CHECK(throws_kind([&] { sample_log_parameters(d, 8, 0.5); }, ErrorKind::InvalidArgument));
}
