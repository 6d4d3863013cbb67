#include <doctest.h>

#include "fixtures.hpp"
#include "makeev/error.hpp"
#include "makeev/sphere.hpp"

using namespace makeev;
using fixtures::pi;

namespace {

// C from finite differences of f(normalize(y + s e_s + t e_t)), independent of the jets.
double c_oracle(const SphereField& f, const Vec3& y, double h = 1e-4) {
  const TangentFrame fr = tangent_frame(y);
  auto F = [&](double s, double t) { return f.value((fr.y + s * fr.e_s + t * fr.e_t).normalized()); };
  const double f0 = F(0, 0);
  const double fs = (F(h, 0) - F(-h, 0)) / (2 * h), ft = (F(0, h) - F(0, -h)) / (2 * h);
  const double fss = (F(h, 0) - 2 * f0 + F(-h, 0)) / (h * h), ftt = (F(0, h) - 2 * f0 + F(0, -h)) / (h * h);
  const double fst = (F(h, h) - F(h, -h) - F(-h, h) + F(-h, -h)) / (4 * h * h);
  return fss * ft * ft - 2 * fst * fs * ft + ftt * fs * fs;
}

Vec3 unit(double x, double y, double z) { return Vec3(x, y, z).normalized(); }

std::vector<Vec3> random_points(int n, std::uint64_t seed) {
  const CounterRng rng(seed);
  std::vector<Vec3> out;
  for (int i = 0; i < n; ++i) {
    const double z = rng.uniform(2 * i, -1, 1), th = rng.uniform(2 * i + 1, 0, 2 * pi);
    const double r = std::sqrt(1 - z * z);
    out.emplace_back(r * std::cos(th), r * std::sin(th), z);
  }
  return out;
}

const Counterexample& default_build() {
  static const Counterexample ce = build_counterexample();
  return ce;
}

}  // namespace

TEST_SUITE("sphere") {
  TEST_CASE("level-curvature invariant against the chart oracle") {
    const auto z = linear_field(Vec3(0, 0, 1), "z");
    for (double th : {0.0, 0.7, 2.0, 4.4}) {
      const Vec3 y(std::cos(th), std::sin(th), 0);
      CHECK(std::abs(c_invariant(z, y)) < 1e-12);
      CHECK(std::abs(c_oracle(z, y)) < 1e-6);
    }
    const auto g0 = build_g0(3, 2, 1);
    const Vec3 diag = unit(1, 1, 0);
    const double c = c_invariant(g0, diag);
    CHECK(c < 0);
    CHECK(c == doctest::Approx(c_oracle(g0, diag)).epsilon(1e-5));
    CHECK(c == doctest::Approx(-3.0).epsilon(1e-12));
    CHECK(std::abs(c_invariant(g0, Vec3(1, 0, 0))) < 1e-12);
    CHECK(std::abs(c_invariant(g0, Vec3(0, 1, 0))) < 1e-12);
    const auto mixed = quadratic_field((Mat3() << 1, 0.3, 0, 0.3, -2, 0.5, 0, 0.5, 0.4).finished());
    for (const Vec3& y : random_points(20, 3))
      CHECK(c_invariant(mixed, y) == doctest::Approx(c_oracle(mixed, y)).epsilon(1e-5).scale(1e-6));
  }

  TEST_CASE("base quadratic") {
    const auto g0 = build_g0(3, 2, 1);
    CHECK(g0.value(Vec3(0, 0, 1)) == doctest::Approx(1.0));
    CHECK(g0.value(Vec3(1, 0, 0)) == doctest::Approx(3.0));
    for (const Vec3& p : random_points(100, 5)) CHECK(g0.value(p) == g0.value(-p));
    CHECK(g0.parity() == Parity::even);
    CHECK_THROWS_AS(build_g0(1, 2, 3), GeometryError);
    CHECK_THROWS_AS(build_g0(3, 3, 1), GeometryError);
  }

  TEST_CASE("bump pattern") {
    CHECK_NOTHROW(check_bump_pattern(BumpSpec{}));
    BumpSpec plain;
    plain.phi_exponent = 1.0;
    try {
      check_bump_pattern(plain);
      FAIL("expected ConvexityPatternFailed");
    } catch (const GeometryError& e) {
      CHECK(e.kind() == ErrorKind::ConvexityPatternFailed);
    }
    const BumpSpec spec;
    CHECK(phi_profile(spec, 2 * spec.eps).v == 0.0);
    CHECK(psi_profile(spec, spec.eps / 2).v == 0.0);
    CHECK(phi_profile(spec, 0.0).v == doctest::Approx(0.5).epsilon(0.01));
    CHECK(psi_profile(spec, 0.0).v == doctest::Approx(0.05).epsilon(0.01));
    CHECK(std::abs(phi_profile(spec, spec.eps).d2) < 1e-9);
  }

  TEST_CASE("model identity and negativity along L") {
    const auto& ce = default_build();
    const BumpSpec& spec = ce.spec;
    for (int k = 0; k < 101; ++k) {
      const double s = 0.5 * spec.eps * (-1 + 2 * (k + 0.5) / 101);
      const auto ph = phi_profile(spec, s), ps = psi_profile(spec, s);
      const double expected = ps.v * ps.v + ps.v * ps.v * ps.v * ph.d2 - s * s;
      CHECK(expected < 0);
      for (int side : {1, -1})
        CHECK(std::abs(model_chart_c(ce.g, ce.match, s, side * (ph.v + ps.v), side) - expected) <= 1e-4 * std::abs(expected));
    }
    double worst = -1.0;
    for (const Vec3& y : ce.L.samples(1000)) worst = std::max(worst, c_invariant(ce.g, y));
    for (const Vec3& y : ce.L.window_samples(1000)) worst = std::max(worst, c_invariant(ce.g, y));
    MESSAGE("max C(g) on L: " << worst);
    CHECK(worst < 0);
  }

  TEST_CASE("parities and the odd-part identity") {
    const auto& ce = default_build();
    for (const Vec3& p : random_points(1000, 8)) {
      CHECK(std::abs(ce.g.value(p) - ce.g.value(-p)) <= 1e-12);
      CHECK(std::abs(ce.h.value(p) + ce.h.value(-p)) <= 1e-12);
      const double h = ce.h.value(p);
      CHECK(std::abs(ce.f.value(p) - ce.f.value(-p) - 2 * h * h * h) <= 1e-10);
    }
    for (double th : {0.1, 1.5707, 2.9, 4.0}) CHECK((ce.L.point(th + pi) + ce.L.point(th)).norm() <= 1e-12);
    CHECK(ce.h.value(Vec3(0, 0, 1)) == doctest::Approx(1.0));
    for (const Vec3& y : ce.L.samples(1000)) {
      CHECK(std::abs(ce.h.value(y)) <= 1e-10);
      CHECK(std::abs(ce.f.value(y) - ce.g.value(y)) <= 1e-12);
    }
  }

  TEST_CASE("default build passes the obstruction check") {
    const auto& ce = default_build();
    const auto rep = verify_obstruction(ce.f, ce.g, ce.h, ce.L);
    for (const auto& c : rep.checks) {
      INFO(c.name << " worst " << c.worst << " bound " << c.bound);
      CHECK(c.pass);
    }
    CHECK(rep.critical_points == 0);
    const auto build = verify_build(ce);
    for (const auto& c : build.checks) {
      INFO(c.name << " worst " << c.worst << " bound " << c.bound);
      CHECK(c.pass);
    }
  }

  TEST_CASE("a linear field on the equator fails the obstruction") {
    const auto z = linear_field(Vec3(0, 0, 1), "z");
    std::vector<Vec3> equator;
    for (int k = 0; k < 200; ++k) equator.emplace_back(std::cos(2 * pi * k / 200), std::sin(2 * pi * k / 200), 0);
    const auto rep = verify_obstruction(z, z, z, equator);
    CHECK_FALSE(rep.pass());
    CHECK_FALSE(rep.checks[2].pass);
  }

  TEST_CASE("hessian classes at critical points") {
    const Vec3 pole(0, 0, 1);
    const auto saddle = quadratic_field(Vec3(1, -1, 0).asDiagonal().toDenseMatrix(), "x^2 - y^2");
    CHECK(surface_gradient_norm(saddle, pole) < 1e-15);
    CHECK(to_string(classify_hessian(saddle, pole)) == "not definite");
    const auto bowl = quadratic_field(Vec3(1, 1, -2).asDiagonal().toDenseMatrix(), "x^2 + y^2 - 2 z^2");
    CHECK(classify_hessian(bowl, pole) == HessianClass::positive_definite);
    const auto cap = quadratic_field(Vec3(-1, -1, 0).asDiagonal().toDenseMatrix());
    CHECK(classify_hessian(cap, pole) == HessianClass::negative_definite);
    const auto flat = quadratic_field(Vec3(1, 0, 0).asDiagonal().toDenseMatrix());
    CHECK(classify_hessian(flat, pole) == HessianClass::degenerate);
  }

  TEST_CASE("derivative oracle") {
    const auto& ce = default_build();
    for (const SphereField* f : {&ce.g0, &ce.g, &ce.h, &ce.f}) {
      const auto dc = derivative_check(*f, 500, 4);
      INFO(f->name());
      CHECK(dc.gradient <= 1e-6);
      CHECK(dc.hessian <= 1e-6);
    }
  }

  TEST_CASE("quadruples") {
    const auto q = quadruple(pi / 2, pi / 2);
    CHECK((q.x2 - Vec3(0, 1, 0)).norm() < 1e-15);
    CHECK((q.x3 - Vec3(0, -1, 0)).norm() < 1e-15);
    const auto r = quadruple(0.3, 0.7);
    CHECK(std::acos(r.x1.dot(r.x2)) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(std::acos(r.x1.dot(r.x3)) == doctest::Approx(0.7).epsilon(1e-12));
    for (const Vec3& x : {r.x1, r.x2, r.x3, r.x4}) CHECK(std::abs(x.z()) < 1e-15);
    CHECK_THROWS_AS(quadruple(0.0, 0.5), GeometryError);
    CHECK_THROWS_AS(quadruple(0.5, 2.0), GeometryError);
  }

  TEST_CASE("spread") {
    const auto z = linear_field(Vec3(0, 0, 1), "z");
    const auto q = quadruple(0.4, 0.9);
    CHECK(spread(z, q, Mat3::Identity()) == 0.0);
    Mat3 tilt = Eigen::AngleAxisd(0.6, Vec3::UnitX()).toRotationMatrix();
    CHECK(spread(z, q, tilt) > 0.1);
    CHECK(min_spread(z, q, 8, 3).value <= 1e-10);
    Mat3 skew = Mat3::Identity();
    skew(0, 1) = 1e-6;
    CHECK_THROWS_AS(spread(z, q, skew), GeometryError);
  }

  TEST_CASE("min spread is monotone in the number of starts") {
    const auto& ce = default_build();
    const auto q = quadruple(0.05, 0.08);
    const auto starts = start_rotations(12, 5);
    const auto prefix = start_rotations(6, 5);
    for (std::size_t i = 0; i < prefix.size(); ++i) CHECK((starts[i] - prefix[i]).norm() == 0.0);
    double prev = std::numeric_limits<double>::infinity();
    for (int n : {1, 3, 6, 12}) {
      const auto r = min_spread(ce.f, q, n, 5);
      CHECK(r.value <= prev);
      CHECK(r.value >= 0.0);
      CHECK((r.rotation * r.rotation.transpose() - Mat3::Identity()).norm() < 1e-10);
      prev = r.value;
    }
    const auto a = min_spread(ce.f, q, 6, 5, {.exec = Exec::serial});
    const auto b = min_spread(ce.f, q, 6, 5, {.exec = Exec::parallel});
    CHECK(a.value == b.value);
    CHECK(a.start == b.start);
  }
}
