#include <doctest.h>

#include "fixtures.hpp"
#include "makeev/error.hpp"

using namespace makeev;
using fixtures::pi;

namespace {

double curvature_oracle(const PlaneCurve& c, double t, double h = 1e-5) {
  const cplx d1 = (c.eval(t + h) - c.eval(t - h)) / (2 * h);
  const cplx d2 = (c.eval(t + h) - 2.0 * c.eval(t) + c.eval(t - h)) / (h * h);
  return (std::conj(d1) * d2).imag() / std::pow(std::abs(d1), 3);
}

double ellipse_curvature(double a, double b, double t) {
  const double th = 2 * pi * t;
  return a * b / std::pow(a * a * std::sin(th) * std::sin(th) + b * b * std::cos(th) * std::cos(th), 1.5);
}

}  // namespace

TEST_SUITE("curve") {
  TEST_CASE("evaluation on circle and ellipse") {
    const auto circle = PlaneCurve::circle(1.0);
    CHECK(std::abs(circle.eval(0.0) - cplx(1, 0)) < 1e-15);
    CHECK(std::abs(circle.eval(0.25) - cplx(0, 1)) < 1e-15);
    CHECK(std::abs(PlaneCurve::ellipse(2, 1).eval(0.5) - cplx(-2, 0)) < 1e-15);
  }

  TEST_CASE("analytic derivatives") {
    const auto circle = PlaneCurve::circle(1.0);
    CHECK(std::abs(circle.derivative(0.0, 1) - cplx(0, 2 * pi)) < 1e-13);
    CHECK(std::abs(circle.derivative(0.0, 2) - cplx(-4 * pi * pi, 0)) < 1e-12);
    const auto ellipse = PlaneCurve::ellipse(2, 1);
    const double h = 1e-5;
    const cplx fd = (ellipse.eval(h) - ellipse.eval(-h)) / (2 * h);
    CHECK(std::abs(ellipse.derivative(0.0, 1) - fd) / std::abs(fd) < 1e-6);
    CHECK(std::abs(ellipse.derivative(0.0, 1) - cplx(0, 2 * pi)) < 1e-13);
    CHECK_THROWS_AS(ellipse.derivative(0.0, 3), GeometryError);
  }

  TEST_CASE("curvature of circles and ellipse") {
    for (double t : {0.0, 0.1, 0.37, 0.8}) CHECK(PlaneCurve::circle(1.0).curvature(t) == doctest::Approx(1.0).epsilon(1e-13));
    for (double r : {0.5, 3.0}) CHECK(PlaneCurve::circle(r).curvature(0.3) == doctest::Approx(1.0 / r).epsilon(1e-13));
    const auto ellipse = PlaneCurve::ellipse(2, 1);
    CHECK(ellipse.curvature(0.0) == doctest::Approx(2.0).epsilon(1e-13));
    for (double t : {0.05, 0.2, 0.61}) CHECK(ellipse.curvature(t) == doctest::Approx(ellipse_curvature(2, 1, t)).epsilon(1e-12));
  }

  TEST_CASE("curvature matches central differences at random parameters") {
    const CounterRng rng(5);
    for (const auto& c : fixtures::smooth_corpus())
      for (int i = 0; i < 100; ++i) {
        const double t = rng.uniform(i);
        const double exact = c.curvature(t);
        CHECK(std::abs(exact - curvature_oracle(c, t)) <= 1e-6 * std::abs(exact));
      }
  }

  TEST_CASE("signed area") {
    CHECK(PlaneCurve::circle(1.0).signed_area() == doctest::Approx(pi).epsilon(1e-15));
    CHECK(PlaneCurve::ellipse(2, 1).signed_area() == doctest::Approx(2 * pi).epsilon(1e-15));
    CHECK(PlaneCurve({1.0, 0.0, 0.0}).signed_area() == doctest::Approx(-pi).epsilon(1e-15));
    for (double r : {0.5, 1.0, 3.0})
      CHECK(std::abs(PlaneCurve::circle(r).signed_area() - pi * r * r) <= 1e-12 * pi * r * r);
  }

  TEST_CASE("winding number") {
    const auto ccw = PlaneCurve::circle(1.0);
    const PlaneCurve cw({1.0, 0.0, 0.0});
    CHECK(winding_number(ccw, 0.0) == 1);
    CHECK(winding_number(ccw, 3.0) == 0);
    CHECK(winding_number(cw, 0.0) == -1);
    const auto wobbly = fixtures::random_curve(3);
    for (double shift : {0.1, 0.5, 0.77}) {
      CHECK(winding_number(wobbly.shifted(shift), 0.0) == winding_number(wobbly, 0.0));
      CHECK(winding_number(wobbly.shifted(shift), 2.5) == 0);
    }
  }

  TEST_CASE("closest point and signed distance") {
    const auto circle = PlaneCurve::circle(1.0);
    auto cp = closest_point(circle, 2.0);
    CHECK(cp.t == doctest::Approx(0.0));
    CHECK(cp.dist == doctest::Approx(1.0));
    cp = closest_point(circle, cplx(0, 3));
    CHECK(cp.t == doctest::Approx(0.25));
    CHECK(cp.dist == doctest::Approx(2.0));
    cp = closest_point(circle, 0.0);
    CHECK(cp.t == 0.0);
    CHECK(cp.dist == doctest::Approx(1.0));
    CHECK(signed_distance(circle, 2.0) == doctest::Approx(1.0));
    CHECK(signed_distance(circle, 0.5) == doctest::Approx(-0.5));
    CHECK(signed_distance(circle, 1.0) == 0.0);
    CHECK(signed_distance(circle, 1.0 + 1e-12) == 0.0);
    CHECK(signed_distance(circle, 1.0 + 1e-12, Snap::exact) == doctest::Approx(1e-12).epsilon(1e-3));
  }

  TEST_CASE("closest point is a sampled global minimum") {
    const CounterRng rng(17);
    for (const auto& c : fixtures::smooth_corpus()) {
      for (int k = 0; k < 10; ++k) {
        const cplx p(rng.uniform(1000 + 2 * k, -2.5, 2.5), rng.uniform(1001 + 2 * k, -2.5, 2.5));
        const double d = closest_point(c, p).dist;
        for (int i = 0; i < 1000; ++i) CHECK_LE(d, std::abs(c.eval(rng.uniform(i)) - p) + 1e-12);
      }
    }
  }

  TEST_CASE("signed distance gradient is the outward normal") {
    const auto e = PlaneCurve::ellipse(2, 1);
    const auto sd = signed_distance_with_gradient(e, cplx(3, 0));
    CHECK(sd.value == doctest::Approx(1.0));
    CHECK(std::abs(sd.gradient - cplx(1, 0)) < 1e-12);
    const cplx p(0.3, 0.4);
    const double h = 1e-6;
    const auto g = signed_distance_with_gradient(e, p).gradient;
    CHECK(std::abs((signed_distance(e, p + h) - signed_distance(e, p - h)) / (2 * h) - g.real()) < 1e-6);
    CHECK(std::abs((signed_distance(e, p + cplx(0, h)) - signed_distance(e, p - cplx(0, h))) / (2 * h) - g.imag()) < 1e-6);
  }

  TEST_CASE("perturbation") {
    const auto circle = PlaneCurve::circle(1.0);
    CHECK(perturb(circle, 0.0, 1).coeffs() == circle.coeffs());
    const auto p = perturb(circle, 1e-3, 1);
    CHECK(p.coeffs() == perturb(circle, 1e-3, 1).coeffs());
    CHECK(p.coeffs() != perturb(circle, 1e-3, 2).coeffs());
    CHECK(is_immersed(p));
    CHECK(is_simple(p));
    double sup_df = 0.0;
    for (int i = 0; i < 4096; ++i) {
      const double t = i / 4096.0;
      sup_df = std::max(sup_df, std::abs(p.derivative(t, 1) - circle.derivative(t, 1)));
    }
    CHECK(sup_df <= 0.1);
    CHECK(sup_df <= perturbation_c1_bound(p.degree(), 1e-3));
  }

  TEST_CASE("validation rejects degenerate input") {
    CHECK_THROWS_AS(PlaneCurve({1.0}), GeometryError);
    CHECK_THROWS_AS(validate(PlaneCurve({0.0, 0.0, 0.0})), GeometryError);
    // Immersed, with small loops that cross the curve.
    CHECK_THROWS_AS(validate(PlaneCurve({0.0, 0.0, 0.0, 0.0, 0.5, 0.0, 1.0})), GeometryError);
    CHECK_THROWS_AS(PlaneCurve::circle(-1.0), GeometryError);
    CHECK_THROWS_AS(PlaneCurve::circle(std::nan("")), GeometryError);
    for (const auto& c : fixtures::smooth_corpus()) {
      CHECK(is_immersed(c));
      CHECK(is_simple(c));
      CHECK_NOTHROW(validate(c));
    }
  }

  TEST_CASE("orientation normalization") {
    const PlaneCurve cw({1.0, 0.0, 0.0});
    CHECK(cw.orientation() == -1);
    CHECK(cw.normalized_ccw().orientation() == 1);
    CHECK(cw.normalized_ccw().signed_area() == doctest::Approx(pi));
    const auto e = PlaneCurve::ellipse(2, 1);
    CHECK(std::abs(e.reversed().eval(0.1) - e.eval(-0.1)) < 1e-15);
    CHECK(std::abs(e.shifted(0.2).eval(0.1) - e.eval(0.3)) < 1e-14);
  }
}
