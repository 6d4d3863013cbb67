#include <doctest.h>

#include "fixtures.hpp"
#include "makeev/error.hpp"
#include "makeev/variety.hpp"

using namespace makeev;
using fixtures::pi;

namespace {

const cplx equilateral = std::polar(1.0, pi / 3);

PlaneCurve perturbed_ellipse() { return perturb(PlaneCurve::ellipse(2, 1), 1e-3, 7); }

const VarietyPath& periodic_of(const std::vector<VarietyPath>& paths) {
  for (const auto& p : paths)
    if (p.kind == PathKind::periodic) return p;
  FAIL("no periodic component");
  return paths.front();
}

}  // namespace

TEST_SUITE("variety") {
  TEST_CASE("residual of the rotating equilateral triangle") {
    const auto circle = PlaneCurve::circle(1.0);
    for (double t : {0.0, 0.13, 0.5, 0.91}) CHECK(std::abs(residual(circle, equilateral, t, 1.0 / 3)) < 1e-12);
    // c' = 1 - 2 e^{i pi/3} = -i sqrt 3, outside.
    CHECK(residual(circle, equilateral, 0.0, 0.5) == doctest::Approx(std::sqrt(3.0) - 1).epsilon(1e-12));
    const auto wobbly = fixtures::random_curve(5);
    for (double s : {0.1, 0.4, 0.8}) CHECK(std::abs(residual(wobbly, 0.0, 0.3, s)) < 1e-12);
  }

  TEST_CASE("residual derivatives match central differences") {
    const TriangleVariety var(fixtures::random_curve(8), cplx(0.7, 0.4));
    const double h = 1e-6;
    for (auto [t, s] : {std::pair{0.1, 0.3}, {0.6, 0.55}, {0.85, 0.2}}) {
      const auto v = var.evaluate(t, s);
      CHECK(v.f == doctest::Approx(var.residual(t, s)).epsilon(1e-14));
      CHECK(v.ft == doctest::Approx((var.residual(t + h, s) - var.residual(t - h, s)) / (2 * h)).epsilon(1e-6));
      CHECK(v.fs == doctest::Approx((var.residual(t, s + h) - var.residual(t, s - h)) / (2 * h)).epsilon(1e-6));
    }
  }

  TEST_CASE("seed points") {
    const auto circle = PlaneCurve::circle(1.0);
    const auto seeds = seed_points(circle, equilateral);
    REQUIRE_FALSE(seeds.empty());
    std::size_t on_family = 0;
    for (const auto& p : seeds)
      if (std::abs(p.s - 1.0 / 3) < 1e-8) ++on_family;
    CHECK(on_family > 0);
    for (const auto& p : seeds) CHECK(std::abs(residual(circle, equilateral, p.t, p.s)) < 1e-10);
    const auto again = seed_points(circle, equilateral);
    REQUIRE(again.size() == seeds.size());
    for (std::size_t i = 0; i < seeds.size(); ++i) {
      CHECK(again[i].t == seeds[i].t);
      CHECK(again[i].s == seeds[i].s);
    }
    try {
      seed_points(circle, 10.0);
      FAIL("expected NoSeedsFound");
    } catch (const GeometryError& e) {
      CHECK(e.kind() == ErrorKind::NoSeedsFound);
    }
  }

  TEST_CASE("tracing the circle family") {
    const auto circle = PlaneCurve::circle(1.0);
    const TriangleVariety var(circle, equilateral);
    const auto path = var.trace({0.0, 1.0 / 3});
    CHECK(path.kind == PathKind::periodic);
    CHECK(std::abs(path.period_shift) == 1);
    for (const auto& p : path.samples) CHECK(std::abs(p.s - 1.0 / 3) < 1e-9);

    const auto norm = var.normalize_period(path.period_shift < 0 ? reversed(path) : path);
    REQUIRE(norm.samples.size() == static_cast<std::size_t>(var.options().n_path));
    const double t0 = norm.samples.front().t;
    for (std::size_t i = 0; i < norm.samples.size(); ++i) {
      const double u = static_cast<double>(i) / static_cast<double>(norm.samples.size());
      CHECK(std::abs(norm.samples[i].t - t0 - u) < 1e-9);
      CHECK(std::abs(norm.samples[i].s - 1.0 / 3) < 1e-9);
    }
    CHECK(norm.endpoint().t - norm.samples.front().t == static_cast<double>(norm.period_shift));
    const auto twice = var.normalize_period(norm);
    REQUIRE(twice.samples.size() == norm.samples.size());
    for (std::size_t i = 0; i < norm.samples.size(); ++i) {
      CHECK(std::abs(twice.samples[i].t - norm.samples[i].t) < 1e-12);
      CHECK(std::abs(twice.samples[i].s - norm.samples[i].s) < 1e-12);
    }
    CHECK(var.vertical_index({path}, 0.0) == 1);
    CHECK(var.vertical_index({reversed(path)}, 0.0) == 1);
  }

  TEST_CASE("perturbed ellipse: periodic component with margin, cross-checked by a residual scan") {
    const auto curve = perturbed_ellipse();
    const TriangleVariety var(curve, equilateral);
    const auto paths = var.trace_all();
    const auto& path = periodic_of(paths);
    MESSAGE("s margin " << path.s_margin);
    CHECK(path.s_margin >= 1e-3);
    double lo = 1.0, hi = 0.0;
    for (const auto& p : path.samples) {
      lo = std::min(lo, p.s);
      hi = std::max(hi, p.s);
      CHECK(std::abs(var.residual(p.t, p.s)) <= var.options().tol_trace);
    }
    CHECK(lo >= 1e-3);
    CHECK(hi <= 1 - 1e-3);
    // Independent scan of F along s at traced columns: a sign change within two cells.
    const int n = 1024;
    for (std::size_t k = 0; k < path.samples.size(); k += path.samples.size() / 40) {
      const auto p = path.samples[k];
      const int cell = static_cast<int>(p.s * n);
      bool found = false;
      for (int j = std::max(1, cell - 2); j <= std::min(n - 2, cell + 2) && !found; ++j)
        found = var.residual(p.t, j / double(n)) * var.residual(p.t, (j + 1) / double(n)) <= 0.0;
      CHECK(found);
    }
  }

  TEST_CASE("vertical index is one on the corpus") {
    for (const auto& curve : {PlaneCurve::ellipse(2, 1), fixtures::random_curve(11), perturbed_ellipse()}) {
      const TriangleVariety var(curve, equilateral);
      const auto paths = var.trace_all();
      const CounterRng rng(31);
      for (int i = 0; i < 20; ++i) CHECK(var.vertical_index(paths, rng.uniform(i)) == 1);
      for (const auto& p : paths)
        if (p.kind == PathKind::loop)
          for (int i = 0; i < 5; ++i) CHECK(var.vertical_index({p}, rng.uniform(100 + i)) == 0);
    }
  }

  TEST_CASE("a bounded loop has index zero") {
    const TriangleVariety var(PlaneCurve::ellipse(2, 1), cplx(0.5, 0.1));
    VarietyPath loop;
    loop.kind = PathKind::loop;
    for (int i = 0; i < 200; ++i) loop.samples.push_back({0.5 + 0.1 * std::cos(2 * pi * i / 200), 0.5 + 0.1 * std::sin(2 * pi * i / 200)});
    for (double t : {0.45, 0.5123, 0.58}) CHECK(var.vertical_index({loop}, t) == 0);
  }

  TEST_CASE("deck equivariance") {
    const auto curve = fixtures::random_curve(12);
    const TriangleVariety var(curve, equilateral);
    const auto seeds = var.seed_points();
    REQUIRE_FALSE(seeds.empty());
    const auto seed = seeds.front();
    const auto base = var.trace(seed);
    const auto lifted = var.trace(seed.shifted(1));
    REQUIRE(base.samples.size() == lifted.samples.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < base.samples.size(); ++i)
      worst = std::max({worst, std::abs(lifted.samples[i].t - base.samples[i].t - 1.0),
                        std::abs(lifted.samples[i].s - base.samples[i].s)});
    CHECK(worst <= 1e-9);
    CHECK(lifted.period_shift == base.period_shift);
  }
}
