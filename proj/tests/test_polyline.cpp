#include <doctest.h>

#include <algorithm>

#include "fixtures.hpp"
#include "makeev/kernels.hpp"
#include "makeev/polyline.hpp"
#include "makeev/variety.hpp"

using namespace makeev;
using fixtures::pi;

TEST_SUITE("polyline") {
  TEST_CASE("segment intersection") {
    auto x = intersect_segments(0.0, cplx(2, 2), cplx(0, 2), cplx(2, 0));
    REQUIRE(x);
    CHECK(std::abs(x->point - cplx(1, 1)) < 1e-15);
    CHECK(x->lambda == doctest::Approx(0.5));
    CHECK(x->mu == doctest::Approx(0.5));
    CHECK_FALSE(intersect_segments(0.0, 1.0, cplx(0, 1), cplx(1, 1)));
    CHECK_FALSE(intersect_segments(0.0, 1.0, cplx(2, -1), cplx(2, 1)));
    CHECK(intersect_segments(0.0, 1.0, cplx(1, 0), cplx(1, 1)));
  }

  TEST_CASE("self intersections of a figure eight") {
    std::vector<cplx> pts;
    const int n = 400;
    for (int i = 0; i < n; ++i) {
      const double th = 2 * pi * (i + 0.5) / n;
      pts.emplace_back(std::sin(th), std::sin(th) * std::cos(th));
    }
    const auto xs = self_intersections(pts, true);
    REQUIRE(xs.size() == 1);
    CHECK(std::abs(xs[0].crossing.point) < 1e-12);
    // The crossing sits on the closing segment.
    CHECK(self_intersections(pts, false).empty());
    std::rotate(pts.begin(), pts.begin() + 50, pts.end());
    CHECK(self_intersections(pts, false).size() == 1);
  }

  TEST_CASE("convex polygon has no self intersections") {
    std::vector<cplx> pts;
    for (int i = 0; i < 1000; ++i) pts.push_back(std::polar(1.0, 2 * pi * i / 1000));
    CHECK(self_intersections(pts, true).empty());
  }

  TEST_CASE("spatial hash agrees with brute force") {
    const CounterRng rng(9);
    std::vector<cplx> pts;
    for (int i = 0; i < 120; ++i) pts.emplace_back(rng.uniform(2 * i), rng.uniform(2 * i + 1));
    std::size_t brute = 0;
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 2; j < n; ++j) {
        if (i == 0 && j == n - 1) continue;
        if (intersect_segments(pts[i], pts[i + 1], pts[j], pts[(j + 1) % n])) ++brute;
      }
    CHECK(self_intersections(pts, true).size() == brute);
  }

  TEST_CASE("shoelace area and turning number") {
    const std::vector<cplx> square{0.0, 1.0, cplx(1, 1), cplx(0, 1)};
    CHECK(polygon_area(square) == doctest::Approx(1.0));
    const std::vector<cplx> reversed(square.rbegin(), square.rend());
    CHECK(polygon_area(reversed) == doctest::Approx(-1.0));
    std::vector<cplx> twice;
    for (int i = 0; i < 100; ++i) twice.push_back(std::polar(1.0, 4 * pi * i / 100));
    CHECK(turning_number(twice) == doctest::Approx(2.0));
    CHECK(orient(0.0, 1.0, cplx(0, 1)) == doctest::Approx(1.0));
  }
}

TEST_SUITE("kernels") {
  TEST_CASE("parallel tabulation reproduces the serial reference") {
    auto fn = [](std::size_t i) { return std::sin(0.001 * static_cast<double>(i)) * static_cast<double>(i); };
    CHECK(kernels::tabulate_parallel<double>(100000, fn) == kernels::tabulate_serial<double>(100000, fn));
  }

  TEST_CASE("residual grid is identical under both policies") {
    const TriangleVariety var(fixtures::random_curve(21), std::polar(1.0, pi / 3));
    CHECK(var.residual_grid(Exec::serial) == var.residual_grid(Exec::parallel));
  }
}
