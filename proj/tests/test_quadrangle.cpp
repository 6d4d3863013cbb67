#include <doctest.h>

#include "fixtures.hpp"
#include "makeev/error.hpp"

using namespace makeev;
using fixtures::pi;

TEST_SUITE("quadrangle") {
  TEST_CASE("shape ratios") {
    const Quadrangle square(1.0, cplx(0, 1), -1.0, cplx(0, -1));
    const auto sr = shape_ratios(square);
    CHECK(std::abs(sr.r - cplx(1, 1)) < 1e-15);
    CHECK(std::abs(sr.q - cplx(0, 1)) < 1e-15);
    CHECK(std::abs(square.a() + sr.r * (square.b() - square.a()) - square.c()) < 1e-15);
    CHECK(std::abs(square.a() + sr.q * (square.b() - square.a()) - square.d()) < 1e-15);

    const Quadrangle tri(1.0, std::polar(1.0, 2 * pi / 3), std::polar(1.0, 4 * pi / 3), 1.0);
    CHECK(std::abs(shape_ratios(tri).r - std::polar(1.0, pi / 3)) < 1e-15);
    CHECK(std::abs(shape_ratios(tri).q) < 1e-15);
  }

  TEST_CASE("reconstruction from ratios on random quadrangles") {
    const CounterRng rng(2);
    for (int i = 0; i < 100; ++i) {
      const auto q = fixtures::on_circle(rng.uniform(4 * i, 0, 2 * pi), rng.uniform(4 * i + 1, 0, 2 * pi),
                                         rng.uniform(4 * i + 2, 0, 2 * pi), rng.uniform(4 * i + 3, 0, 2 * pi), 1.7,
                                         cplx(0.3, -2));
      const auto sr = shape_ratios(q);
      const double scale = std::abs(q.b() - q.a());
      CHECK(std::abs(q.a() + sr.r * (q.b() - q.a()) - q.c()) <= 1e-12 * (1 + scale * std::abs(sr.r)));
      CHECK(std::abs(q.a() + sr.q * (q.b() - q.a()) - q.d()) <= 1e-12 * (1 + scale * std::abs(sr.q)));
    }
  }

  TEST_CASE("circumcenter") {
    CHECK(std::abs(circumcenter(1.0, cplx(0, 1), -1.0)) < 1e-15);
    CHECK(std::abs(circumcenter(0.0, 1.0, cplx(0, 1)) - cplx(0.5, 0.5)) < 1e-15);
    const cplx w(3, -7);
    CHECK(std::abs(circumcenter(w + 0.2, w + cplx(1, 3), w - 2.0) - (circumcenter(0.2, cplx(1, 3), -2.0) + w)) < 1e-13);
    CHECK_THROWS_AS(circumcenter(0.0, 1.0, 2.0), GeometryError);
  }

  TEST_CASE("similarities") {
    const SimilarityMap id;
    CHECK(apply(id, cplx(0.3, 0.7)) == cplx(0.3, 0.7));
    const auto s = similarity_from_pair(0.0, 1.0, 0.0, cplx(0, 2));
    CHECK(std::abs(s.alpha - cplx(0, 2)) < 1e-15);
    CHECK(std::abs(s.beta) < 1e-15);
    CHECK(std::abs(apply(s, 0.5) - cplx(0, 1)) < 1e-15);
    const cplx a(0.1, 0.2), b(-1, 3), a2(5, 5), b2(4, -1);
    CHECK(apply(similarity_from_pair(a, b, a2, b2), a) == a2);
    CHECK(s.determinant() == doctest::Approx(4.0));
    CHECK_THROWS_AS(similarity_from_pair(a, a, a2, b2), GeometryError);
  }

  TEST_CASE("validation") {
    CHECK_THROWS_AS(Quadrangle(1.0, cplx(0, 1), -1.0, cplx(0.5, -0.2)), GeometryError);
    try {
      Quadrangle(1.0, cplx(0, 1), -1.0, cplx(0.5, -0.2));
    } catch (const GeometryError& e) {
      CHECK(e.kind() == ErrorKind::NotConcyclic);
      CHECK(std::string(e.what()).find("cross-ratio") != std::string::npos);
    }
    CHECK_THROWS_AS(Quadrangle(0.0, 1.0, 2.0, 3.0), GeometryError);
    CHECK_THROWS_AS(Quadrangle(1.0, 1.0, -1.0, cplx(0, 1)), GeometryError);
    CHECK_NOTHROW(Quadrangle(1.0, cplx(0, 1), -1.0, 1.0));
  }

  TEST_CASE("similarity images stay concyclic with mapped circumdata") {
    const CounterRng rng(4);
    for (int i = 0; i < 100; ++i) {
      auto u = [&](int k, double lo, double hi) { return rng.uniform(10 * i + k, lo, hi); };
      const auto q = fixtures::on_circle(u(0, 0, 2 * pi), u(1, 0, 2 * pi), u(2, 0, 2 * pi), u(3, 0, 2 * pi),
                                         u(4, 0.2, 3), cplx(u(5, -2, 2), u(6, -2, 2)));
      const SimilarityMap sigma{std::polar(u(7, 0.1, 5), u(8, 0, 2 * pi)), cplx(u(9, -5, 5), u(7, -5, 5))};
      const Quadrangle image = q.mapped(sigma);
      CHECK(image.concyclic_defect() <= 1e-9);
      const auto before = circumdata(q), after = circumdata(image);
      CHECK(std::abs(after.center - sigma(before.center)) <= 1e-9 * (1 + std::abs(after.center)));
      CHECK(after.radius == doctest::Approx(std::abs(sigma.alpha) * before.radius).epsilon(1e-9));
      for (const cplx& off : after.offsets) CHECK(std::abs(off) == doctest::Approx(after.radius).epsilon(1e-9));
    }
  }

  TEST_CASE("role rotation and cross-ratio") {
    const auto q = fixtures::on_circle(0.0, 1.0, 2.5, 4.0);
    const auto r = q.rotated_roles(1);
    CHECK(r.a() == q.b());
    CHECK(r.d() == q.a());
    CHECK(q.rotated_roles(4).points() == q.points());
    CHECK(std::abs(cross_ratio(q.a(), q.b(), q.c(), q.d()).imag()) < 1e-12);
  }
}
