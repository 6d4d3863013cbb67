#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "makeev/cli.hpp"
#include "makeev/error.hpp"
#include "makeev/io.hpp"

using namespace makeev;
namespace fs = std::filesystem;

namespace {

const fs::path data_dir = MAKEEV_DATA_DIR;

std::string data(const char* name) { return (data_dir / name).string(); }

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "makeev_tests";
  fs::create_directories(dir);
  return dir / name;
}

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("curve specs") {
    using io::json;
    const auto c = io::curve_from_json(json::parse(R"({"circle": 2})"));
    CHECK(c.signed_area() == doctest::Approx(4 * fixtures::pi));
    const auto moved = io::curve_from_json(json::parse(R"({"circle": {"radius": 1, "center": [3, 4]}})"));
    CHECK(std::abs(moved.eval(0) - cplx(4, 4)) < 1e-15);
    const auto e = io::curve_from_json(json::parse(R"({"ellipse": {"a": 2, "b": 1}})"));
    CHECK(std::abs(e.eval(0) - cplx(2, 0)) < 1e-15);
    const auto f = io::curve_from_json(json::parse(R"({"fourier": [[0,0],[0,0],[1,0]], "name": "unit"})"));
    CHECK(f.name() == "unit");
    CHECK(f.signed_area() == doctest::Approx(fixtures::pi));
    const auto p = io::curve_from_json(io::read_json(data("pellipse.json")));
    CHECK(p.coeffs() == perturb(PlaneCurve::ellipse(2, 1), 1e-3, 7).coeffs());
    for (const char* bad : {R"({"square": 1})", R"([1, 2])", R"({"circle": "big"})", R"({"ellipse": [1]})",
                            R"({"fourier": [[1, 0]]})", R"({"fourier": [[0,0],[0,0],[1]]})", R"({"circle": -1})",
                            R"({"circle": 1, "perturb": 3})"})
      CHECK_THROWS_AS(io::curve_from_json(json::parse(bad)), GeometryError);
  }

  TEST_CASE("quadrangle specs") {
    using io::json;
    const auto q = io::quadrangle_from_json(io::read_json(data("square.json")));
    CHECK(q.b() == cplx(0, 1));
    CHECK_THROWS_AS(io::quadrangle_from_json(json::parse(R"({"points": [[1,0],[0,1],[-1,0]]})")), GeometryError);
    CHECK_THROWS_AS(io::quadrangle_from_json(io::read_json(data("not_concyclic.json"))), GeometryError);
    CHECK_THROWS_AS(io::read_json(data("missing.json")), GeometryError);
  }

  TEST_CASE("non-finite numbers are never serialized") {
    io::json doc{{"ok", 1.0}, {"nested", {{"bad", std::nan("")}}}};
    CHECK_THROWS_AS(io::dump(doc), GeometryError);
    doc["nested"]["bad"] = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(io::dump(doc), GeometryError);
    CHECK_NOTHROW(io::dump(io::json{{"fine", 1e-300}}));
  }
}

TEST_SUITE("cli") {
  TEST_CASE("inscribe on the circle") {
    const auto o = run({"inscribe", "--curve", data("circle.json"), "--quad", data("square.json")});
    CHECK(o.code == cli::ok);
    const auto doc = io::json::parse(o.out);
    CHECK(doc["alternative"] == 1);
    CHECK(doc["continuum"] == true);
  }

  TEST_CASE("non-concyclic quadrangle is a validation error naming the cross-ratio") {
    const auto o = run({"inscribe", "--curve", data("circle.json"), "--quad", data("not_concyclic.json")});
    CHECK(o.code == cli::validation);
    CHECK(o.err.find("cross-ratio") != std::string::npos);
    CHECK(o.out.empty());
  }

  TEST_CASE("areas on the perturbed ellipse") {
    const auto o = run({"areas", "--curve", data("pellipse.json"), "--quad", data("square.json")});
    REQUIRE(o.code == cli::ok);
    const auto doc = io::json::parse(o.out);
    const double sc = doc["S_C"];
    CHECK(sc == doctest::Approx(perturb(PlaneCurve::ellipse(2, 1), 1e-3, 7).signed_area()).epsilon(1e-15));
    for (const char* key : {"S_a", "S_b", "S_c", "S_d"}) CHECK(std::abs(doc[key].get<double>() - sc) <= 1e-5 * sc);
    CHECK(doc["max_deviation"].get<double>() <= 1e-5 * sc);
  }

  TEST_CASE("reports are byte-identical across runs") {
    const auto a = scratch("a.json"), b = scratch("b.json");
    for (const auto& p : {a, b})
      REQUIRE(run({"inscribe", "--curve", data("wobbly.json"), "--quad", data("kite.json"), "--json", p.string(),
                   "--seed", "3"})
                  .code == cli::ok);
    CHECK(slurp(a) == slurp(b));
    CHECK_FALSE(slurp(a).empty());
    const auto o1 = run({"osculate", "--curve", data("ellipse.json"), "--alpha", "2.0"});
    const auto o2 = run({"osculate", "--curve", data("ellipse.json"), "--alpha", "2.0"});
    CHECK(o1.code == cli::ok);
    CHECK(o1.out == o2.out);
  }

  TEST_CASE("trace, osculate and figures") {
    const auto svg = scratch("trace.svg");
    auto o = run({"trace", "--curve", data("ellipse.json"), "--quad", data("square.json"), "--svg", svg.string()});
    REQUIRE(o.code == cli::ok);
    auto doc = io::json::parse(o.out);
    CHECK(doc["vertical_index"] == 1);
    CHECK(doc["paths"][0].contains("period_shift"));
    CHECK(doc["paths"][0]["samples"][0].size() == 2);
    CHECK(slurp(svg).find("<polyline") != std::string::npos);

    const auto fig = scratch("osc.svg");
    o = run({"osculate", "--curve", data("ellipse.json"), "--alpha", "1.5707963267948966", "--svg", fig.string()});
    REQUIRE(o.code == cli::ok);
    doc = io::json::parse(o.out);
    CHECK(doc["count"].get<int>() >= 4);
    CHECK(doc["vertices"].size() == 4);
    CHECK(slurp(fig).find("<circle") != std::string::npos);

    const auto ins = scratch("ins.svg");
    CHECK(run({"inscribe", "--curve", data("ellipse.json"), "--quad", data("square.json"), "--svg", ins.string()}).code ==
          cli::ok);
    CHECK(slurp(ins).find("<polygon") != std::string::npos);

    o = run({"osculate", "--curve", data("circle.json"), "--alpha", "1"});
    REQUIRE(o.code == cli::ok);
    CHECK(io::json::parse(o.out)["continuum"] == true);
  }

  TEST_CASE("role rotation changes the labeling only") {
    const auto o = run({"inscribe", "--curve", data("ellipse.json"), "--quad", data("kite.json"), "--rotate-roles", "1"});
    REQUIRE(o.code == cli::ok);
    const auto doc = io::json::parse(o.out);
    CHECK(doc["quadrangle"][3][0].get<double>() == 1.0);
  }

  TEST_CASE("malformed input never crashes") {
    const auto junk = scratch("junk.json");
    write(junk, "{not json");
    const auto empty = scratch("empty.json");
    write(empty, "");
    const auto nan_curve = scratch("nan.json");
    write(nan_curve, R"({"fourier": [[0,0],[0,0],[NaN,0]]})");
    const auto tangle = scratch("tangle.json");
    write(tangle, R"({"fourier": [[0,0],[0,0],[0,0],[0,0],[0.5,0],[0,0],[1,0]]})");
    const auto sq = data("square.json");
    const std::vector<std::vector<std::string>> cases{
        {},
        {"nonsense"},
        {"inscribe"},
        {"inscribe", "--curve", junk.string(), "--quad", sq},
        {"inscribe", "--curve", empty.string(), "--quad", sq},
        {"inscribe", "--curve", nan_curve.string(), "--quad", sq},
        {"inscribe", "--curve", tangle.string(), "--quad", sq},
        {"inscribe", "--curve", data("circle.json"), "--quad", junk.string()},
        {"inscribe", "--curve", data("circle.json"), "--quad", sq, "--tol-report", "-1"},
        {"osculate", "--curve", data("ellipse.json"), "--alpha", "7"},
        {"osculate", "--curve", data("ellipse.json"), "--alpha", "x"},
        {"osculate", "--curve", data("wobbly.json")},
        {"sphere-ce"},
        {"sphere-ce", "spread", "--a", "0", "--b", "0.1"},
        {"sphere-ce", "build", "--params", junk.string()},
    };
    for (const auto& args : cases) {
      std::string joined;
      for (const auto& a : args) joined += a + " ";
      INFO(joined);
      const auto o = run(args);
      CHECK(o.code == cli::validation);
      CHECK_FALSE(o.err.empty());
    }
  }

  TEST_CASE("sphere subcommands") {
    const auto out = scratch("sphere.json");
    auto o = run({"sphere-ce", "build", "--params", data("sphere_params.json"), "--out", out.string()});
    CHECK(o.code == cli::ok);
    auto doc = io::json::parse(slurp(out));
    CHECK(doc["pass"] == true);
    for (const auto& c : doc["checks"]) {
      CHECK(c.contains("worst"));
      CHECK(c["samples"].get<int>() > 0);
    }
    const auto bad = scratch("bad_params.json");
    write(bad, R"({"a": 1, "b": 2, "d": 3})");
    CHECK(run({"sphere-ce", "build", "--params", bad.string()}).code == cli::validation);
    const auto weak = scratch("weak_params.json");
    write(weak, R"({"phi_exponent": 1})");
    CHECK(run({"sphere-ce", "build", "--params", weak.string()}).code == cli::numerical);

    o = run({"sphere-ce", "spread", "--a", "0.3", "--b", "0.5", "--starts", "4", "--field", "linear-z"});
    REQUIRE(o.code == cli::ok);
    doc = io::json::parse(o.out);
    CHECK(doc["min_spread"].get<double>() <= 1e-10);
    CHECK(doc["rotation"].size() == 3);
  }

  TEST_CASE("exit code mapping") {
    CHECK(cli::exit_code(ErrorKind::NotConcyclic) == cli::validation);
    CHECK(cli::exit_code(ErrorKind::InvalidInput) == cli::validation);
    CHECK(cli::exit_code(ErrorKind::TheoremViolation) == cli::numerical);
    CHECK(cli::exit_code(ErrorKind::StepCollapse) == cli::numerical);
  }
}
