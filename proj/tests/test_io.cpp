#include "bcldil/io.hpp"

#include "bcldil/generate.hpp"
#include "bcldil/opcore.hpp"
#include "doctest.h"
#include "json.hpp"

#include <cmath>
#include <random>

using namespace bcldil;

TEST_CASE("parseMatrixText") {
  SUBCASE("fixture pair") {
    MatrixPair pair = parseMatrixText(R"({"T1": [[0.5]], "T2": [[0.5]]})");
    CHECK(pair.t1(0, 0) == Complex(0.5, 0));
    CHECK(pair.t2(0, 0) == Complex(0.5, 0));
  }
  SUBCASE("complex entries as [re, im]") {
    MatrixPair pair = parseMatrixText(R"({"T1": [[[0, 1]]], "T2": [[0]]})");
    CHECK(pair.t1(0, 0) == Complex(0, 1));
  }
  SUBCASE("ragged rows rejected") {
    try {
      parseMatrixText(R"({"T1": [[0.1, 0.2], [0.3]], "T2": [[0.1, 0], [0, 0.1]]})");
      FAIL("expected ParseError");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::ParseError);
    }
  }
  SUBCASE("non-square rejected") {
    try {
      parseMatrixText(R"({"T1": [[0.1, 0.2]], "T2": [[0.1, 0.2]]})");
      FAIL("expected NonSquare");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NonSquare);
    }
  }
  SUBCASE("size mismatch between factors rejected") {
    try {
      parseMatrixText(R"({"T1": [[0.1]], "T2": [[0.1, 0], [0, 0.1]]})");
      FAIL("expected SizeMismatch");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::SizeMismatch);
    }
  }
  SUBCASE("malformed json rejected with ParseError") {
    CHECK_THROWS_AS(parseMatrixText("{\"T1\": [[0.5], "), Error);
  }
}

TEST_CASE("parsePolynomial") {
  SUBCASE("product monomial") {
    BivariatePolynomial p = parsePolynomial("z1*z2");
    CHECK(p.at(1, 1) == Complex(1, 0));
  }
  SUBCASE("mixed grammar") {
    BivariatePolynomial p = parsePolynomial("1 - 2*z1^2 + (0,1)*z2");
    CHECK(p.at(0, 0) == Complex(1, 0));
    CHECK(p.at(2, 0) == Complex(-2, 0));
    CHECK(p.at(0, 1) == Complex(0, 1));
  }
  SUBCASE("duplicate monomials merge") {
    BivariatePolynomial p = parsePolynomial("z1 + z1");
    CHECK(p.at(1, 0) == Complex(2, 0));
  }
  SUBCASE("implicit multiplication and explicit exponent 0/1") {
    BivariatePolynomial p = parsePolynomial("2z1^1*z2^0 + 0.5 z2");
    CHECK(p.at(1, 0) == Complex(2, 0));
    CHECK(p.at(0, 1) == Complex(0.5, 0));
  }
  SUBCASE("scientific notation coefficients") {
    BivariatePolynomial p = parsePolynomial("1e-3*z2^2");
    CHECK(p.at(0, 2) == Complex(1e-3, 0));
  }
  SUBCASE("syntax errors carry a position") {
    try {
      parsePolynomial("z1 + + ");
      FAIL("expected SyntaxError");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::SyntaxError);
      CHECK(std::string(e.what()).find("position") != std::string::npos);
    }
    CHECK_THROWS_AS(parsePolynomial("z3 + 1"), Error);
    CHECK_THROWS_AS(parsePolynomial(""), Error);
  }
  SUBCASE("degree cap enforced") {
    try {
      parsePolynomial("z1^17");
      FAIL("expected DegreeCapExceeded");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::DegreeCapExceeded);
    }
  }
  SUBCASE("evaluation agrees with a hand expansion") {
    BivariatePolynomial p = parsePolynomial("2 - z1*z2 + (1,-1)*z1^2*z2");
    Complex z1(0.3, 0.2), z2(-0.1, 0.5);
    Complex expect = Complex(2, 0) - z1 * z2 + Complex(1, -1) * z1 * z1 * z2;
    CHECK(std::abs(p.eval(z1, z2) - expect) < 1e-15);
  }
}

TEST_CASE("json writer emits deterministic parseable output") {
  auto build = [] {
    JsonWriter w;
    w.beginObject();
    w.key("name").value("report");
    w.key("value").value(1.0 / 3.0);
    w.key("count").value(42);
    w.key("flag").value(true);
    w.key("entry").value(Complex(0.5, -0.25));
    w.key("matrix").value(Matrix(Matrix::Identity(2, 2)));
    w.key("list").beginArray().value(1.5).value("two").endArray();
    w.endObject();
    return w.take();
  };
  std::string a = build();
  std::string b = build();
  CHECK(a == b);

  nlohmann::json parsed = nlohmann::json::parse(a);
  CHECK(parsed["name"] == "report");
  CHECK(parsed["value"].get<double>() == 1.0 / 3.0);  // 17 digits round-trip
  CHECK(parsed["count"] == 42);
  CHECK(parsed["entry"][1].get<double>() == -0.25);
  CHECK(parsed["matrix"][1][1][0].get<double>() == 1.0);
}

TEST_CASE("doubles round-trip through 17 significant digits") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    double mantissa = static_cast<double>(rng()) / static_cast<double>(rng.max());
    int exp = static_cast<int>(rng() % 40) - 20;
    double v = std::ldexp(mantissa * 2 - 1, exp);
    double back = std::strtod(formatDouble(v).c_str(), nullptr);
    CHECK(back == v);
  }
}

TEST_CASE("variety point csv round-trips exactly") {
  VarietyPointSet set;
  set.kind = VarietyKind::Boundary;
  std::mt19937_64 rng(17);
  auto unit = [&rng] { return static_cast<double>(rng()) / static_cast<double>(rng.max()) - 0.5; };
  for (int i = 0; i < 20; ++i) {
    VarietyPoint pt;
    pt.lambda1 = Complex(unit(), unit());
    pt.lambda2 = Complex(unit(), unit());
    pt.sourceZ = Complex(unit(), unit());
    pt.residual1 = std::abs(unit()) * 1e-11;
    pt.residual2 = std::abs(unit()) * 1e-11;
    set.points.push_back(pt);
  }
  std::string csv = pointsToCsv(set);
  auto back = parsePointsCsv(csv);
  REQUIRE(back.size() == set.points.size());
  for (size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].lambda1 == set.points[i].lambda1);
    CHECK(back[i].lambda2 == set.points[i].lambda2);
    CHECK(back[i].sourceZ == set.points[i].sourceZ);
    CHECK(back[i].residual1 == set.points[i].residual1);
    CHECK(back[i].residual2 == set.points[i].residual2);
  }
}

TEST_CASE("random pair generator contracts") {
  for (int trial = 0; trial < 10; ++trial) {
    auto [t1, t2] = randomCommutingPair(2 + trial % 7, trial);
    CHECK(opNorm(t1 * t2 - t2 * t1) <= 1e-12);
    CHECK(opNorm(t1) <= 1.0 + 1e-12);
    CHECK(opNorm(t2) <= 1.0 + 1e-12);
    CHECK(spectralRadius(t1 * t2) <= 0.9 + 1e-10);
  }
  auto [a1, a2] = randomCommutingPair(4, 0);
  auto [b1, b2] = randomCommutingPair(4, 0);
  CHECK((a1.array() == b1.array()).all());
  CHECK((a2.array() == b2.array()).all());
  auto [c1, c2] = randomCommutingPair(4, 1);
  CHECK(!(a1.array() == c1.array()).all());
  (void)a2;
  (void)b2;
  (void)c2;
}
