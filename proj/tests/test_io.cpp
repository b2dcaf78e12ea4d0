#include <doctest.h>

#include "extconv/form_function.hpp"
#include "extconv/io.hpp"
#include "support.hpp"

using namespace extconv;

namespace {

FormFunction fn(const char* text) { return FormFunction::parse(Json::parse(text)); }

double at(const KForm<double>& x, std::initializer_list<int> idx) { return x.at(MultiIndex(idx, x.n())); }

}  // namespace

TEST_CASE("rational text is decimal, never octal") {
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("0.05") == Rational(1, 20));
  CHECK(parse_rational("007") == 7);
  CHECK(parse_rational("-010/02") == -5);
  CHECK(parse_rational(".5") == Rational(1, 2));
  CHECK_THROWS_AS(parse_rational("0x10"), DomainError);
  CHECK_THROWS_AS(parse_rational("."), DomainError);
}

TEST_CASE("form JSON") {
  const auto j = Json::parse(R"({"n":4,"k":2,"coeffs":{"1,2":"3/2","3,4":"-1"}})");
  const auto x = form_from_json<Rational>(j);
  CHECK(x.at(MultiIndex({1, 2}, 4)) == Rational(3, 2));
  CHECK(x.at(MultiIndex({3, 4}, 4)) == -1);
  CHECK(x.at(MultiIndex({1, 3}, 4)) == 0);
  CHECK(form_to_json(x) == j);
  CHECK(form_to_json(x).dump() == R"({"n":4,"k":2,"coeffs":{"1,2":"3/2","3,4":"-1"}})");

  const auto d = form_from_json<double>(j);
  CHECK(at(d, {1, 2}) == 1.5);
  CHECK(form_to_json(d).dump() == R"({"n":4,"k":2,"coeffs":{"1,2":1.5,"3,4":-1.0}})");

  for (int trial = 0; trial < 20; ++trial) {
    const auto r = testing::random_form(5, 3);
    CHECK(form_from_json<Rational>(Json::parse(form_to_json(r).dump())) == r);
  }

  CHECK(form_from_json<Rational>(Json::parse(R"({"n":3,"k":1,"coeffs":{"2":0.25}})")).at(MultiIndex({2}, 3)) ==
        Rational(1, 4));
  CHECK(form_from_json<Rational>(Json::parse(R"({"n":3,"k":1,"coeffs":{"2":7}})")).at(MultiIndex({2}, 3)) == 7);
  CHECK_THROWS_AS(form_from_json<Rational>(Json::parse(R"({"n":4,"k":2,"coeffs":{"1,2,3":"1"}})")), DomainError);
  CHECK_THROWS_AS(form_from_json<Rational>(Json::parse(R"({"n":4,"k":2,"coeffs":{"2,1":"1"}})")), DomainError);
  CHECK_THROWS_AS(form_from_json<Rational>(Json::parse(R"({"n":4,"k":2,"coeffs":{"1,5":"1"}})")), DomainError);
  CHECK_THROWS_AS(form_from_json<Rational>(Json::parse(R"({"n":4,"k":2,"coeffs":{"1,2":"x"}})")), DomainError);
  CHECK_THROWS_AS(form_from_json<Rational>(Json::parse(R"({"k":2})")), DomainError);
  CHECK_THROWS_AS(form_from_json<Rational>(Json::parse(R"([1,2])")), DomainError);
}

TEST_CASE("shape-matrix JSON") {
  const auto j = Json::parse(R"({"n":3,"k":2,"rows":["1","2","3"],"data":[[1,"1/2",0],[0,1,0],[0,0,"-3"]]})");
  const auto x = matrix_from_json<Rational>(j);
  CHECK(x(0, 1) == Rational(1, 2));
  CHECK(x(2, 2) == -3);
  const auto back = matrix_to_json(x);
  CHECK(back.dump() ==
        R"({"n":3,"k":2,"rows":["1","2","3"],"data":[["1","1/2","0"],["0","1","0"],["0","0","-3"]]})");
  CHECK(matrix_from_json<Rational>(back) == x);

  const auto no_labels = Json::parse(R"({"n":2,"k":2,"data":[[0,5],[3,0]]})");
  CHECK(matrix_from_json<Rational>(no_labels)(0, 1) == 5);
  CHECK_THROWS_AS(matrix_from_json<Rational>(Json::parse(R"({"n":2,"k":2,"data":[[0,5]]})")), DomainError);
  CHECK_THROWS_AS(matrix_from_json<Rational>(Json::parse(R"({"n":2,"k":2,"data":[[0,5],[3]]})")), DomainError);
  CHECK_THROWS_AS(matrix_from_json<Rational>(Json::parse(R"({"n":2,"k":2,"rows":["2","1"],"data":[[0,5],[3,0]]})")),
                  DomainError);
  CHECK_THROWS_AS(matrix_from_json<Rational>(Json::parse(R"({"n":2,"k":3,"data":[]})")), DomainError);
}

TEST_CASE("minor table and polynomial form JSON") {
  ShapeMatrix<Rational> x(3, 2, {1, 2, 3, 4, 5, 6, 7, 8, 9});
  const auto j = minors_to_json(adjugate(x, 2));
  CHECK(j["rows"][0] == "1|2");
  CHECK(j["cols"][0] == "1,2");
  CHECK(j["data"][0][0] == "-3");

  const auto p = poly_form_from_json(Json::parse(R"({"n":2,"k":1,"coeffs":{"1":"x2","2":"3/2*x1^2"}})"));
  CHECK(p.at(MultiIndex({2}, 2)).to_string() == "3/2*x1^2");
  CHECK(poly_form_to_json(p).dump() == R"({"n":2,"k":1,"coeffs":{"1":"x2","2":"3/2*x1^2"}})");
  CHECK_THROWS_AS(poly_form_from_json(Json::parse(R"({"n":2,"k":1,"coeffs":{"1":"x3"}})")), DomainError);
}

TEST_CASE("function expressions evaluate like hand-written formulas") {
  const auto pf = fn(R"({"n":4,"k":2,"expr":{"op":"inner","form":"e1234","arg":{"op":"wedge_pow","s":2,"arg":"xi"}}})");
  const auto norm = fn(R"({"n":4,"k":2,"expr":{"op":"norm2","arg":"xi"}})");
  const auto mixed = fn(R"({"n":4,"k":2,"expr":{"op":"add","args":[
      {"op":"const","value":"7/2"},
      {"op":"mul","args":[{"op":"abs","arg":{"op":"inner","form":"e1,3","arg":"xi"}},{"op":"const","value":2}]},
      {"op":"neg","arg":{"op":"pow","p":3,"arg":{"op":"inner","form":{"k":2,"coeffs":{"2,4":"1/2"}},"arg":"xi"}}},
      {"op":"scale","c":"-1","arg":{"op":"inner","form":"e1234",
                                     "arg":{"op":"wedge","args":["xi",{"op":"scale","c":3,"arg":"xi"}]}}}]}})");
  for (int trial = 0; trial < 20; ++trial) {
    const auto x = testing::random_form(4, 2);
    const auto c = [&](int i, int j) { return x.at(MultiIndex({i, j}, 4)); };
    const Rational pfaffian = c(1, 2) * c(3, 4) - c(1, 3) * c(2, 4) + c(1, 4) * c(2, 3);
    CHECK(pf(x) == 2 * pfaffian);
    Rational sq = 0;
    for (const auto& v : x.coeffs()) sq += v * v;
    CHECK(norm(x) == sq);
    const Rational half24 = c(2, 4) / 2;
    CHECK(mixed(x) == Rational(7, 2) + 2 * abs(c(1, 3)) - half24 * half24 * half24 - 6 * pfaffian);
    CHECK(mixed(x.map([](const Rational& q) { return q.get_d(); })) == doctest::Approx(mixed(x).get_d()));
  }
}

TEST_CASE("function builders and round trip") {
  const auto f = norm_squared_function(3, 1, -1);
  const KForm<Rational> x(3, 1, {1, 2, 3});
  CHECK(f(x) == -14);
  CHECK(FormFunction::parse(f.to_json()).to_json() == f.to_json());

  const auto q = quasiaffine_function(4, 2, {KForm<Rational>::scalar(4, 5), KForm<Rational>(4, 2),
                                             KForm<Rational>::basis(MultiIndex({1, 2, 3, 4}, 4))});
  const auto y = testing::random_form(4, 2);
  CHECK(q(y) == 5 + wedge(y, y).at(MultiIndex({1, 2, 3, 4}, 4)));
  CHECK_THROWS_AS(quasiaffine_function(4, 2, {KForm<Rational>(4, 1)}), DomainError);
}

TEST_CASE("malformed function expressions") {
  const char* bad[] = {
      R"({"n":4,"k":2,"expr":"xi"})",
      R"({"n":4,"k":2,"expr":"eta"})",
      R"({"n":4,"k":2,"expr":{"op":"sqrt","arg":"xi"}})",
      R"({"n":4,"k":2,"expr":{"op":"inner","form":"e123","arg":"xi"}})",
      R"({"n":4,"k":2,"expr":{"op":"inner","form":"e15","arg":"xi"}})",
      R"({"n":4,"k":2,"expr":{"op":"inner","form":"f12","arg":"xi"}})",
      R"({"n":4,"k":2,"expr":{"op":"norm2"}})",
      R"({"n":4,"k":2,"expr":{"op":"abs","arg":"xi"}})",
      R"({"n":4,"k":2,"expr":{"op":"mul","args":["xi","xi"]}})",
      R"({"n":4,"k":2,"expr":{"op":"add","args":[{"op":"const","value":1},{"op":"norm2","arg":"xi"},"xi"]}})",
      R"({"n":4,"k":2,"expr":{"op":"add","args":[]}})",
      R"({"n":4,"k":2,"expr":{"op":"pow","p":-1,"arg":{"op":"const","value":1}}})",
      R"({"n":4,"k":2,"expr":{"op":"const","value":"1/0"}})",
      R"({"n":4,"k":5,"expr":{"op":"const","value":1}})",
      R"({"n":4,"expr":{"op":"const","value":1}})",
      R"({"n":4,"k":2})",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS(fn(text), DomainError);
  }
  const auto f = fn(R"({"n":4,"k":2,"expr":{"op":"norm2","arg":"xi"}})");
  CHECK_THROWS_AS(f(KForm<Rational>(4, 1)), DomainError);
}
