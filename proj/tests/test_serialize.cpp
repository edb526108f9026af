#include "betadd/serialize.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace betadd;

namespace {

QBeta random_qbeta(std::mt19937_64& rng) {
  const auto r = [&rng] {
    return Rational(int64_t(rng() % 20001) - 10000, int64_t(rng() % 9999) + 1);
  };
  return {r(), r()};
}

}  // namespace

TEST_CASE("exact values round-trip through json") {
  std::mt19937_64 rng(60902);
  for (int i = 0; i < 1000; ++i) {
    const QBeta x = random_qbeta(rng);
    const Json j = to_json(x);
    CHECK(qbeta_from_json(j) == x);
  }
}

TEST_CASE("large coefficients survive the string encoding") {
  const QBeta x = QBeta::beta_pow(120) + QBeta{Rational(1, 3)};
  CHECK(qbeta_from_json(to_json(x)) == x);
  const Json j = to_json(x);
  CHECK(j.at("b_num").get<std::string>() == "5358359254990966640871840");  // fib(120)
}

TEST_CASE("decimal tag matches the requested digit count") {
  const Json j = to_json(QBeta::beta(), 12);
  CHECK(j.at("decimal").get<std::string>() == "1.618033988750");
  CHECK(j.at("decimal_digits").get<std::size_t>() == 12);
  CHECK(j.at("float").get<double>() == Catch::Approx(1.6180339887498949));
}

TEST_CASE("cylinder records carry the documented fields") {
  const Json j = to_json(cylinder("200"));
  CHECK(j.at("block") == "200");
  CHECK(j.at("rank") == 3);
  CHECK(j.at("full") == true);
  CHECK(j.at("empty") == false);
  CHECK(qbeta_from_json(j.at("left")) == two_over_beta());
}

TEST_CASE("state and tower records") {
  const RState s{QBeta{Rational(1, 2)}, QBeta{Rational(1, 4)}, 2, 3};
  const Json js = to_json(s);
  CHECK(js.at("j") == 2);
  CHECK(js.at("n") == 3);
  CHECK(qbeta_from_json(js.at("x")) == s.x);

  const Json jp = to_json(TowerPoint{1, 2});
  CHECK(qbeta_from_json(jp.at("y")) == QBeta(2));
}

TEST_CASE("density records expose exact and float values") {
  const Json j = to_json(golden_density(), 10);
  REQUIRE(j.at("breakpoints").size() == 7);
  REQUIRE(j.at("values").size() == 6);
  CHECK(qbeta_from_json(j.at("breakpoints").at(6)) == QBeta(2));
  for (const auto& v : j.at("values")) {
    CHECK(v.contains("float"));
    CHECK(v.contains("decimal"));
  }
}
