#include "betadd/qbeta.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <random>

using namespace betadd;

namespace {

// Small random rationals with bounded numerators and denominators.
Rational random_rational(std::mt19937_64& rng, int64_t bound = 1000) {
  const int64_t num = int64_t(rng() % (2 * bound + 1)) - bound;
  const int64_t den = int64_t(rng() % bound) + 1;
  return Rational(num, den);
}

QBeta random_qbeta(std::mt19937_64& rng, int64_t bound = 1000) {
  return {random_rational(rng, bound), random_rational(rng, bound)};
}

}  // namespace

TEST_CASE("beta satisfies its minimal polynomial") {
  const QBeta b = QBeta::beta();
  CHECK(b * b == QBeta{1, 1});
  CHECK(b * b - b - 1 == QBeta{0, 0});
}

TEST_CASE("division by beta") {
  CHECK(QBeta(1) / QBeta::beta() == QBeta{-1, 1});
  CHECK(QBeta::beta() * QBeta{-1, 1} == QBeta(1));
}

TEST_CASE("2 beta - 3 is the inverse of beta^3") {
  const QBeta inv_cube{-3, 2};
  const QBeta cube = QBeta::beta_pow(3);
  CHECK(cube == QBeta{1, 2});
  CHECK(inv_cube * cube == QBeta(1));
  CHECK(QBeta::beta_pow(-3) == inv_cube);
}

TEST_CASE("comparisons are exact") {
  CHECK(compare(QBeta{-3, 2}, 0) == 1);  // 2 beta - 3 = 1/beta^3 > 0
  CHECK(compare(QBeta::beta(), QBeta::beta()) == 0);
  // (3 - beta) - (2 beta - 2) = 5 - 3 beta > 0
  CHECK(compare(QBeta{3, -1}, QBeta{-2, 2}) == 1);
  CHECK(QBeta{5, -3}.sign() == 1);
  CHECK(QBeta{-5, 3}.sign() == -1);
  CHECK(QBeta{0, 0}.sign() == 0);
}

TEST_CASE("to_double hits the reference values") {
  CHECK(QBeta::beta().to_double() == Catch::Approx(1.6180339887498949).epsilon(1e-12));
  CHECK(QBeta{16, -7}.to_double() == Catch::Approx(4.6737620787507366).epsilon(1e-12));
  CHECK(QBeta(0).to_double() == 0.0);
}

TEST_CASE("field axioms on random samples") {
  std::mt19937_64 rng(20240811);
  for (int i = 0; i < 500; ++i) {
    const QBeta x = random_qbeta(rng), y = random_qbeta(rng), z = random_qbeta(rng);
    CHECK((x + y) + z == x + (y + z));
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK(x + y == y + x);
    CHECK(x * y == y * x);
    CHECK(x - y + y == x);
    if (!x.is_zero()) {
      CHECK(x * x.inverse() == QBeta(1));
      CHECK(y / x * x == y);
    }
  }
  CHECK_THROWS_AS(QBeta(1) / QBeta(0), std::domain_error);
  CHECK_THROWS_AS(QBeta(0).inverse(), std::domain_error);
}

TEST_CASE("conjugation is a ring homomorphism") {
  std::mt19937_64 rng(4311);
  for (int i = 0; i < 500; ++i) {
    const QBeta x = random_qbeta(rng), y = random_qbeta(rng);
    CHECK((x + y).conjugate() == x.conjugate() + y.conjugate());
    CHECK((x * y).conjugate() == x.conjugate() * y.conjugate());
  }
  // beta's conjugate solves the same polynomial
  const QBeta c = QBeta::beta().conjugate();
  CHECK(c * c == c + 1);
}

TEST_CASE("compare agrees with 128-bit approximation") {
  std::mt19937_64 rng(77);
  const Rational gap_floor = Rational(1, Int("100000000000000000000"));  // 1e-20
  int tested = 0;
  for (int i = 0; i < 10000; ++i) {
    const QBeta x = random_qbeta(rng), y = random_qbeta(rng);
    const Rational rx = x.approx(128), ry = y.approx(128);
    if (abs(rx - ry) <= gap_floor) continue;
    ++tested;
    const int expected = rx < ry ? -1 : 1;
    CHECK(compare(x, y) == expected);
  }
  CHECK(tested > 9000);
}

TEST_CASE("approximation error bound") {
  std::mt19937_64 rng(901);
  for (int i = 0; i < 200; ++i) {
    const QBeta x = random_qbeta(rng);
    if (x.is_zero()) continue;
    const Rational coarse = x.approx(64);
    const Rational fine = x.approx(192);
    const Rational tol = abs(fine) * Rational(Int(4), Int(1) << 64);
    CHECK(abs(coarse - fine) <= tol);
  }
}

TEST_CASE("beta powers multiply out") {
  for (long long k = -20; k <= 20; ++k) {
    CHECK(QBeta::beta_pow(k) * QBeta::beta_pow(-k) == QBeta(1));
    CHECK(QBeta::beta_pow(k) * QBeta::beta() == QBeta::beta_pow(k + 1));
  }
  CHECK(QBeta::beta_pow(5) == QBeta{3, 5});
}

TEST_CASE("decimal rendering") {
  CHECK(QBeta::beta().to_decimal(10) == "1.6180339887");
  CHECK(QBeta(0).to_decimal(4) == "0.0000");
  CHECK(QBeta{Rational(-3, 2)}.to_decimal(3) == "-1.500");
  CHECK(QBeta{Rational(1, 2)}.to_decimal(0) == "1");  // rounds half up
  CHECK(QBeta{16, -7}.to_decimal(7) == "4.6737621");
}

TEST_CASE("named constants") {
  CHECK(inv_beta() * beta_value() == QBeta(1));
  CHECK(inv_beta_sq() * QBeta::beta_pow(2) == QBeta(1));
  CHECK(inv_beta_cube() * QBeta::beta_pow(3) == QBeta(1));
  CHECK(two_over_beta() == QBeta(2) * inv_beta());
  CHECK(three_over_beta() == QBeta(3) * inv_beta());
}
