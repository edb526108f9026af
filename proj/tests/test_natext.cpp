#include "betadd/natext.hpp"

#include "betadd/cylinders.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>
#include <vector>

using namespace betadd;

namespace {

Rational random_unit_fraction(std::mt19937_64& rng, int64_t den = 10000) {
  return Rational(int64_t(rng() % den), den);
}

// Uniform-ish random state: the base square half the time, otherwise a
// random rectangle with level <= max_level.
RState random_state(std::mt19937_64& rng, std::size_t max_level) {
  if (rng() % 2 == 0) {
    return {QBeta{2 * random_unit_fraction(rng)}, QBeta{2 * random_unit_fraction(rng)}, 0, 0};
  }
  const int tag = rng() % 2 == 0 ? 2 : 3;
  const std::size_t level = 1 + rng() % max_level;
  const RectGeometry g = rect_geometry(tag, level);
  return {QBeta{random_unit_fraction(rng)} * g.width.right,
          QBeta{random_unit_fraction(rng)} * g.height.right, tag, level};
}

std::string random_full_block(std::mt19937_64& rng, std::size_t max_rank) {
  static const std::vector<std::string> atoms = [] {
    std::vector<std::string> v;
    for (std::size_t n : {1, 3, 6, 9})
      for (const auto& b : family_D_blocks(n)) v.push_back(b);
    return v;
  }();
  std::string block;
  for (;;) {
    const std::string& atom = atoms[rng() % atoms.size()];
    if (block.size() + atom.size() > max_rank) {
      if (!block.empty()) return block;
      continue;
    }
    block += atom;
    if (rng() % 3 == 0) return block;
  }
}

}  // namespace

TEST_CASE("rectangle geometry") {
  const auto base = rect_geometry(0, 0);
  CHECK(base.width == Interval{0, 2});
  CHECK(base.height == Interval{0, 2});
  CHECK(base.area == QBeta(4));

  const auto r31 = rect_geometry(3, 1);
  CHECK(r31.width == Interval{0, inv_beta_cube()});
  CHECK(r31.height == Interval{0, 2 * inv_beta()});
  CHECK(r31.area == 2 * QBeta::beta_pow(-4));

  const auto r22 = rect_geometry(2, 2);
  CHECK(r22.width == Interval{0, beta_value()});
  CHECK(r22.height == Interval{0, 2 * inv_beta_sq()});
  CHECK(r22.area == 2 * inv_beta());

  CHECK_THROWS_AS(rect_geometry(1, 4), std::invalid_argument);
  CHECK_THROWS_AS(rect_geometry(2, 0), std::invalid_argument);
}

TEST_CASE("width endpoints follow the reference orbits") {
  QBeta w2 = 1;             // orbit of 1
  QBeta w3 = inv_beta_cube();  // orbit of 1/beta^3
  for (std::size_t n = 1; n <= 40; ++n) {
    CHECK(width_value(2, n) == w2);
    CHECK(width_value(3, n) == w3);
    w2 = golden::step(w2).next;
    w3 = golden::step(w3).next;
  }
  // and they equal the image endpoints of the non-full family blocks
  for (std::size_t n = 1; n <= 14; ++n) {
    CHECK(image(family_block(2, n)).right == width_value(2, n));
    CHECK(image(family_block(3, n)).right == width_value(3, n));
  }
}

TEST_CASE("total mass closed form") {
  CHECK(total_mass() == QBeta{32, -14});
  CHECK(partial_mass(60).to_double() == Catch::Approx(9.347524).margin(1e-6));
  // truncations increase towards the closed form
  QBeta prev = 0;
  for (std::size_t l = 1; l <= 30; ++l) {
    const QBeta cur = partial_mass(l);
    CHECK(cur > prev);
    CHECK(cur < total_mass());
    prev = cur;
  }
}

TEST_CASE("base-square step") {
  const RState s{QBeta{Rational(3, 2)}, 1, 0, 0};
  const RState t = step(s);
  CHECK(t == RState{QBeta{-2, Rational(3, 2)}, inv_beta(), 2, 1});

  // digit 0 stays in the base square
  const RState u = step({1, 1, 0, 0});
  CHECK(u == RState{beta_value(), inv_beta(), 0, 0});
}

TEST_CASE("no drop from level 1") {
  const RState s{QBeta{Rational(1, 2)}, QBeta{Rational(1, 10)}, 2, 1};
  const RState t = step(s);
  CHECK(t.tag == 2);
  CHECK(t.level == 2);
  CHECK(t.x == beta_value() * s.x);
  CHECK(t.y == s.y * inv_beta());
}

TEST_CASE("drop to the base square from level 2, tag 2") {
  const QBeta x{Rational(1, 2)};
  const QBeta y{Rational(1, 10)};
  const RState t = step({x, y, 2, 2});
  CHECK(t.tag == 0);
  CHECK(t.level == 0);
  CHECK(t.x == beta_value() * x);
  // entry offset at this level is 2/beta: the first reference digit is 0
  CHECK(t.y == two_over_beta() + y * inv_beta());
}

TEST_CASE("drop offsets collect the reference digits") {
  CHECK(return_offset(2, 2) == two_over_beta());
  CHECK(return_offset(2, 5) == two_over_beta() + 2 * QBeta::beta_pow(-3));
  CHECK(return_offset(3, 5) == three_over_beta());
  CHECK(return_offset(3, 8) == three_over_beta() + 2 * QBeta::beta_pow(-6));
}

TEST_CASE("drop images tile the two upper bands of the base square") {
  // tag 2 drops fill [2/beta, 3/beta), tag 3 drops fill [3/beta, 2)
  for (int tag : {2, 3}) {
    QBeta expect = QBeta(tag) * inv_beta();
    std::size_t level = tag == 2 ? 2 : 5;
    for (int k = 0; k < 40; ++k, level += 3) {
      CHECK(return_offset(tag, level) == expect);
      expect += 2 * QBeta::beta_pow(-static_cast<long long>(level) - 1);
    }
    CHECK(expect < QBeta(tag + 1) * inv_beta());
  }
  CHECK(return_offset(2, 2) == two_over_beta());
  CHECK(return_offset(3, 5) == three_over_beta());
}

TEST_CASE("fullness criteria agree up to level 200") {
  for (int tag : {2, 3})
    for (std::size_t n = 1; n <= 200; ++n)
      CHECK(is_return_level(tag, n) == is_return_level_by_cylinder(tag, n));
}

TEST_CASE("projection commutes with the extension") {
  std::mt19937_64 rng(424242);
  for (int i = 0; i < 2000; ++i) {
    const RState s = random_state(rng, 12);
    CHECK(step(s).x == golden::step(s.x).next);
  }
}

TEST_CASE("round trips both ways") {
  std::mt19937_64 rng(1234321);
  for (int i = 0; i < 5000; ++i) {
    const RState s = random_state(rng, 20);
    CHECK(step_inverse(step(s)) == s);
    CHECK(step(step_inverse(s)) == s);
  }
}

TEST_CASE("inverse recovers drops") {
  std::mt19937_64 rng(7);
  // states landing high in the base square must have come from a drop
  for (int i = 0; i < 500; ++i) {
    const QBeta y = two_over_beta() + QBeta{random_unit_fraction(rng)} * (QBeta(2) - two_over_beta());
    const RState s{QBeta{2 * random_unit_fraction(rng)}, y, 0, 0};
    const RState p = step_inverse(s);
    CHECK(p.tag != 0);
    CHECK(is_return_level(p.tag, p.level));
    CHECK(valid_state(p));
    CHECK(step(p) == s);
  }
}

TEST_CASE("invalid states are rejected") {
  CHECK_THROWS_AS(step({QBeta(2), 0, 0, 0}), std::domain_error);
  CHECK_THROWS_AS(step({QBeta(1), QBeta(1), 2, 1}), std::domain_error);  // x >= width 1
  CHECK_THROWS_AS(step({QBeta{Rational(1, 2)}, QBeta(1), 2, 2}), std::domain_error);  // y >= 2/beta^2
  CHECK_THROWS_AS(step_inverse({0, 0, 5, 1}), std::domain_error);
}

TEST_CASE("one step preserves the area of an aligned sub-rectangle") {
  std::mt19937_64 rng(555);
  for (int trial = 0; trial < 300; ++trial) {
    RState s = random_state(rng, 10);
    // shrink to a box around s inside one continuity region: same branch
    // digit for x, same drop decision
    const auto [d, nx] = golden::step(s.x);
    const Interval br = golden::branch(d);
    const RectGeometry g = rect_geometry(s.tag, s.level);
    const QBeta xr = br.right < g.width.right ? br.right : g.width.right;
    const QBeta dx = (xr - s.x) * QBeta{random_unit_fraction(rng)};
    const QBeta dy = (g.height.right - s.y) * QBeta{random_unit_fraction(rng)};
    if (dx.sign() <= 0 || dy.sign() <= 0) continue;

    const RState c00 = step(s);
    const RState c10 = step({s.x + dx, s.y, s.tag, s.level});
    const RState c01 = step({s.x, s.y + dy, s.tag, s.level});
    CHECK(c10.x - c00.x == beta_value() * dx);   // expansion in x
    CHECK(c01.y - c00.y == dy * inv_beta());     // contraction in y
    CHECK((c10.x - c00.x) * (c01.y - c00.y) == dx * dy);
  }
}

TEST_CASE("base orbit returns at the cut ranks of the block") {
  std::mt19937_64 rng(606060);
  for (int trial = 0; trial < 40; ++trial) {
    const std::string block = random_full_block(rng, 12);
    const Cylinder c = cylinder(block);
    const QBeta x = c.interval.left + (c.interval.right - c.interval.left) *
                        QBeta{random_unit_fraction(rng)};
    const auto dec = decompose(block);

    RState s{x, QBeta{2 * random_unit_fraction(rng)}, 0, 0};
    std::vector<std::size_t> visits;
    for (std::size_t n = 1; n <= block.size(); ++n) {
      s = step(s);
      if (s.tag == 0) visits.push_back(n);
    }
    CHECK(visits == dec.return_times);
  }
}

TEST_CASE("transporting a reversed-block rectangle lands on the product rectangle") {
  std::mt19937_64 rng(171);
  for (int trial = 0; trial < 50; ++trial) {
    const std::string a = random_full_block(rng, 6);
    const std::string b = random_full_block(rng, 6);
    const auto dec = decompose(b);
    std::string reversed;
    for (auto it = dec.blocks.rbegin(); it != dec.blocks.rend(); ++it) reversed += *it;
    const std::string w = reversed + a;

    // transport the rectangle over the w-cylinder through rank(b) steps;
    // the whole rectangle crosses one continuity region per step
    const Cylinder cw = cylinder(w);
    REQUIRE(!cw.empty());
    QBeta xl = cw.interval.left, xr = cw.interval.right;
    QBeta yl = 0, yr = 2;
    RState probe{xl, yl, 0, 0};
    for (std::size_t k = 0; k < b.size(); ++k) {
      const RState moved = step(probe);
      const int digit = golden::digit_of(probe.x);
      xl = beta_value() * xl - digit;
      xr = beta_value() * xr - digit;
      if (moved.tag == 0 && probe.tag != 0) {
        const QBeta off = return_offset(probe.tag, probe.level);
        yl = off + yl * inv_beta();
        yr = off + yr * inv_beta();
      } else {
        yl = yl * inv_beta();
        yr = yr * inv_beta();
      }
      probe = moved;
    }
    CHECK(probe.tag == 0);
    CHECK(Interval{xl, xr} == cylinder(a).interval);
    CHECK(Interval{yl, yr} == cylinder(b).interval);
  }
}

TEST_CASE("tower strips") {
  CHECK(tower_strip(0, 0) == Interval{0, 2 * inv_beta_sq()});
  CHECK(tower_strip(2, 1) == Interval{2 * inv_beta_sq(), 2 * inv_beta_sq() + 2 * QBeta::beta_pow(-3)});
  CHECK(tower_strip(3, 1) == Interval{2, QBeta(2) + 2 * QBeta::beta_pow(-3)});
  CHECK_THROWS_AS(tower_strip(2, 0), std::invalid_argument);
  CHECK_THROWS_AS(tower_strip(1, 1), std::invalid_argument);
}

TEST_CASE("strips are contiguous and exhaust the two bands") {
  CHECK(tower_strip(2, 1).left == tower_strip(0, 0).right);
  for (int tag : {2, 3}) {
    const QBeta band_end = tag == 2 ? QBeta(2) : 2 * beta_value();
    for (std::size_t n = 1; n <= 60; ++n) {
      CHECK(tower_strip(tag, n).right == tower_strip(tag, n + 1).left);
      CHECK(tower_strip(tag, n).right < band_end);
    }
    // heights match the rectangle heights scaled by 1/beta^2
    for (std::size_t n = 1; n <= 20; ++n)
      CHECK(tower_strip(tag, n).length() ==
            rect_geometry(tag, n).height.right * inv_beta_sq());
  }
  CHECK(tower_strip(3, 1).left == QBeta(2));
}

TEST_CASE("tower bijection") {
  // base strip lifts with a pure vertical scaling
  const TowerPoint p{QBeta{Rational(1, 3)}, QBeta{Rational(1, 10)}};
  const RState s = to_rect(p);
  CHECK(s == RState{p.x, QBeta::beta_pow(2) * p.y, 0, 0});

  // left endpoint of the first upper strip lands at height zero
  const TowerPoint q{QBeta{Rational(1, 2)}, tower_strip(2, 1).left};
  const RState t = to_rect(q);
  CHECK(t == RState{q.x, 0, 2, 1});

  CHECK_THROWS_AS(to_rect({QBeta{Rational(3, 2)}, tower_strip(2, 3).left}), std::domain_error);
  CHECK_THROWS_AS(to_rect({0, 2 * beta_value()}), std::domain_error);
}

TEST_CASE("tower round trips") {
  std::mt19937_64 rng(999);
  for (int i = 0; i < 10000; ++i) {
    const RState s = random_state(rng, 16);
    const TowerPoint p = to_tower(s);
    CHECK(valid_tower_point(p));
    CHECK(to_rect(p) == s);
  }
}

TEST_CASE("tower transformation is the conjugated extension") {
  std::mt19937_64 rng(31415);
  for (int i = 0; i < 10000; ++i) {
    const TowerPoint p = to_tower(random_state(rng, 14));
    const TowerPoint q = tower_step(p);
    CHECK(q == to_tower(step(to_rect(p))));
    CHECK(tower_step_inverse(q) == p);
  }
}

TEST_CASE("base strip points with small x stay in the base strip") {
  const TowerPoint p{QBeta{Rational(1, 2)}, QBeta{Rational(1, 10)}};
  const TowerPoint q = tower_step(p);
  CHECK(q.x == beta_value() * p.x);
  CHECK(q.y == p.y * inv_beta());
}

TEST_CASE("tower mass") {
  CHECK(tower_total_mass() == QBeta{78, -46});
  CHECK(tower_total_mass() == total_mass() / QBeta::beta_pow(2));
  CHECK(tower_total_mass().to_double() == Catch::Approx(3.5704365).margin(1e-6));
  CHECK(tower_partial_mass(60).to_double() == Catch::Approx(3.5704365).margin(1e-6));
}
