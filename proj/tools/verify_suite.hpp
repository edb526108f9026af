#pragma once

#include "betadd/betadd.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace betadd::verify {

/*
 * The verification battery behind `betadd verify`. Check ids are stable
 * strings that CI keys on; each maps to a single anchor (or "plumbing" for
 * infrastructure checks). A check returns a detail string on success and
 * throws or returns failure on defect.
 */
struct CheckResult {
  std::string id;
  std::string anchor;
  std::string suite;
  bool pass = false;
  std::string detail;
  double millis = 0;
};

struct Check {
  std::string id;
  std::string anchor;
  std::string suite;
  std::function<std::pair<bool, std::string>(std::uint64_t seed)> run;
};

namespace detail {

inline QBeta random_rational_point(std::mt19937_64& rng) {
  const int64_t den = 1 + int64_t(rng() % 99990);
  return QBeta{Rational(int64_t(rng() % (2 * den)), den)};
}

inline RState random_state(std::mt19937_64& rng, std::size_t max_level) {
  const auto frac = [&rng] { return Rational(int64_t(rng() % 10000), 10000); };
  if (rng() % 2 == 0) return {QBeta{2 * frac()}, QBeta{2 * frac()}, 0, 0};
  const int tag = rng() % 2 == 0 ? 2 : 3;
  const std::size_t level = 1 + rng() % max_level;
  const RectGeometry g = rect_geometry(tag, level);
  return {QBeta{frac()} * g.width.right, QBeta{frac()} * g.height.right, tag, level};
}

inline std::vector<std::string> sorted_blocks(const std::vector<Cylinder>& cs) {
  std::vector<std::string> v;
  for (const auto& c : cs) v.push_back(c.block);
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace detail

inline std::vector<Check> all_checks() {
  using detail::random_rational_point;
  using detail::random_state;
  using detail::sorted_blocks;
  std::vector<Check> checks;

  checks.push_back({"qbeta-field-axioms", "plumbing", "qbeta", [](std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto r = [&rng] { return Rational(int64_t(rng() % 2001) - 1000, int64_t(rng() % 999) + 1); };
    for (int i = 0; i < 300; ++i) {
      const QBeta x{r(), r()}, y{r(), r()}, z{r(), r()};
      if ((x + y) + z != x + (y + z)) return std::pair{false, std::string("associativity")};
      if (x * (y + z) != x * y + x * z) return std::pair{false, std::string("distributivity")};
      if (!x.is_zero() && x * x.inverse() != QBeta(1))
        return std::pair{false, std::string("inverse")};
    }
    return std::pair{true, std::string("300 samples, exact")};
  }});

  checks.push_back({"qbeta-compare-float", "plumbing", "qbeta", [](std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto r = [&rng] { return Rational(int64_t(rng() % 2001) - 1000, int64_t(rng() % 999) + 1); };
    const Rational gap_floor(1, Int("100000000000000000000"));
    int used = 0;
    for (int i = 0; i < 2000; ++i) {
      const QBeta x{r(), r()}, y{r(), r()};
      const Rational rx = x.approx(128), ry = y.approx(128);
      if (abs(rx - ry) <= gap_floor) continue;
      ++used;
      if (compare(x, y) != (rx < ry ? -1 : 1))
        return std::pair{false, std::string("sign mismatch")};
    }
    return std::pair{true, std::to_string(used) + " pairs at 128-bit precision"};
  }});

  checks.push_back({"qbeta-conjugation", "plumbing", "qbeta", [](std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto r = [&rng] { return Rational(int64_t(rng() % 2001) - 1000, int64_t(rng() % 999) + 1); };
    for (int i = 0; i < 300; ++i) {
      const QBeta x{r(), r()}, y{r(), r()};
      if ((x + y).conjugate() != x.conjugate() + y.conjugate() ||
          (x * y).conjugate() != x.conjugate() * y.conjugate())
        return std::pair{false, std::string("homomorphism broken")};
    }
    return std::pair{true, std::string("ring homomorphism, 300 samples")};
  }});

  checks.push_back({"eq2-expansion", "eq2", "greedy", [](std::uint64_t) {
    const std::vector<int> want{0, 2, 0, 0, 2, 0, 0, 2, 0, 0, 2, 0, 0, 2};
    return std::pair{golden::expand(1, 14) == want, std::string("digits of 1, exact")};
  }});

  checks.push_back({"eq3-expansion", "eq3", "greedy", [](std::uint64_t) {
    const std::vector<int> want{0, 0, 0, 0, 2, 0, 0, 2, 0, 0, 2, 0, 0, 2};
    return std::pair{golden::expand(inv_beta_cube(), 14) == want,
                     std::string("digits of 1/beta^3, exact")};
  }});

  checks.push_back({"sec5-orbit-disjointness", "sec5", "greedy", [](std::uint64_t) {
    for (const QBeta& start : {QBeta(1), inv_beta_cube()}) {
      std::set<std::pair<Rational, Rational>> seen;
      QBeta x = start;
      for (int i = 0; i < 64; ++i) {
        if (golden::branch(3).contains(x)) return std::pair{false, std::string("orbit meets top branch")};
        seen.insert({x.a(), x.b()});
        x = golden::step(x).next;
      }
      if (seen.size() != (start == QBeta(1) ? 3u : 5u))
        return std::pair{false, std::string("orbit size unexpected")};
    }
    return std::pair{true, std::string("orbits {1,b,1/b} and {1/b^3,1/b^2,1/b,1,b} avoid D(3)")};
  }});

  checks.push_back({"lemma2.1-concat", "lemma2.1", "cylinders", [](std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::string> atoms;
    for (std::size_t n : {1, 3, 6, 9})
      for (const auto& b : family_D_blocks(n)) atoms.push_back(b);
    for (int i = 0; i < 100; ++i) {
      const std::string a = atoms[rng() % atoms.size()];
      const std::string b = atoms[rng() % atoms.size()];
      if (!is_full(a + b)) return std::pair{false, a + "+" + b};
    }
    return std::pair{true, std::string("100 concatenations stay full")};
  }});

  checks.push_back({"lemma2.2-mass", "lemma2.2", "cylinders", [](std::uint64_t) {
    if (mass_of_D(1) != QBeta(2) * inv_beta()) return std::pair{false, std::string("N=1")};
    if (mass_of_D(3) != QBeta(2) * inv_beta() + QBeta(2) * inv_beta_cube())
      return std::pair{false, std::string("N=3")};
    const double tail = std::abs(mass_of_D(60).to_double() - 2.0);
    if (tail > 1e-6) return std::pair{false, std::string("N=60 tail")};
    for (std::size_t n = 1; n <= 12; ++n) {
      if (sorted_blocks(enumerate_family(n, Family::D, true)) !=
          sorted_blocks(enumerate_family(n, Family::D, false)))
        return std::pair{false, std::string("D_") + std::to_string(n)};
    }
    return std::pair{true, "partials exact; |sum-2| = " + std::to_string(tail) + " at N=60"};
  }});

  checks.push_back({"sec3-b-families", "sec3", "cylinders", [](std::uint64_t) {
    for (std::size_t n = 1; n <= 12; ++n) {
      if (sorted_blocks(enumerate_family(n, Family::B, true)) !=
          sorted_blocks(enumerate_family(n, Family::B, false)))
        return std::pair{false, std::string("B_") + std::to_string(n)};
    }
    return std::pair{true, std::string("closed forms match brute force, n <= 12")};
  }});

  checks.push_back({"sec3-subblock-example", "sec3", "cylinders", [](std::uint64_t) {
    const auto dec = decompose("2000300002002000");
    const bool ok = dec.blocks == std::vector<std::string>{"200", "0", "300002002000"};
    return std::pair{ok, std::string("worked example splits as 200 | 0 | 300002002000")};
  }});

  checks.push_back({"sec3-total-mass", "sec3", "natext", [](std::uint64_t) {
    if (total_mass() != QBeta{32, -14}) return std::pair{false, std::string("closed form")};
    const double delta = std::abs(partial_mass(60).to_double() - 9.347524);
    return std::pair{delta <= 1e-6, "level-60 truncation delta " + std::to_string(delta)};
  }});

  checks.push_back({"remark3.1-pattern", "remark3.1", "natext", [](std::uint64_t) {
    for (int tag : {2, 3})
      for (std::size_t n = 1; n <= 200; ++n)
        if (is_return_level(tag, n) != is_return_level_by_cylinder(tag, n))
          return std::pair{false, "tag " + std::to_string(tag) + ", n=" + std::to_string(n)};
    return std::pair{true, std::string("congruence equals cylinder fullness, n <= 200")};
  }});

  checks.push_back({"sec3-commutation", "sec3", "natext", [](std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (int i = 0; i < 3000; ++i) {
      const RState s = random_state(rng, 16);
      if (step(s).x != golden::step(s.x).next) return std::pair{false, std::string("projection")};
    }
    return std::pair{true, std::string("3000 states, exact")};
  }});

  checks.push_back({"sec3-bijectivity", "sec3", "natext", [](std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (int i = 0; i < 20000; ++i) {
      const RState s = random_state(rng, 30);
      if (step_inverse(step(s)) != s || step(step_inverse(s)) != s)
        return std::pair{false, std::string("round trip")};
    }
    return std::pair{true, std::string("20000 states, both directions, exact")};
  }});

  checks.push_back({"thm3.1-density-identity", "thm3.1", "measure", [](std::uint64_t) {
    const PiecewiseDensity h = golden_density();
    if (fiber_oracle() != h.canonical()) return std::pair{false, std::string("fiber route")};
    if (tower_slice_density() != h.canonical()) return std::pair{false, std::string("tower route")};
    if (h.integral() != QBeta(1)) return std::pair{false, std::string("normalization")};
    return std::pair{true, std::string("three routes, six pieces, exact")};
  }});

  checks.push_back({"thm3.1-transfer", "thm3.1", "measure", [](std::uint64_t seed) {
    const PiecewiseDensity h = golden_density();
    if (transfer_apply(h) != h.canonical()) return std::pair{false, std::string("symbolic route")};
    std::mt19937_64 rng(seed);
    int checked = 0;
    while (checked < 1000) {
      const auto r = transfer_residual(random_rational_point(rng), h);
      if (!r) continue;
      if (!r->is_zero()) return std::pair{false, std::string("nonzero residual")};
      ++checked;
    }
    return std::pair{true, std::string("1000 residuals exactly zero; fixed point symbolically")};
  }});

  checks.push_back({"sec4-tower-mass", "sec4", "natext", [](std::uint64_t) {
    if (tower_total_mass() != QBeta{78, -46}) return std::pair{false, std::string("closed form")};
    if (tower_total_mass() != total_mass() / QBeta::beta_pow(2))
      return std::pair{false, std::string("relation to rectangle mass")};
    const double delta = std::abs(tower_total_mass().to_double() - 3.5704365);
    return std::pair{delta < 1e-6, "float value delta " + std::to_string(delta)};
  }});

  checks.push_back({"sec4-conjugacy", "sec4", "natext", [](std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (int i = 0; i < 10000; ++i) {
      const RState s = random_state(rng, 14);
      const TowerPoint p = to_tower(s);
      if (to_rect(p) != s) return std::pair{false, std::string("bijection")};
      if (tower_step(p) != to_tower(step(s))) return std::pair{false, std::string("conjugacy")};
    }
    for (int tag : {2, 3})
      for (std::size_t n = 1; n <= 40; ++n)
        if (tower_strip(tag, n).right != tower_strip(tag, n + 1).left)
          return std::pair{false, std::string("strip partition")};
    return std::pair{true, std::string("10000 points; strips contiguous")};
  }});

  checks.push_back({"sec1-classical-parry", "sec1", "measure", [](std::uint64_t) {
    const PiecewiseDensity hc = classical_density_golden();
    const QBeta f{3, -1};
    if (hc.values != std::vector<QBeta>{beta_value() / f, QBeta(1) / f})
      return std::pair{false, std::string("values")};
    const double lo = std::abs(hc.values[0].to_double() - (5.0 + 3.0 * std::sqrt(5.0)) / 10.0);
    const double hi = std::abs(hc.values[1].to_double() - (5.0 + std::sqrt(5.0)) / 10.0);
    return std::pair{lo < 1e-12 && hi < 1e-12,
                     "float deltas " + std::to_string(lo) + ", " + std::to_string(hi)};
  }});

  checks.push_back({"birkhoff-pieces", "plumbing", "measure", [](std::uint64_t seed) {
    const auto r = birkhoff(1000000, piece_edges(), seed);
    double worst = 0;
    for (const auto& b : r.bins) worst = std::max(worst, std::abs(b.frequency - b.expected));
    return std::pair{worst < 0.01, "worst |observed-expected| = " + std::to_string(worst)};
  }});

  checks.push_back({"serialization-roundtrip", "plumbing", "cli", [](std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const auto r = [&rng] { return Rational(int64_t(rng() % 20001) - 10000, int64_t(rng() % 9999) + 1); };
    for (int i = 0; i < 500; ++i) {
      const QBeta x{r(), r()};
      if (qbeta_from_json(to_json(x)) != x) return std::pair{false, std::string("round trip")};
    }
    return std::pair{true, std::string("500 round trips, exact")};
  }});

  return checks;
}

inline std::vector<CheckResult> run_suite(const std::string& suite, std::uint64_t seed) {
  std::vector<CheckResult> results;
  for (const auto& c : all_checks()) {
    if (suite != "all" && c.suite != suite) continue;
    CheckResult r{c.id, c.anchor, c.suite, false, "", 0};
    const auto t0 = std::chrono::steady_clock::now();
    try {
      auto [pass, detail] = c.run(seed);
      r.pass = pass;
      r.detail = detail;
    } catch (const std::exception& e) {
      r.pass = false;
      r.detail = std::string("exception: ") + e.what();
    }
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace betadd::verify
