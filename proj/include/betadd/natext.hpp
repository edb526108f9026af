#pragma once

#include "betadd/cylinders.hpp"
#include "betadd/greedy.hpp"
#include "betadd/interval.hpp"
#include "betadd/qbeta.hpp"

#include <array>
#include <cstddef>
#include <stdexcept>
#include <utility>

namespace betadd {

/*
 * Version 1 of the natural extension: a base square plus two rows of
 * rectangles indexed by a tag in {2, 3} and a level n >= 1,
 *
 *   R_0      = [0, 2) x [0, 2),
 *   R_(j,n)  = [0, w_j(n)) x [0, 2/beta^n),
 *
 * where w_j(n) is the n-th image endpoint of the tag's reference orbit:
 * w_2 cycles through 1, beta, 1/beta and w_3 starts 1/beta^3, 1/beta^2 and
 * then joins the cycle at 1/beta. The invertible transformation expands by
 * beta in x, contracts by beta in y, climbs the row, and drops back to the
 * base square exactly when the climb passes a full cylinder.
 */
struct RState {
  QBeta x;
  QBeta y;
  int tag = 0;          // 0 (base) or 2, 3 (row)
  std::size_t level = 0;  // 0 iff tag == 0

  friend bool operator==(const RState&, const RState&) = default;
};

/// Right endpoint w_j(n) of the width interval of R_(j,n).
inline QBeta width_value(int tag, std::size_t level) {
  if (level == 0 || (tag != 2 && tag != 3)) throw std::invalid_argument("width_value: bad rectangle index");
  if (tag == 3) {
    if (level == 1) return inv_beta_cube();
    if (level == 2) return inv_beta_sq();
    switch ((level - 3) % 3) {
      case 0: return inv_beta();
      case 1: return 1;
      default: return beta_value();
    }
  }
  switch ((level - 1) % 3) {
    case 0: return 1;
    case 1: return beta_value();
    default: return inv_beta();
  }
}

struct RectGeometry {
  Interval width;
  Interval height;
  QBeta area;
};

inline RectGeometry rect_geometry(int tag, std::size_t level) {
  if (tag == 0 && level == 0) return {{0, 2}, {0, 2}, 4};
  const QBeta w = width_value(tag, level);
  const QBeta h = 2 * QBeta::beta_pow(-static_cast<long long>(level));
  return {{0, w}, {0, h}, w * h};
}

inline bool valid_state(const RState& s) {
  if (s.tag == 0) {
    return s.level == 0 && s.x.sign() >= 0 && s.x < 2 && s.y.sign() >= 0 && s.y < 2;
  }
  if ((s.tag != 2 && s.tag != 3) || s.level == 0) return false;
  const RectGeometry g = rect_geometry(s.tag, s.level);
  return s.x.sign() >= 0 && s.x < g.width.right && s.y.sign() >= 0 && s.y < g.height.right;
}

/*
 * The drop-to-base levels. The congruence route reads the pattern off the
 * width cycle; the cylinder route asks directly whether the next block of
 * the row is full. The transformation computes both and insists they agree.
 */
inline bool is_return_level(int tag, std::size_t level) {
  if (level < 2 || level % 3 != 2) return false;
  return tag == 2 || level >= 5;
}

inline bool is_return_level_by_cylinder(int tag, std::size_t level) {
  return is_full(family_block(tag, level) + "0");
}

namespace detail {

inline constexpr std::size_t kLevelCache = 256;

/// Cylinder-route drop test, memoized over the levels the transformation visits.
inline bool cached_return_level_by_cylinder(int tag, std::size_t level) {
  static const auto table = [] {
    std::array<std::vector<bool>, 2> t;
    for (int j : {2, 3}) {
      auto& row = t[j - 2];
      row.resize(kLevelCache + 1, false);
      for (std::size_t n = 1; n <= kLevelCache; ++n) row[n] = is_return_level_by_cylinder(j, n);
    }
    return t;
  }();
  if (level <= kLevelCache) return table[tag - 2][level];
  return is_return_level_by_cylinder(tag, level);
}

}  // namespace detail

/// Base-square entry offset: tag/beta + sum of d_i(tag)/beta^(i+1), i < level.
inline QBeta return_offset(int tag, std::size_t level) {
  static const auto table = [] {
    std::array<std::vector<QBeta>, 2> t;
    for (int j : {2, 3}) {
      auto& row = t[j - 2];
      row.resize(detail::kLevelCache + 1);
      QBeta c = QBeta(j) * inv_beta();
      QBeta power = inv_beta_sq();  // beta^-(i+1), tracked incrementally
      for (std::size_t n = 1; n <= detail::kLevelCache; ++n) {
        row[n] = c;
        if (reference_digit(j, n) != 0) c += 2 * power;
        power *= inv_beta();
      }
    }
    return t;
  }();
  if (level >= 1 && level <= detail::kLevelCache) return table[tag - 2][level];
  QBeta c = QBeta(tag) * inv_beta();
  QBeta power = inv_beta_sq();
  for (std::size_t i = 1; i < level; ++i) {
    if (reference_digit(tag, i) != 0) c += 2 * power;
    power *= inv_beta();
  }
  return c;
}

/// The extension transformation. Bijective; expands x by beta, contracts y.
inline RState step(const RState& s) {
  if (!valid_state(s)) throw std::domain_error("step: state violates rectangle bounds");
  if (s.tag == 0) {
    auto [d, nx] = golden::step(s.x);
    QBeta ny = s.y.div_beta();
    if (d == 0) return {std::move(nx), std::move(ny), 0, 0};
    return {std::move(nx), std::move(ny), d, 1};
  }
  const bool drop = is_return_level(s.tag, s.level);
  if (drop != detail::cached_return_level_by_cylinder(s.tag, s.level))
    throw std::logic_error("step: fullness criteria disagree");
  if (drop && s.x < two_over_beta()) {
    return {s.x.times_beta(), return_offset(s.tag, s.level) + s.y.div_beta(), 0, 0};
  }
  auto [d, nx] = golden::step(s.x);
  return {std::move(nx), s.y.div_beta(), s.tag, s.level + 1};
}

/*
 * Inverse transformation, reconstructed from bijectivity. Climbing states
 * step down one level; a base state with y < 2/beta came from the base, and
 * larger y identifies a unique drop because the drop images
 * [c(j,n), c(j,n) + 2/beta^(n+1)) tile [2/beta, 3/beta) for tag 2 over the
 * levels n = 2, 5, 8, ... and [3/beta, 2) for tag 3 over n = 5, 8, 11, ...
 */
inline RState step_inverse(const RState& s) {
  if (!valid_state(s)) throw std::domain_error("step_inverse: state violates rectangle bounds");
  if (s.tag != 0) {
    if (s.level == 1) return {(s.x + s.tag).div_beta(), s.y.times_beta(), 0, 0};
    const std::size_t n = s.level - 1;
    // At a drop level only the digit-2 part of the width climbs.
    const QBeta px = is_return_level(s.tag, n) ? (s.x + 2).div_beta() : s.x.div_beta();
    return {px, s.y.times_beta(), s.tag, n};
  }
  if (s.y < two_over_beta()) return {s.x.div_beta(), s.y.times_beta(), 0, 0};
  const int tag = s.y < three_over_beta() ? 2 : 3;
  std::size_t level = tag == 2 ? 2 : 5;
  QBeta left = QBeta(tag) * inv_beta();
  QBeta len = 2 * QBeta::beta_pow(-static_cast<long long>(level) - 1);
  while (s.y >= left + len) {
    left += len;
    len *= inv_beta_cube();
    level += 3;
  }
  return {s.x.div_beta(), (s.y - left).times_beta(), tag, level};
}

/// Exact total mass of the rectangle stack: base 4 plus two geometric rows.
inline QBeta total_mass() {
  QBeta total = 4;
  for (int tag : {2, 3}) {
    const std::size_t cycle_start = tag == 2 ? 1 : 3;
    for (std::size_t n = 1; n < cycle_start; ++n)
      total += width_value(tag, n) * 2 * QBeta::beta_pow(-static_cast<long long>(n));
    // sum_{m>=0} 2 w beta^-(n0+3m) = w beta^(2-n0)
    for (std::size_t r = 0; r < 3; ++r) {
      const std::size_t n0 = cycle_start + r;
      total += width_value(tag, n0) * QBeta::beta_pow(2 - static_cast<long long>(n0));
    }
  }
  return total;
}

/// Truncated mass: base plus all rectangles with level <= cutoff.
inline QBeta partial_mass(std::size_t cutoff) {
  QBeta total = 4;
  for (int tag : {2, 3})
    for (std::size_t n = 1; n <= cutoff; ++n)
      total += width_value(tag, n) * 2 * QBeta::beta_pow(-static_cast<long long>(n));
  return total;
}

/*
 * Version 2: the planar tower I inside [0, 2) x [0, 2 beta). The base strip
 * I_0 = [0, 2/beta^2) carries the base square scaled by 1/beta^2; above it
 * the strips I_(2,n) tile [2/beta^2, 2) and the strips I_(3,n) tile [2, 2 beta),
 * each of height 2/beta^(n+2) and x-extent [0, w_j(n)).
 */
struct TowerPoint {
  QBeta x;
  QBeta y;

  friend bool operator==(const TowerPoint&, const TowerPoint&) = default;
};

/// Strip of the tower: tag 0, level 0 gives I_0.
inline Interval tower_strip(int tag, std::size_t level) {
  if (tag == 0 && level == 0) return {0, inv_beta_sq() * 2};
  if ((tag != 2 && tag != 3) || level == 0) throw std::invalid_argument("tower_strip: bad strip index");
  static const auto table = [] {
    std::array<std::vector<Interval>, 2> t;
    for (int j : {2, 3}) {
      auto& row = t[j - 2];
      row.resize(detail::kLevelCache + 1);
      QBeta left = j == 2 ? QBeta(2) * inv_beta_sq() : QBeta(2);
      QBeta len = 2 * QBeta::beta_pow(-3);  // strip heights 2/beta^(n+2)
      for (std::size_t n = 1; n <= detail::kLevelCache; ++n) {
        row[n] = {left, left + len};
        left += len;
        len = len.div_beta();
      }
    }
    return t;
  }();
  if (level <= detail::kLevelCache) return table[tag - 2][level];
  // beyond the cache: left = base + (2/beta)(1 - beta^(1-n))
  const QBeta base = tag == 2 ? QBeta(2) * inv_beta_sq() : QBeta(2);
  const QBeta left =
      base + 2 * inv_beta() * (QBeta(1) - QBeta::beta_pow(1 - static_cast<long long>(level)));
  return {left, left + 2 * QBeta::beta_pow(-static_cast<long long>(level) - 2)};
}

inline bool valid_tower_point(const TowerPoint& p) {
  if (p.x.sign() < 0 || p.x >= 2 || p.y.sign() < 0) return false;
  if (p.y < tower_strip(0, 0).right) return true;
  const int tag = p.y < 2 ? 2 : 3;
  std::size_t level = 1;
  Interval strip = tower_strip(tag, level);
  while (p.y >= strip.right) strip = tower_strip(tag, ++level);
  return p.x < width_value(tag, level);
}

/// The conjugating bijection from the tower onto the rectangle stack.
inline RState to_rect(const TowerPoint& p) {
  if (p.x.sign() < 0 || p.x >= 2 || p.y.sign() < 0 || p.y >= 2 * beta_value())
    throw std::domain_error("to_rect: point outside the tower");
  const QBeta beta_sq = beta_value() * beta_value();
  if (p.y < tower_strip(0, 0).right) return {p.x, beta_sq * p.y, 0, 0};
  const int tag = p.y < 2 ? 2 : 3;
  std::size_t level = 1;
  Interval strip = tower_strip(tag, level);
  while (p.y >= strip.right) strip = tower_strip(tag, ++level);
  if (p.x >= width_value(tag, level)) throw std::domain_error("to_rect: point outside the tower");
  return {p.x, beta_sq * (p.y - strip.left), tag, level};
}

inline TowerPoint to_tower(const RState& s) {
  if (!valid_state(s)) throw std::domain_error("to_tower: state violates rectangle bounds");
  const QBeta scaled = s.y * inv_beta_sq();
  if (s.tag == 0) return {s.x, scaled};
  return {s.x, tower_strip(s.tag, s.level).left + scaled};
}

/// The tower transformation, conjugate to the rectangle transformation.
inline TowerPoint tower_step(const TowerPoint& p) { return to_tower(step(to_rect(p))); }
inline TowerPoint tower_step_inverse(const TowerPoint& p) {
  return to_tower(step_inverse(to_rect(p)));
}

/// Exact planar area of the tower, equal to total_mass() / beta^2.
inline QBeta tower_total_mass() {
  QBeta total = QBeta(2) * tower_strip(0, 0).right;
  for (int tag : {2, 3}) {
    const std::size_t cycle_start = tag == 2 ? 1 : 3;
    for (std::size_t n = 1; n < cycle_start; ++n)
      total += width_value(tag, n) * tower_strip(tag, n).length();
    // strip heights 2/beta^(n+2): tail sum_{m>=0} 2 w beta^-(n0+3m+2) = w beta^-n0
    for (std::size_t r = 0; r < 3; ++r) {
      const std::size_t n0 = cycle_start + r;
      total += width_value(tag, n0) * QBeta::beta_pow(-static_cast<long long>(n0));
    }
  }
  return total;
}

inline QBeta tower_partial_mass(std::size_t cutoff) {
  QBeta total = QBeta(2) * tower_strip(0, 0).right;
  for (int tag : {2, 3})
    for (std::size_t n = 1; n <= cutoff; ++n)
      total += width_value(tag, n) * tower_strip(tag, n).length();
  return total;
}

}  // namespace betadd
