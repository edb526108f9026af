#pragma once

#include "betadd/interval.hpp"
#include "betadd/qbeta.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace betadd {

/*
 * The golden system: base beta = (1+sqrt 5)/2, digit set {0, 2, 3}, acting on
 * the support [0, 2). Branches are half-open:
 *
 *   D(0) = [0, 2/beta),  D(2) = [2/beta, 3/beta),  D(3) = [3/beta, 2),
 *
 * and T x = beta*x - j on D(j). Everything here is exact.
 */
namespace golden {

inline const Interval& domain() {
  static const Interval d{0, 2};
  return d;
}

inline const Interval& branch(int digit) {
  static const Interval b0{0, two_over_beta()};
  static const Interval b2{two_over_beta(), three_over_beta()};
  static const Interval b3{three_over_beta(), 2};
  switch (digit) {
    case 0: return b0;
    case 2: return b2;
    case 3: return b3;
    default: throw std::invalid_argument("golden digit must be 0, 2 or 3");
  }
}

inline int digit_of(const QBeta& x) {
  if (x.sign() < 0 || x >= 2) throw std::domain_error("golden map: point outside [0, 2)");
  if (x < two_over_beta()) return 0;
  if (x < three_over_beta()) return 2;
  return 3;
}

struct StepResult {
  int digit;
  QBeta next;
};

/// One application of T: the branch digit and beta*x - digit.
inline StepResult step(const QBeta& x) {
  const int d = digit_of(x);
  return {d, x.times_beta() - d};
}

/// First n greedy digits of x.
inline std::vector<int> expand(QBeta x, std::size_t n) {
  std::vector<int> digits;
  digits.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto [d, next] = step(x);
    digits.push_back(d);
    x = std::move(next);
  }
  return digits;
}

struct GreedyOrbit {
  QBeta start;
  std::vector<int> digits;    // d_1 .. d_n
  std::vector<QBeta> iterates;  // T^0 x .. T^n x
};

inline GreedyOrbit orbit(const QBeta& start, std::size_t n) {
  GreedyOrbit o{start, {}, {start}};
  o.digits.reserve(n);
  o.iterates.reserve(n + 1);
  QBeta x = start;
  for (std::size_t i = 0; i < n; ++i) {
    auto [d, next] = step(x);
    o.digits.push_back(d);
    o.iterates.push_back(next);
    x = std::move(next);
  }
  return o;
}

}  // namespace golden

/*
 * General deleted-digit systems for arbitrary base beta > 1 run in floating
 * point; membership tests at branch boundaries carry a 1e-12 tolerance. Only
 * the golden system above is exact.
 */
struct DigitSet {
  std::vector<double> digits;  // a_0 < a_1 < ... < a_m
  double base = 0;             // beta > 1

  std::size_t top() const { return digits.size() - 1; }
  double largest() const { return digits.back(); }
  /// Right end of the expansion domain, a_m / (beta - 1).
  double domain_right() const { return largest() / (base - 1); }
};

inline constexpr double kBranchTolerance = 1e-12;

struct DigitSetReport {
  bool ok = true;
  int failed_condition = 0;  // 1: a_0 != 0; 2: not strictly increasing; 3: gap too wide
  std::string message;
};

/// Checks the three admissibility conditions on a digit set.
inline DigitSetReport validate(const DigitSet& ds) {
  if (ds.base <= 1) return {false, 0, "base must exceed 1"};
  if (ds.digits.empty()) return {false, 0, "digit set is empty"};
  if (std::abs(ds.digits.front()) > kBranchTolerance)
    return {false, 1, "smallest digit must be 0"};
  for (std::size_t i = 1; i < ds.digits.size(); ++i)
    if (ds.digits[i] <= ds.digits[i - 1])
      return {false, 2, "digits must be strictly increasing"};
  const double bound = ds.largest() / (ds.base - 1);
  for (std::size_t i = 1; i < ds.digits.size(); ++i) {
    const double gap = ds.digits[i] - ds.digits[i - 1];
    if (gap > bound + kBranchTolerance) {
      return {false, 3,
              "gap " + std::to_string(gap) + " exceeds a_m/(beta-1) = " + std::to_string(bound)};
    }
  }
  return {};
}

/// Greedy digit of x under the deleted-digit map; x in [0, a_m/(beta-1)].
inline std::size_t deleted_digit_index(double x, const DigitSet& ds) {
  const std::size_t m = ds.top();
  for (std::size_t j = 0; j + 1 <= m; ++j) {
    if (x < ds.digits[j + 1] / ds.base) return j;
  }
  return m;
}

inline double deleted_step(double x, const DigitSet& ds) {
  return ds.base * x - ds.digits[deleted_digit_index(x, ds)];
}

/// First n greedy digits (digit values) of x in a deleted-digit system.
inline std::vector<double> expand_deleted(double x, std::size_t n, const DigitSet& ds) {
  if (auto rep = validate(ds); !rep.ok) throw std::invalid_argument(rep.message);
  if (x < -kBranchTolerance || x > ds.domain_right() + kBranchTolerance)
    throw std::domain_error("expand_deleted: point outside [0, a_m/(beta-1)]");
  std::vector<double> digits;
  digits.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = deleted_digit_index(x, ds);
    digits.push_back(ds.digits[j]);
    x = ds.base * x - ds.digits[j];
  }
  return digits;
}

/// Classical expansion: digit set {0, 1, ..., floor(beta)}.
inline std::vector<int> expand_classical(double x, std::size_t n, double beta) {
  if (beta <= 1) throw std::invalid_argument("classical base must exceed 1");
  const double top = std::floor(beta);
  if (x < -kBranchTolerance || x > top / (beta - 1) + kBranchTolerance)
    throw std::domain_error("expand_classical: point outside [0, floor(beta)/(beta-1)]");
  std::vector<int> digits;
  digits.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    int d = static_cast<int>(top);
    for (int j = 0; j < static_cast<int>(top); ++j) {
      if (x < (j + 1) / beta) {
        d = j;
        break;
      }
    }
    digits.push_back(d);
    x = beta * x - d;
  }
  return digits;
}

struct SupportInfo {
  std::size_t index;  // j0, 1-based position into the digit list
  double left = 0;
  double right;  // support is [0, a_j0 - a_(j0-1))
};

/*
 * Smallest j >= 1 such that [0, a_j - a_(j-1)) is forward invariant: the image
 * of every branch piece meeting the candidate interval must land back inside
 * it, up to the float tolerance. j = m always qualifies.
 */
inline SupportInfo support_index(const DigitSet& ds) {
  if (auto rep = validate(ds); !rep.ok) throw std::invalid_argument(rep.message);
  const std::size_t m = ds.top();
  for (std::size_t j = 1; j <= m; ++j) {
    const double g = ds.digits[j] - ds.digits[j - 1];
    bool invariant = true;
    for (std::size_t i = 0; i <= m && invariant; ++i) {
      const double lo = ds.digits[i] / ds.base;
      const double hi = (i < m) ? ds.digits[i + 1] / ds.base : ds.domain_right();
      const double seg_lo = std::max(lo, 0.0);
      const double seg_hi = std::min(hi, g);
      if (seg_hi <= seg_lo + kBranchTolerance) continue;
      const double image_hi = ds.base * seg_hi - ds.digits[i];
      if (image_hi > g + kBranchTolerance) invariant = false;
    }
    if (invariant) return {j, 0, g};
  }
  return {m, 0, ds.digits[m] - ds.digits[m - 1]};  // unreachable by the gap condition
}

}  // namespace betadd
