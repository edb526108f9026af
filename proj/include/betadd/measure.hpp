#pragma once

#include "betadd/greedy.hpp"
#include "betadd/interval.hpp"
#include "betadd/natext.hpp"
#include "betadd/qbeta.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

namespace betadd {

/// Step density: finitely many half-open pieces with exact constant values.
struct PiecewiseDensity {
  std::vector<QBeta> breakpoints;  // ascending, one more entry than values
  std::vector<QBeta> values;

  const QBeta& value_at(const QBeta& x) const {
    if (breakpoints.size() < 2 || x < breakpoints.front() || x >= breakpoints.back())
      throw std::domain_error("PiecewiseDensity: point outside the domain");
    std::size_t i = 0;
    while (x >= breakpoints[i + 1]) ++i;
    return values[i];
  }

  bool is_breakpoint(const QBeta& x) const {
    for (const auto& b : breakpoints)
      if (b == x) return true;
    return false;
  }

  QBeta integral() const {
    QBeta s = 0;
    for (std::size_t i = 0; i < values.size(); ++i)
      s += values[i] * (breakpoints[i + 1] - breakpoints[i]);
    return s;
  }

  /// Exact mass of [lo, hi) under the density.
  QBeta mass(const QBeta& lo, const QBeta& hi) const {
    QBeta s = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const QBeta l = breakpoints[i] < lo ? lo : breakpoints[i];
      const QBeta r = breakpoints[i + 1] < hi ? breakpoints[i + 1] : hi;
      if (l < r) s += values[i] * (r - l);
    }
    return s;
  }

  /// Merges adjacent pieces of equal value and drops empty pieces.
  PiecewiseDensity canonical() const {
    PiecewiseDensity out;
    if (breakpoints.empty()) return out;
    out.breakpoints.push_back(breakpoints.front());
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (breakpoints[i + 1] == breakpoints[i]) continue;
      if (!out.values.empty() && out.values.back() == values[i]) {
        out.breakpoints.back() = breakpoints[i + 1];
      } else {
        out.values.push_back(values[i]);
        out.breakpoints.push_back(breakpoints[i + 1]);
      }
    }
    return out;
  }

  friend bool operator==(const PiecewiseDensity&, const PiecewiseDensity&) = default;
};

/*
 * The invariant density of the golden system, as a closed form: six pieces
 * over the breakpoints 0, 1/beta^3, 1/beta^2, 1/beta, 1, beta, 2 with values
 * (1+2 beta, 2+beta, 2 beta, beta^2, beta, 1) / (16 - 7 beta).
 */
inline PiecewiseDensity golden_density() {
  const QBeta norm{16, -7};
  PiecewiseDensity d;
  d.breakpoints = {0, inv_beta_cube(), inv_beta_sq(), inv_beta(), 1, beta_value(), 2};
  d.values = {QBeta{1, 2} / norm,
              QBeta{2, 1} / norm,
              QBeta{0, 2} / norm,
              QBeta{1, 1} / norm,
              QBeta{0, 1} / norm,
              QBeta{1, 0} / norm};
  return d;
}

namespace detail {

/// Distinct width endpoints of the rectangle rows, sorted ascending.
inline std::vector<QBeta> width_levels() {
  std::vector<QBeta> w;
  for (int tag : {2, 3}) {
    const std::size_t start = tag == 2 ? 1 : 1;
    for (std::size_t n = start; n < start + 5; ++n) w.push_back(width_value(tag, n));
  }
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  return w;
}

}  // namespace detail

/*
 * Fiber-sum reconstruction of the density: over a point x, stack the heights
 * of every rectangle whose width interval contains x. The base square always
 * contributes 2; the row over tag j contributes 2/beta^n whenever
 * x < w_j(n), and each qualifying residue class resolves to the exact
 * geometric sum beta^(2-n0). Dividing by the total mass must reproduce the
 * closed form piece by piece.
 */
inline PiecewiseDensity fiber_oracle() {
  std::vector<QBeta> breaks = detail::width_levels();
  breaks.insert(breaks.begin(), 0);
  breaks.push_back(2);

  const QBeta mass = total_mass();
  PiecewiseDensity d;
  d.breakpoints = breaks;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const QBeta& p = breaks[i];
    QBeta fiber = 2;
    for (int tag : {2, 3}) {
      const std::size_t cycle_start = tag == 2 ? 1 : 3;
      for (std::size_t n = 1; n < cycle_start; ++n)
        if (width_value(tag, n) > p) fiber += 2 * QBeta::beta_pow(-static_cast<long long>(n));
      for (std::size_t r = 0; r < 3; ++r) {
        const std::size_t n0 = cycle_start + r;
        if (width_value(tag, n0) > p) fiber += QBeta::beta_pow(2 - static_cast<long long>(n0));
      }
    }
    d.values.push_back(fiber / mass);
  }
  return d.canonical();
}

/*
 * Third route: vertical slice lengths of the planar tower, scaled by its
 * total area. The slice over x collects the base strip and every strip whose
 * x-extent reaches past x; strip heights 2/beta^(n+2) resolve to the tail
 * beta^-n0 per qualifying residue class.
 */
inline PiecewiseDensity tower_slice_density() {
  std::vector<QBeta> breaks = detail::width_levels();
  breaks.insert(breaks.begin(), 0);
  breaks.push_back(2);

  const QBeta area = tower_total_mass();
  PiecewiseDensity d;
  d.breakpoints = breaks;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const QBeta& p = breaks[i];
    QBeta slice = tower_strip(0, 0).right;
    for (int tag : {2, 3}) {
      const std::size_t cycle_start = tag == 2 ? 1 : 3;
      for (std::size_t n = 1; n < cycle_start; ++n)
        if (width_value(tag, n) > p) slice += tower_strip(tag, n).length();
      for (std::size_t r = 0; r < 3; ++r) {
        const std::size_t n0 = cycle_start + r;
        if (width_value(tag, n0) > p) slice += QBeta::beta_pow(-static_cast<long long>(n0));
      }
    }
    d.values.push_back(slice / area);
  }
  return d.canonical();
}

/*
 * Pointwise transfer-operator residual (L d)(x) - d(x), where
 * (L d)(x) = (1/beta) * sum over preimages y of x of d(y). Preimages are
 * (x + j)/beta filtered by branch membership. Returns nothing when x or a
 * preimage collides with a breakpoint; callers resample.
 */
inline std::optional<QBeta> transfer_residual(const QBeta& x, const PiecewiseDensity& d) {
  if (x.sign() < 0 || x >= 2) throw std::domain_error("transfer_residual: x outside [0, 2)");
  if (d.is_breakpoint(x)) return std::nullopt;
  QBeta pulled = 0;
  for (int j : {0, 2, 3}) {
    const QBeta y = (x + j).div_beta();
    if (!golden::branch(j).contains(y)) continue;
    if (d.is_breakpoint(y)) return std::nullopt;
    pulled += d.value_at(y);
  }
  return pulled * inv_beta() - d.value_at(x);
}

/*
 * Symbolic transfer operator: the pullback of d through each inverse branch
 * is itself a step density; their sum is returned in canonical form. The
 * invariant density is exactly a fixed point.
 */
inline PiecewiseDensity transfer_apply(const PiecewiseDensity& d) {
  // branch j contributes on [0, right_j) with right_0 = 2, right_2 = 1, right_3 = 1/beta^3
  const QBeta rights[3] = {2, 1, inv_beta_cube()};
  const int digits[3] = {0, 2, 3};

  std::vector<QBeta> breaks{0, 2};
  for (std::size_t k = 0; k < 3; ++k) {
    breaks.push_back(rights[k]);
    for (const auto& b : d.breakpoints) {
      const QBeta pulled = b.times_beta() - digits[k];
      if (pulled.sign() > 0 && pulled < rights[k]) breaks.push_back(pulled);
    }
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  PiecewiseDensity out;
  out.breakpoints = breaks;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    QBeta v = 0;
    for (std::size_t k = 0; k < 3; ++k) {
      if (breaks[i] >= rights[k]) continue;
      v += d.value_at((breaks[i] + digits[k]).div_beta());
    }
    out.values.push_back(v * inv_beta());
  }
  return out.canonical();
}

/*
 * Classical golden system with digits {0, 1}: the finite orbit of 1 makes
 * the Gelfond-Parry sum exact. The orbit is 1 -> 1/beta -> 0, so the density
 * has a single interior breakpoint.
 */
inline PiecewiseDensity classical_density_golden() {
  std::vector<QBeta> orbit{1};
  while (orbit.back().sign() > 0 && orbit.size() < 64) {
    const QBeta& t = orbit.back();
    orbit.push_back(t < inv_beta() ? beta_value() * t : beta_value() * t - 1);
  }
  std::vector<QBeta> breaks{0, 1};
  for (const QBeta& t : orbit)
    if (t.sign() > 0 && t < 1) breaks.push_back(t);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  QBeta norm = 0;
  for (std::size_t n = 0; n < orbit.size(); ++n)
    norm += QBeta::beta_pow(-static_cast<long long>(n)) * orbit[n];

  PiecewiseDensity d;
  d.breakpoints = breaks;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    QBeta v = 0;
    for (std::size_t n = 0; n < orbit.size(); ++n)
      if (orbit[n] > breaks[i]) v += QBeta::beta_pow(-static_cast<long long>(n));
    d.values.push_back(v / norm);
  }
  return d.canonical();
}

/// Float Gelfond-Parry density for an arbitrary base, truncated at N terms.
struct FloatDensity {
  std::vector<double> breakpoints;
  std::vector<double> values;

  double value_at(double x) const {
    if (breakpoints.size() < 2 || x < breakpoints.front() || x >= breakpoints.back())
      throw std::domain_error("FloatDensity: point outside the domain");
    std::size_t i = 0;
    while (x >= breakpoints[i + 1]) ++i;
    return values[i];
  }
};

inline FloatDensity classical_density(double beta, std::size_t truncation) {
  if (beta <= 1) throw std::invalid_argument("classical base must exceed 1");
  if (truncation == 0) throw std::invalid_argument("truncation must be positive");
  const double top = std::floor(beta);
  std::vector<double> orbit{1.0};
  for (std::size_t n = 1; n < truncation; ++n) {
    double t = orbit.back();
    double d = top;
    for (int j = 0; j < static_cast<int>(top); ++j)
      if (t < (j + 1) / beta) {
        d = j;
        break;
      }
    orbit.push_back(beta * t - d);
  }
  std::vector<double> breaks{0.0, 1.0};
  for (double t : orbit)
    if (t > 0.0 && t < 1.0) breaks.push_back(t);
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  double norm = 0;
  for (std::size_t n = 0; n < orbit.size(); ++n) norm += std::pow(beta, -double(n)) * orbit[n];

  FloatDensity d;
  d.breakpoints = breaks;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    double v = 0;
    for (std::size_t n = 0; n < orbit.size(); ++n)
      if (orbit[n] > breaks[i]) v += std::pow(beta, -double(n));
    d.values.push_back(v / norm);
  }
  return d;
}

/*
 * Birkhoff occupation statistics of the float orbit. Deterministic for a
 * fixed (seed, shard count): starts come from explicit bit manipulation of
 * mt19937_64 output, never from distribution adapters.
 */
struct BirkhoffBin {
  double left;
  double right;
  std::uint64_t count;
  double frequency;
  double expected;
};

struct BirkhoffResult {
  std::vector<BirkhoffBin> bins;
  std::uint64_t iterations;
  std::vector<double> starts;  // one per shard
};

/// Bin edges matching the six density pieces.
inline std::vector<double> piece_edges() {
  std::vector<double> e;
  for (const auto& b : golden_density().breakpoints) e.push_back(b.to_double());
  return e;
}

inline std::vector<double> uniform_edges(std::size_t bins) {
  std::vector<double> e;
  for (std::size_t i = 0; i <= bins; ++i) e.push_back(2.0 * double(i) / double(bins));
  return e;
}

namespace detail {

inline double uniform_in_domain(std::mt19937_64& rng) {
  return 2.0 * double(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

inline BirkhoffResult birkhoff(std::uint64_t iterations, const std::vector<double>& edges,
                               std::uint64_t seed, std::optional<double> start = std::nullopt,
                               unsigned shards = 1) {
  if (edges.size() < 2) throw std::invalid_argument("birkhoff: need at least one bin");
  if (shards == 0) shards = 1;
  const double t2 = two_over_beta().to_double();
  const double t3 = three_over_beta().to_double();
  const double beta = beta_value().to_double();

  std::vector<std::uint64_t> counts(edges.size() - 1, 0);
  std::vector<double> starts;
  for (unsigned s = 0; s < shards; ++s) {
    std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * (s + 1));
    double x = (s == 0 && start) ? *start : detail::uniform_in_domain(rng);
    if (x < 0 || x >= 2) throw std::domain_error("birkhoff: start outside [0, 2)");
    starts.push_back(x);
    std::uint64_t n = iterations / shards + (s < iterations % shards ? 1 : 0);
    for (std::uint64_t i = 0; i < n; ++i) {
      const auto it = std::upper_bound(edges.begin(), edges.end(), x);
      if (it != edges.begin() && it != edges.end()) ++counts[std::size_t(it - edges.begin()) - 1];
      const double d = x < t2 ? 0.0 : (x < t3 ? 2.0 : 3.0);
      x = beta * x - d;
      if (x < 0) x = 0;
    }
  }

  const PiecewiseDensity h = golden_density();
  BirkhoffResult res{{}, iterations, starts};
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const QBeta lo{Rational(edges[i])};
    const QBeta hi{Rational(edges[i + 1])};
    const QBeta lo_c = lo < 0 ? QBeta(0) : lo;
    const QBeta hi_c = hi > 2 ? QBeta(2) : hi;
    const double expected = lo_c < hi_c ? h.mass(lo_c, hi_c).to_double() : 0.0;
    const double freq = iterations ? double(counts[i]) / double(iterations) : 0.0;
    res.bins.push_back({edges[i], edges[i + 1], counts[i], freq, expected});
  }
  return res;
}

}  // namespace betadd
