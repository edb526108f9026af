#pragma once

#include "betadd/qbeta.hpp"

namespace betadd {

/// Half-open interval [left, right) with exact endpoints. Empty iff left >= right.
struct Interval {
  QBeta left;
  QBeta right;

  bool empty() const { return left >= right; }
  QBeta length() const { return empty() ? QBeta(0) : right - left; }
  bool contains(const QBeta& x) const { return left <= x && x < right; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Intersection, canonicalized to [0, 0) when empty.
inline Interval intersect(const Interval& p, const Interval& q) {
  Interval r{p.left < q.left ? q.left : p.left, p.right < q.right ? p.right : q.right};
  if (r.empty()) return {0, 0};
  return r;
}

}  // namespace betadd
