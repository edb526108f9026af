#pragma once

#include "betadd/greedy.hpp"
#include "betadd/interval.hpp"
#include "betadd/qbeta.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace betadd {

/*
 * Fundamental intervals of the golden system. The cylinder of a digit block
 * b_0 ... b_(n-1) is the set of points whose first n greedy digits are the
 * block; it is a half-open interval, possibly empty. A rank-n cylinder is
 * full when its n-th image is all of [0, 2), equivalently when its length is
 * exactly 2/beta^n.
 */
struct Cylinder {
  std::string block;
  std::size_t rank = 0;
  Interval interval{0, 0};
  bool full = false;

  bool empty() const { return interval.empty(); }
  friend bool operator==(const Cylinder&, const Cylinder&) = default;
};

namespace detail {

inline int block_digit(char c) {
  switch (c) {
    case '0': return 0;
    case '2': return 2;
    case '3': return 3;
    default: throw std::invalid_argument("cylinder block digits must be 0, 2 or 3");
  }
}

}  // namespace detail

/// Endpoints by pulling [0, 2) back through the inverse branches, right to left.
inline Cylinder cylinder(std::string_view block) {
  Interval j = golden::domain();
  for (std::size_t i = block.size(); i-- > 0;) {
    const int d = detail::block_digit(block[i]);
    j = Interval{(j.left + d).div_beta(), (j.right + d).div_beta()};
    j = intersect(j, golden::branch(d));
    if (j.empty()) return {std::string(block), block.size(), {0, 0}, false};
  }
  const bool full = !block.empty() && j.length() == 2 * QBeta::beta_pow(-static_cast<long long>(block.size()));
  return {std::string(block), block.size(), j, full};
}

/*
 * Image of the cylinder under T^rank, tracked forward: every realizable
 * block has image [0, r), and appending digit d sends r to
 * beta * min(r, right(D(d))) - d, provided [0, r) meets D(d) at all.
 */
inline Interval image(std::string_view block) {
  QBeta r = 2;
  for (char c : block) {
    const int d = detail::block_digit(c);
    const Interval& br = golden::branch(d);
    if (r <= br.left) throw std::domain_error("image: block is not realizable");
    const QBeta hi = r < br.right ? r : br.right;
    r = hi.times_beta() - d;
  }
  return {0, r};
}

inline bool is_full(std::string_view block) {
  if (block.empty()) return false;
  QBeta r = 2;
  for (char c : block) {
    const int d = detail::block_digit(c);
    const Interval& br = golden::branch(d);
    if (r <= br.left) return false;
    const QBeta hi = r < br.right ? r : br.right;
    r = hi.times_beta() - d;
  }
  return r == 2;
}

/*
 * Reference digit sequences: d_i(2) is the i-th greedy digit of 1 and
 * d_i(3) the i-th greedy digit of 1/beta^3. Both are 2 exactly at the
 * positions i = 2 mod 3, except that the second sequence starts its 2s
 * at i = 5.
 */
inline int reference_digit(int tag, std::size_t i) {
  if (i == 0 || (tag != 2 && tag != 3)) throw std::invalid_argument("reference_digit: bad index");
  if (i % 3 != 2) return 0;
  if (tag == 3 && i < 5) return 0;
  return 2;
}

/// Block tag d_1 ... d_(n-1) over the reference sequence of the tag.
inline std::string family_block(int tag, std::size_t n) {
  std::string b(1, static_cast<char>('0' + tag));
  for (std::size_t i = 1; i < n; ++i) b += static_cast<char>('0' + reference_digit(tag, i));
  return b;
}

enum class Family { All, D, B };

/// Closed-form digit blocks of the family D_n (full, no full proper prefix).
inline std::vector<std::string> family_D_blocks(std::size_t n) {
  if (n == 1) return {"0"};
  if (n == 3) return {"200"};
  if (n >= 6 && n % 3 == 0) return {family_block(2, n - 1) + "0", family_block(3, n - 1) + "0"};
  return {};
}

/// Closed-form digit blocks of the family B_n (non-full, no full proper prefix).
inline std::vector<std::string> family_B_blocks(std::size_t n) {
  return {family_block(2, n), family_block(3, n)};
}

/// All realizable cylinders of the given rank, lexicographic by block.
inline std::vector<Cylinder> enumerate_rank(std::size_t rank) {
  if (rank == 0) throw std::invalid_argument("enumerate_rank: rank must be positive");
  std::vector<Cylinder> out;
  std::string block;
  auto walk = [&](auto&& self, const QBeta& r, std::size_t depth) -> void {
    if (depth == rank) {
      out.push_back(cylinder(block));
      return;
    }
    for (int d : {0, 2, 3}) {
      const Interval& br = golden::branch(d);
      if (r <= br.left) continue;
      const QBeta hi = r < br.right ? r : br.right;
      block.push_back(static_cast<char>('0' + d));
      self(self, hi.times_beta() - d, depth + 1);
      block.pop_back();
    }
  };
  walk(walk, 2, 0);
  return out;
}

/*
 * Family enumeration. The closed forms are valid for every rank; the
 * brute-force route walks the realizable tree and applies the definitions
 * directly, and exists so the two can be checked against each other.
 */
inline std::vector<Cylinder> enumerate_family(std::size_t rank, Family family,
                                              bool closed_form = true) {
  if (rank == 0) throw std::invalid_argument("enumerate_family: rank must be positive");
  if (family == Family::All) return enumerate_rank(rank);
  if (closed_form) {
    std::vector<Cylinder> out;
    const auto blocks = family == Family::D ? family_D_blocks(rank) : family_B_blocks(rank);
    for (const auto& b : blocks) out.push_back(cylinder(b));
    return out;
  }
  std::vector<Cylinder> out;
  std::string block;
  // Walk only through non-full prefixes; a full prefix excludes the subtree.
  auto walk = [&](auto&& self, const QBeta& r, std::size_t depth) -> void {
    if (depth == rank) {
      Cylinder c = cylinder(block);
      if (c.full == (family == Family::D)) out.push_back(std::move(c));
      return;
    }
    for (int d : {0, 2, 3}) {
      const Interval& br = golden::branch(d);
      if (r <= br.left) continue;
      const QBeta hi = r < br.right ? r : br.right;
      const QBeta next = hi.times_beta() - d;
      if (depth + 1 < rank && next == 2) continue;  // full proper prefix
      block.push_back(static_cast<char>('0' + d));
      self(self, next, depth + 1);
      block.pop_back();
    }
  };
  walk(walk, 2, 0);
  return out;
}

/// Exact partial sum of the total lengths of D_1, ..., D_N. Tends to 2.
inline QBeta mass_of_D(std::size_t up_to) {
  QBeta sum = 0;
  for (std::size_t n = 1; n <= up_to; ++n) {
    const std::size_t count = family_D_blocks(n).size();
    if (count > 0)
      sum += QBeta(2 * static_cast<long long>(count)) * QBeta::beta_pow(-static_cast<long long>(n));
  }
  return sum;
}

/*
 * Subblock decomposition of a full block: cut at every rank where the prefix
 * cylinder is full. Each piece is then itself a full block, the pieces
 * concatenate to the original block, and the cut ranks are the return times
 * of the cylinder to the base rectangle of the extension.
 */
struct SubblockDecomposition {
  std::vector<std::string> blocks;
  std::vector<std::size_t> return_times;
};

inline SubblockDecomposition decompose(std::string_view block) {
  if (block.empty()) throw std::domain_error("decompose: empty block");
  SubblockDecomposition dec;
  QBeta r = 2;
  std::size_t last_cut = 0;
  for (std::size_t i = 0; i < block.size(); ++i) {
    const int d = detail::block_digit(block[i]);
    const Interval& br = golden::branch(d);
    if (r <= br.left) throw std::domain_error("decompose: block is not realizable");
    const QBeta hi = r < br.right ? r : br.right;
    r = hi.times_beta() - d;
    if (r == 2) {
      dec.blocks.emplace_back(block.substr(last_cut, i + 1 - last_cut));
      dec.return_times.push_back(i + 1);
      last_cut = i + 1;
    }
  }
  if (last_cut != block.size()) throw std::domain_error("decompose: block is not full");
  return dec;
}

}  // namespace betadd
