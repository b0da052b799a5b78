#pragma once

// Point counts on fibers F_t = {v : P(v) = t}: exact counts with a sample,
// counts over the extensions GF(p^l) normalized by p^{(n-c)l}, rank of the
// Jacobian at rational points, and the rough bound |F_t| <= q^{n-c} prod d_i.

#include <cstdint>
#include <vector>

#include "polyrank/enumeration.hpp"
#include "polyrank/rational.hpp"

namespace polyrank {

struct FiberResult {
  Point target;
  std::uint64_t count = 0;
  std::vector<Point> sample;  // first points in lexicographic order
};

FiberResult fiber_points(const PolyCollection& coll, std::span<const Elem> target, const EnumOptions& opts = {},
                         std::uint64_t sample_cap = 16);

struct TauSequence {
  std::uint32_t q = 0;  // base prime
  std::size_t n = 0, c = 0;
  std::vector<unsigned> levels;   // 1..L
  std::vector<BigInt> counts;     // |X(GF(q^l))|
  std::vector<Rational> ratios;   // counts / q^{(n-c) l}
};

/// Requires a prime base field and q^{l n} <= budget for every level.
TauSequence tau_sequence(const PolyCollection& coll, std::span<const Elem> target, unsigned levels,
                         const EnumOptions& opts = {});

struct SmoothnessSample {
  Point target;
  std::uint64_t inspected = 0;
  std::uint64_t full_rank = 0;    // Jacobian rank c
  std::uint64_t deficient = 0;    // rank < c
  std::uint64_t fiber_size = 0;   // exact |F_t|
  std::vector<Point> singular_points;  // first few
  double smooth_fraction() const {
    return inspected == 0 ? 0.0 : static_cast<double>(full_rank) / static_cast<double>(inspected);
  }
};

/// Inspects the first `sample_size` fiber points in order. Requires
/// characteristic > max degree.
SmoothnessSample jacobian_smoothness(const PolyCollection& coll, std::span<const Elem> target,
                                     std::uint64_t sample_size, const EnumOptions& opts = {});

struct BezoutEntry {
  Point target;
  BigInt count;
};

struct BezoutReport {
  BigInt bound;                 // q^{n-c} D
  std::uint64_t degree_product = 0;
  BigInt max_count;
  Point argmax;
  bool holds = true;
  /// max_t |F_t| / q^{n-c} <= D, the point-count shadow of dim F_t = n - c.
  Rational max_tau1;
  std::vector<BezoutEntry> violations;
  std::vector<BezoutEntry> entries;  // every fiber when q^c <= 4096
};

BezoutReport bezout_rough_bound_check(const PolyCollection& coll, const EnumOptions& opts = {});

}  // namespace polyrank
