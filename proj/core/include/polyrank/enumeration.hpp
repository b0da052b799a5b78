#pragma once

// Exhaustive evaluation kernel. Points are visited as (outer, last) with each
// polynomial rewritten as a univariate in the last variable, so the expensive
// part (coefficient evaluation) runs once per q points. Shards split the outer
// range; per-shard integer counts are merged by addition, which makes every
// result independent of the shard count.

#include <cstdint>
#include <span>
#include <vector>

#include "polyrank/poly.hpp"

namespace polyrank {

inline constexpr std::uint64_t kDefaultBudget = 10'000'000;

struct EnumOptions {
  std::uint64_t budget = kDefaultBudget;
  unsigned shards = 1;
};

/// Codomain index of a value tuple: sum_i t_i q^{c-1-i}.
std::uint64_t value_key(const Ring& ring, std::span<const Elem> values);
Point value_from_key(const Ring& ring, std::size_t c, std::uint64_t key);

/// counts[key] = #{v : (P_1(v)..P_c(v)) = value_from_key(key)}.
std::vector<std::uint64_t> count_values(std::span<const MultiPoly> polys, const EnumOptions& opts);

struct FiberScan {
  std::uint64_t count = 0;
  std::vector<Point> points;  // first `cap` in lexicographic order
};

/// Points with P_i(v) = target_i for all i.
FiberScan scan_fiber(std::span<const MultiPoly> polys, std::span<const Elem> target, const EnumOptions& opts,
                     std::uint64_t cap);

}  // namespace polyrank
