#pragma once

// Schmidt rank r(P): least r with P = sum_{i<=r} Q_i R_i, deg Q_i, deg R_i <
// deg P (affine factors allowed). Lower bounds come from analytic rank or the
// Gram matrix; upper bounds always carry a verified decomposition.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polyrank/enumeration.hpp"
#include "polyrank/poly.hpp"

namespace polyrank {

struct Decomposition {
  std::vector<std::pair<MultiPoly, MultiPoly>> pairs;

  std::size_t size() const noexcept { return pairs.size(); }
  MultiPoly expand(const Ring& ring, std::size_t n) const;
  std::string to_string() const;
};

/// P == sum Q_i R_i symbolically, with every factor of degree < deg P.
bool verify_decomposition(const MultiPoly& p, const Decomposition& d);

enum class LowerSource { Trivial, Analytic, GramMatrix, Exhaustive, Convention };
std::string to_string(LowerSource s);

struct RankEstimate {
  double lower = 0;
  LowerSource lower_source = LowerSource::Trivial;
  std::optional<unsigned> upper;
  std::optional<Decomposition> certificate;
  std::string note;

  /// Integer lower bound ceil(lower).
  unsigned lower_int() const;
  bool exact() const { return upper && lower_int() >= *upper; }
  /// Raises the lower bound when `value` is larger.
  void offer_lower(double value, LowerSource src);
  /// Lowers the upper bound when `d` verifies and is smaller.
  void offer_upper(const MultiPoly& p, Decomposition d);
};

struct RankOptions {
  EnumOptions enumeration{};
  /// Largest pair count the exhaustive stage tries to rule out.
  unsigned max_r = 4;
};

/// Exact Schmidt rank of a quadratic in odd characteristic via the homogenized
/// Gram matrix; in characteristic 2 a lower bound from the polar form plus
/// the search's upper bound. Throws PreconditionError unless deg P = 2.
RankEstimate quadratic_rank(const MultiPoly& p, const RankOptions& opts = {});

enum class SearchStatus { Found, NoneFound, ProvenImpossible };
std::string to_string(SearchStatus s);

struct SearchResult {
  SearchStatus status = SearchStatus::NoneFound;
  std::optional<Decomposition> decomposition;  // <= max_r pairs, when found
  std::optional<Decomposition> best_known;     // smallest certificate seen, any size
  unsigned proven_lower = 0;                   // rank >= this, from the exhaustive stage
  std::string stage;                           // which stage produced the result
};

/// Staged search: trial division, greedy linear peeling, then exhaustive
/// enumeration of factor sets Q_1..Q_r with the R_i solved linearly, as far as
/// the budget allows. ProvenImpossible is only returned when the exhaustive
/// stage covered every r <= max_r.
SearchResult decomposition_search(const MultiPoly& p, unsigned max_r, const EnumOptions& opts = {});

/// General bounds: quadratic_rank when it applies, otherwise the trivial
/// bound, a(P~)/(2^d - 2) from the polar form, exhaustive impossibility, and
/// the search's certificate.
RankEstimate schmidt_rank_bounds(const MultiPoly& p, const RankOptions& opts = {});

/// Bounds for a block-multilinear form: analytic rank below, certificate above.
RankEstimate multilinear_rank_bounds(const MultilinearForm& form, const RankOptions& opts = {});

/// Rank of P~ = Delta_{h_1}..Delta_{h_d} P.
RankEstimate nc_rank_bounds(const MultiPoly& p, const RankOptions& opts = {});

struct CollectionRank {
  RankEstimate estimate;
  Point minimizing_a;
  MultiPoly minimizing_poly;
};

/// min over a != 0 of the rank of P_a. Requires q^c <= 10^4.
CollectionRank collection_rank_bounds(const PolyCollection& coll, const RankOptions& opts = {});

/// min over a != 0 of a(P_a), exact zero sums giving +inf.
double collection_analytic_rank(const PolyCollection& coll, const EnumOptions& opts = {});

struct EnrichmentResult {
  std::vector<Point> v, w;
  PolyCollection extended;
  RankEstimate estimate;  // lower = min analytic rank over nonzero combinations
};

/// Samples `trials` tuples (v_i, w_i) and keeps the extension
/// (P, d_{v_i} P_i, d_{w_i} P_i) with the largest analytic lower bound.
EnrichmentResult derivative_enrichment_search(const PolyCollection& coll, unsigned trials,
                                              const EnumOptions& opts = {}, std::uint64_t seed = 1);

}  // namespace polyrank
