#pragma once

// Degree-bounded ideal membership Q = sum R_i P_i over a finite field, and a
// probe that takes every low-degree Q vanishing on X = {P = 0} and asks
// whether it lies in the ideal without degree growth.

#include <optional>
#include <vector>

#include "polyrank/enumeration.hpp"
#include "polyrank/rank.hpp"

namespace polyrank {

/// Q(x) = 0 at every rational x with P(x) = 0.
bool vanishes_on_points(const MultiPoly& q, const PolyCollection& coll, const EnumOptions& opts = {});

struct MembershipCertificate {
  std::vector<MultiPoly> cofactors;  // R_i with deg R_i <= degbound - d_i
  unsigned degbound = 0;
};

/// Re-expands sum R_i P_i.
bool verify_membership(const MultiPoly& q, const PolyCollection& coll, const MembershipCertificate& cert);

/// Some certificate with deg R_i <= degbound - deg P_i (R_i = 0 when that is
/// negative), or nullopt when the linear system is inconsistent. nullopt says
/// nothing about larger degree bounds. Requires degbound >= deg Q.
std::optional<MembershipCertificate> ideal_membership(const MultiPoly& q, const PolyCollection& coll,
                                                      unsigned degbound, const EnumOptions& opts = {});

struct ProbeOptions {
  EnumOptions enumeration{};
  /// Membership is tested at degree a + extra_degree.
  unsigned extra_degree = 0;
  /// Pair the result with collection rank bounds (may be slow).
  bool with_rank = true;
};

struct NullstellensatzReport {
  unsigned a = 0;
  std::uint64_t points = 0;             // |X(F_q)|
  std::size_t monomials = 0;            // degree <= a
  std::size_t evaluation_rank = 0;
  std::vector<MultiPoly> kernel;        // basis of vanishing Q, deg <= a
  std::vector<std::optional<MembershipCertificate>> membership;
  std::size_t certified = 0;
  /// certified / kernel size; 1 when the kernel is trivial.
  double fraction = 1.0;
  std::optional<RankEstimate> rank;
};

/// Refuses unless a < q / D (PreconditionError).
NullstellensatzReport nullstellensatz_probe(const PolyCollection& coll, unsigned a, const ProbeOptions& opts = {});

}  // namespace polyrank
