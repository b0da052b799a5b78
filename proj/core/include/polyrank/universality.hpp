#pragma once

// Affine pullbacks Q = P(Ay + b), weakly polynomial functions on a point set
// X (degree <= a on every affine line or plane inside X), and the comparison
// between that weak space and the restrictions of global polynomials.

#include <optional>
#include <string>
#include <vector>

#include "polyrank/enumeration.hpp"
#include "polyrank/linalg.hpp"
#include "polyrank/poly.hpp"

namespace polyrank {

/// y -> A y + b, K^m -> K^n. A is n x m.
struct AffineMap {
  Matrix a;
  Point b;

  std::size_t source_dim() const noexcept { return a.cols(); }
  std::size_t target_dim() const noexcept { return a.rows(); }
  Point apply(std::span<const Elem> y, const Ring& ring) const;
  /// (phi* P)(y) = P(A y + b).
  MultiPoly pullback(const MultiPoly& p) const;
  std::string to_string(const Ring& ring) const;
};

enum class PullbackStatus { Found, NoneFound, ProvenNonexistent };
const char* to_string(PullbackStatus s);

struct PullbackOptions {
  EnumOptions enumeration;
  std::uint64_t random_trials = 100000;
  std::uint64_t seed = 1;
};

struct PullbackResult {
  PullbackStatus status = PullbackStatus::NoneFound;
  std::optional<AffineMap> map;
  std::string stage;            // "coordinate", "exhaustive" or "random"
  std::uint64_t maps_tried = 0;
};

/// Searches phi with phi* P = Q. Stages: coordinate maps (each x_i is some
/// y_j or 0, plus a 0/1 shift), then every map when q^{(m+1)n} fits the
/// budget, else random maps. Candidates are filtered by values on K^m and
/// confirmed symbolically.
PullbackResult affine_pullback_search(const MultiPoly& p, const MultiPoly& q, const PullbackOptions& opts = {});

class FunctionTable {
 public:
  FunctionTable(Ring ring, std::size_t n, std::vector<Point> domain, std::vector<Elem> values);
  /// G restricted to the given points.
  static FunctionTable restriction(const MultiPoly& g, std::vector<Point> domain);

  const Ring& ring() const noexcept { return ring_; }
  std::size_t num_vars() const noexcept { return n_; }
  const std::vector<Point>& domain() const noexcept { return domain_; }
  const std::vector<Elem>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return domain_.size(); }
  /// Index of v in the domain, or npos.
  std::size_t find(std::span<const Elem> v) const;
  bool agrees_with(const MultiPoly& g) const;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

 private:
  Ring ring_;
  std::size_t n_;
  std::vector<Point> domain_;
  std::vector<Elem> values_;
  std::vector<std::size_t> order_;  // domain indices sorted by point
};

/// x + span(directions). Directions are in reduced echelon form.
struct AffineSubspace {
  Point base;
  std::vector<Point> directions;
  std::string to_string() const;
};

/// Every affine subspace of dimension 1..cap lying inside the point set,
/// each listed once. Lines first, then planes.
std::vector<AffineSubspace> contained_subspaces(const Ring& ring, const std::vector<Point>& points, unsigned cap,
                                                const EnumOptions& opts = {});

struct WeakTestResult {
  bool holds = true;
  std::optional<AffineSubspace> witness;
  std::size_t lines = 0, planes = 0;
};

/// Requires a field and a <= q - 2.
WeakTestResult is_weakly_polynomial(const FunctionTable& f, unsigned a, unsigned cap = 1,
                                    const EnumOptions& opts = {});

/// Some G of degree <= a with G = f on the domain (free coefficients 0).
std::optional<MultiPoly> extend_weakly_polynomial(const FunctionTable& f, unsigned a, const EnumOptions& opts = {});

struct StarReport {
  std::uint64_t points = 0;
  std::size_t lines = 0, planes = 0;
  std::size_t dim_global = 0;
  std::size_t dim_weak_upper = 0;  // only subspaces up to the cap are imposed
  bool equal = false;
  std::vector<Point> domain;
  /// Basis of the weak space as value vectors over `domain`.
  std::vector<std::vector<Elem>> weak_basis;
  /// Weak-space functions completing a basis modulo the global restrictions.
  std::vector<FunctionTable> gap;
  /// q = 1 mod e with e = a * max deg; reported, not enforced.
  std::uint64_t admissibility_e = 0;
  bool admissible = false;
};

/// X = fiber of the collection over the target.
StarReport star_a_dimension_compare(const PolyCollection& coll, std::span<const Elem> target, unsigned a,
                                    unsigned cap = 1, const EnumOptions& opts = {});
/// Same, on an explicit point set.
StarReport star_a_dimension_compare(const Ring& ring, std::size_t n, const std::vector<Point>& points, unsigned a,
                                    unsigned cap = 1, const EnumOptions& opts = {});

}  // namespace polyrank
