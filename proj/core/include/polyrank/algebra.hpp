#pragma once

// Coefficient rings (GF(p), GF(p^k), Z/p^l) and finite module domains R^n.
//
// Every ring element is a canonical residue packed into one machine word:
//   GF(p), Z/p^l : the integer residue in [0, q)
//   GF(p^k)      : sum c_i p^i over the coefficient vector (c_0..c_{k-1}) of
//                  the element as a polynomial in t modulo the field modulus.
// Arithmetic is table driven for extension fields; all tables are built once
// and shared between copies of a Ring, which are immutable.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polyrank/errors.hpp"

namespace polyrank {

using Elem = std::uint32_t;
using Point = std::vector<Elem>;

/// Supported-size caps: every downstream analysis is exhaustive.
inline constexpr std::uint32_t kMaxFieldSize = 1u << 20;
inline constexpr unsigned kMaxPadicLevel = 6;

enum class RingKind { PrimeField, ExtensionField, PrimePower };

bool is_prime(std::uint64_t n);

struct RingTables;

class Ring {
 public:
  /// GF(2).
  Ring() = default;

  /// GF(p).
  static Ring prime_field(std::uint32_t p);
  /// GF(p^k); the modulus is given low-to-high (k coefficients, monic term
  /// implicit). When absent the lexicographically least irreducible monic
  /// polynomial of degree k is used.
  static Ring extension_field(std::uint32_t p, unsigned k,
                              std::optional<std::vector<Elem>> modulus = std::nullopt);
  /// Z/p^l.
  static Ring prime_power(std::uint32_t p, unsigned l);

  RingKind kind() const noexcept { return kind_; }
  std::uint32_t characteristic_prime() const noexcept { return p_; }
  /// k for GF(p^k) (1 for GF(p)); l for Z/p^l.
  unsigned exponent() const noexcept { return e_; }
  std::uint32_t size() const noexcept { return q_; }
  bool is_field() const noexcept { return kind_ != RingKind::PrimePower || e_ == 1; }
  /// Additive order of 1: p for fields, p^l for Z/p^l.
  std::uint32_t characteristic() const noexcept { return kind_ == RingKind::PrimePower ? q_ : p_; }

  /// Monic modulus coefficients c_0..c_{k-1} (extension fields only).
  const std::vector<Elem>& modulus() const;

  Elem zero() const noexcept { return 0; }
  Elem one() const noexcept { return 1; }
  Elem from_int(std::int64_t v) const noexcept;

  Elem add(Elem a, Elem b) const noexcept {
    switch (kind_) {
      case RingKind::ExtensionField: return ext_add(a, b);
      default: {
        Elem s = a + b;
        return s >= q_ ? s - q_ : s;
      }
    }
  }
  Elem neg(Elem a) const noexcept {
    if (kind_ == RingKind::ExtensionField) return ext_neg(a);
    return a == 0 ? 0 : q_ - a;
  }
  Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const noexcept {
    if (kind_ == RingKind::ExtensionField) return ext_mul(a, b);
    return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % q_);
  }
  Elem pow(Elem a, std::uint64_t e) const noexcept;

  bool is_unit(Elem a) const noexcept;
  /// Multiplicative inverse; throws PreconditionError for non-units.
  Elem inv(Elem a) const;

  /// Absolute trace GF(p^k) -> GF(p); identity on GF(p). Fields only.
  Elem trace(Elem a) const;

  /// Denominator N of the standard additive character e(phase(t)/N):
  /// p for fields (composed with the trace), p^l for Z/p^l.
  std::uint32_t phase_modulus() const noexcept { return kind_ == RingKind::PrimePower ? q_ : p_; }
  /// Numerator of the standard additive character at t, in [0, phase_modulus()).
  Elem phase(Elem t) const { return kind_ == RingKind::ExtensionField ? trace(t) : t; }

  /// Coefficient vector (length k) of an extension element; {a} otherwise.
  std::vector<Elem> coefficients(Elem a) const;
  Elem from_coefficients(std::span<const Elem> coeffs) const;

  /// p-adic valuation of a nonzero element of Z/p^l (l for zero).
  unsigned valuation(Elem a) const noexcept;

  /// Ring descriptor text, e.g. "GF(4)", "Z/9".
  std::string descriptor() const;
  std::string element_to_string(Elem a) const;

  bool operator==(const Ring& other) const noexcept;

 private:
  Elem ext_add(Elem a, Elem b) const noexcept;
  Elem ext_neg(Elem a) const noexcept;
  Elem ext_mul(Elem a, Elem b) const noexcept;

  RingKind kind_ = RingKind::PrimeField;
  std::uint32_t p_ = 2;
  unsigned e_ = 1;
  std::uint32_t q_ = 2;
  std::shared_ptr<const RingTables> tables_;
};

/// Parses `GF(p)`, `GF(p^k)`, `GF(q)` with q a prime power, `Z/p^l`, `Z/N`
/// with N a prime power, and optionally `GF(p^k; c0,c1,...,c{k-1})` with an
/// explicit monic modulus (low-to-high, leading 1 implicit), or `GF(q, t^2+t+1)`.
Ring ring_from_text(std::string_view text);

/// Reduction Z/p^l -> GF(p) as a ring homomorphism on residues.
Elem reduce_to_residue_field(const Ring& ring, Elem a);

/// Univariate polynomial helpers over GF(p), coefficients low-to-high.
namespace fp_poly {
std::vector<std::uint32_t> mulmod(const std::vector<std::uint32_t>& a,
                                  const std::vector<std::uint32_t>& b,
                                  const std::vector<std::uint32_t>& monic_mod, std::uint32_t p);
/// Ben-Or irreducibility test for a monic polynomial (full coefficient list,
/// leading coefficient included).
bool is_irreducible(const std::vector<std::uint32_t>& monic, std::uint32_t p);
}  // namespace fp_poly

/// Lexicographically least monic irreducible of degree k over GF(p):
/// coefficients c_0..c_{k-1} compared from c_{k-1} down.
std::vector<Elem> least_irreducible_modulus(std::uint32_t p, unsigned k);

// ---------------------------------------------------------------------------
// Domains

struct Shard {
  std::uint64_t index = 0;
  std::uint64_t total = 1;
};

/// V = R^n with lexicographic enumeration of canonical representations
/// (first coordinate most significant).
class Domain {
 public:
  Domain(Ring ring, std::size_t n) : ring_(std::move(ring)), n_(n) {}

  const Ring& ring() const noexcept { return ring_; }
  std::size_t dimension() const noexcept { return n_; }
  BigInt cardinality() const;
  /// Cardinality as a machine integer; throws BudgetExceeded above `budget`.
  std::uint64_t checked_size(std::uint64_t budget) const;

  Point point_at(std::uint64_t index) const;
  /// Half-open index range of a shard; shards partition [0, size) in order.
  static std::pair<std::uint64_t, std::uint64_t> shard_range(std::uint64_t size, Shard shard);

 private:
  Ring ring_;
  std::size_t n_;
};

/// Points of one shard in global lexicographic order.
std::vector<Point> enumerate_domain(const Domain& domain, Shard shard, std::uint64_t budget);

/// Calls `visit` for every point of the shard in order; the Point reference
/// is reused between calls.
void for_each_point(const Domain& domain, Shard shard, std::uint64_t budget,
                    const std::function<void(const Point&)>& visit);

}  // namespace polyrank
