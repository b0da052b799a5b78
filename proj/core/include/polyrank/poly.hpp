#pragma once

// Sparse multivariate polynomials over a Ring, the difference operator
// Delta_h P(x) = P(x+h) - P(x), the symmetric multilinear form obtained by
// applying it once per degree, and a few explicit constructions.

#include <climits>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "polyrank/algebra.hpp"

namespace polyrank {

using Exponents = std::vector<std::uint16_t>;

/// Degree of the zero polynomial.
inline constexpr int kZeroDegree = INT_MIN;

class MultiPoly {
 public:
  using TermMap = std::map<Exponents, Elem>;

  MultiPoly(Ring ring, std::size_t n) : ring_(std::move(ring)), n_(n) {}

  static MultiPoly constant(const Ring& ring, std::size_t n, Elem c);
  /// The coordinate function x_{i+1} (0-based index).
  static MultiPoly variable(const Ring& ring, std::size_t n, std::size_t i);
  /// Affine form c_0 + sum_i coeffs[i] x_{i+1}.
  static MultiPoly affine(const Ring& ring, std::span<const Elem> coeffs, Elem c0);

  const Ring& ring() const noexcept { return ring_; }
  std::size_t num_vars() const noexcept { return n_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t num_terms() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  /// Max total degree; kZeroDegree for the zero polynomial.
  int degree() const noexcept;
  int degree_in(std::size_t var) const noexcept;
  Elem coefficient(const Exponents& e) const;

  /// Adds c * x^e, cancelling to zero when needed.
  void add_term(const Exponents& e, Elem c);

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& other);
  MultiPoly& operator-=(const MultiPoly& other);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly scaled(Elem c) const;
  MultiPoly pow(unsigned e) const;

  MultiPoly homogeneous_part(int d) const;
  bool is_homogeneous() const;

  Elem evaluate(std::span<const Elem> point) const;

  /// Replaces x_i by images[i]; all images share a ring and a variable count.
  MultiPoly substitute(std::span<const MultiPoly> images) const;
  /// Same coefficients read in a larger variable space: x_i -> x_{offset+i}.
  MultiPoly embed(std::size_t new_n, std::size_t offset = 0) const;
  /// Maps every coefficient through `f` into `target`.
  template <class F>
  MultiPoly map_coefficients(const Ring& target, F&& f) const {
    MultiPoly out(target, n_);
    for (const auto& [e, c] : terms_) out.add_term(e, f(c));
    return out;
  }

  /// Human readable text, re-parseable by parse_poly.
  std::string to_string() const;

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    return a.n_ == b.n_ && a.ring_ == b.ring_ && a.terms_ == b.terms_;
  }

 private:
  Ring ring_;
  std::size_t n_;
  TermMap terms_;
};

/// Parses `x1*x2 + 2*x3^2 - x4`, with integer coefficients reduced into the
/// ring, parentheses, `^` on any factor, and (extension fields) the field
/// generator `t`.
MultiPoly parse_poly(std::string_view text, const Ring& ring, std::size_t n);

Elem evaluate(const MultiPoly& p, std::span<const Elem> point);

/// P(x+h) - P(x) for a constant shift h.
MultiPoly delta(const MultiPoly& p, std::span<const Elem> h);

/// Sum_j v_j dP/dx_j. Throws UnsupportedCharacteristic when p <= deg P.
MultiPoly directional_derivative(const MultiPoly& p, std::span<const Elem> v);
MultiPoly partial_derivative(const MultiPoly& p, std::size_t var);

/// Coefficientwise reduction Z/p^l -> GF(p).
MultiPoly reduce_mod_p(const MultiPoly& p);
/// Coefficient embedding GF(p) -> GF(p^k) (or GF(p) -> Z/p^l by residues).
MultiPoly embed_coefficients(const MultiPoly& p, const Ring& target);

/// Monomials of total degree <= deg, highest degree first.
std::vector<Exponents> monomials_up_to(std::size_t n, int deg);

/// Q_m(w_1..w_m) = sum_i prod_{j<d} x_{d*i+j+1}: m disjoint degree-d monomials.
MultiPoly build_Qm(unsigned d, unsigned m, const Ring& ring);

/// Symmetric multilinear form Delta_{h_1}...Delta_{h_d} P in d blocks of n
/// variables: block b coordinate i is variable b*n + i.
class MultilinearForm {
 public:
  MultilinearForm(MultiPoly base, unsigned blocks, std::size_t block_size);

  const MultiPoly& poly() const noexcept { return base_; }
  unsigned blocks() const noexcept { return d_; }
  std::size_t block_size() const noexcept { return n_; }
  const Ring& ring() const noexcept { return base_.ring(); }

  /// True when every monomial takes exactly one variable from each block.
  bool is_block_multilinear() const;
  Elem evaluate(std::span<const Point> block_points) const;

 private:
  MultiPoly base_;
  unsigned d_;
  std::size_t n_;
};

/// Requires deg(P) >= 1.
MultilinearForm multilinear_form(const MultiPoly& p);

/// Delta_{h_1}..Delta_{h_m} P as a polynomial in (m+1)n variables
/// (x first, then h_1..h_m), keeping the x dependence.
MultiPoly iterated_difference(const MultiPoly& p, unsigned m);

/// A tuple of polynomials over one ring and one variable count, with the
/// declared degree vector.
class PolyCollection {
 public:
  explicit PolyCollection(std::vector<MultiPoly> polys);
  PolyCollection(std::vector<MultiPoly> polys, std::vector<int> declared_degrees);

  const std::vector<MultiPoly>& polys() const noexcept { return polys_; }
  const MultiPoly& operator[](std::size_t i) const { return polys_[i]; }
  std::size_t size() const noexcept { return polys_.size(); }
  const Ring& ring() const noexcept { return polys_.front().ring(); }
  std::size_t num_vars() const noexcept { return polys_.front().num_vars(); }
  const std::vector<int>& degrees() const noexcept { return degrees_; }
  /// True when deg(P_i) equals its declared degree.
  bool degree_is_exact(std::size_t i) const;
  /// D = prod d_i.
  std::uint64_t degree_product() const;
  int max_degree() const;

  /// P_a = sum_i a_i P_i.
  MultiPoly combination(std::span<const Elem> a) const;

 private:
  std::vector<MultiPoly> polys_;
  std::vector<int> degrees_;
};

}  // namespace polyrank
