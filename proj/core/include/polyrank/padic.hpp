#pragma once

// Additive characters of A_l = Z/p^l, chi_c(x) = e(c x / p^l), with depth
// d(chi_c) = l - v_p(c): the least d with chi trivial on p^d A_l. Biases,
// depth-weighted uniformity, a bias-versus-rank scatter, one Cauchy-Schwarz
// step for mixed-level sums, and point counts mod p^m.

#include <optional>
#include <vector>

#include "polyrank/harmonic.hpp"

namespace polyrank {

/// l - v_p(c), and 0 for c = 0.
unsigned char_depth(std::uint64_t c, std::uint32_t p, unsigned l);

struct PadicCharacter {
  std::uint32_t p = 2;
  unsigned l = 1;
  Elem c = 0;
  unsigned depth() const { return char_depth(c, p, l); }
  /// c * x / p^l as a fraction of a turn, reduced to [0, 1).
  Rational turns(Elem x) const;
};

/// b(P; chi) = p^{-nl} sum_v chi(P(v)). P lives over Z/p^l.
BiasValue padic_bias(const MultiPoly& p, const PadicCharacter& chi, const EnumOptions& opts = {});

struct CharacterBias {
  Elem c = 0;
  unsigned depth = 0;
  double magnitude = 0;
  bool exact_zero = false;
  Rational threshold;            // q^{-s d}
  double normalized = 0;         // |b| q^{s d}
  bool below = false;            // |b| <= threshold (relative slack 1e-9)
};

struct PadicBiasReport {
  std::uint32_t p = 2;
  unsigned l = 1;
  long s = 0;
  std::vector<CharacterBias> characters;  // indexed by c
  std::vector<Rational> nu;               // nu(a) = q^{(1-n)l} |P^{-1}(a)|
  Rational deviation;                     // max_a |nu(a) - 1|
  bool hypothesis = false;                // every nontrivial chi below threshold
  bool implication_checked = false;
  bool implication_holds = true;          // deviation <= q^{-(s-2)} when checked
  double max_normalized = 0;              // over nontrivial chi
};

PadicBiasReport padic_uniformity(const MultiPoly& p, long s, const EnumOptions& opts = {});

struct MainpPoint {
  MultiPoly poly;
  double rank_lower = 0;   // analytic rank of reduce_mod_p(P~)
  bool degenerate = false; // P~ vanishes mod p
  bool low_characteristic = false;  // p <= deg P
  double max_normalized = 0;
};

struct MainpReport {
  long s = 0;
  std::vector<MainpPoint> points;
  /// Least observed rank bound r with every non-degenerate point of bound >= r
  /// below 1; nullopt when no such r was observed.
  std::optional<double> frontier;
};

MainpReport mainp_probe(const std::vector<MultiPoly>& batch, long s, const EnumOptions& opts = {});

struct CauchySchwarzStep {
  unsigned d = 0;          // blocks
  unsigned l = 0, m = 0;
  double lhs = 0;          // |E_x e(R~/p^l + S/p^m)|
  double rhs = 0;          // E_{x_2..x_d} |E_{x_1} ...|^2
  bool inequality_holds = false;  // lhs^2 <= rhs + 1e-9
  bool shift_invariant = false;   // R~(x_1 + h, ..) - R~(x_1, ..) free of x_1
};

/// R over Z/p^l of degree d >= 1; S over the same ring on either n or d*n
/// variables (n-variable S is read on the first block). Requires m <= l.
/// Throws InternalError if either asserted fact fails.
CauchySchwarzStep proposition_b_cs_step(const MultiPoly& r, const MultiPoly& s, unsigned m,
                                        const EnumOptions& opts = {});

struct SingularityLevel {
  unsigned m = 0;
  BigInt count;            // zeros mod p^m
  BigInt expected;         // p^{m(n-1)}
  BigInt deviation;        // |count - expected|
  bool passes = false;     // deviation <= p^{m(n-1) - 1/2}
};

struct SingularityReport {
  std::uint32_t p = 2;
  std::vector<SingularityLevel> levels;
  bool all_pass = true;
};

/// P with integer coefficients given over Z/p^{m_max}; counts zeros mod p^m
/// for m = 1..m_max. Requires p > deg P.
SingularityReport rational_singularity_check(const MultiPoly& p, const EnumOptions& opts = {});

}  // namespace polyrank
