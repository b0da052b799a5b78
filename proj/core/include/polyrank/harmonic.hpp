#pragma once

// Exact value histograms and the analytic quantities derived from them:
// bias, analytic rank, normalized fiber sizes nu, Fourier inversion, Gowers
// norms. The additive character is psi(t) = e(phase(t)/N) with phase the
// absolute trace (fields, N = p) or the residue itself (Z/p^l, N = p^l).

#include <complex>
#include <optional>
#include <vector>

#include "polyrank/enumeration.hpp"
#include "polyrank/phase_sum.hpp"
#include "polyrank/rational.hpp"

namespace polyrank {

struct ValueHistogram {
  Ring ring;
  std::size_t c = 1;                // codomain R^c
  std::size_t n = 0;                // domain R^n
  std::vector<BigInt> counts;       // indexed by value_key
  BigInt domain_cardinality;

  const BigInt& count(std::span<const Elem> t) const { return counts.at(value_key(ring, t)); }
};

ValueHistogram value_histogram(const PolyCollection& coll, const EnumOptions& opts = {});
ValueHistogram value_histogram(const MultiPoly& p, const EnumOptions& opts = {});

struct BiasValue {
  PhaseSum sum;                     // sum_v psi(<a, P(v)>), exactly
  BigInt domain_cardinality;
  std::uint32_t q = 0;              // log base of the analytic rank
  std::complex<double> value;       // sum / |V|
  double magnitude = 0;
  bool exact_zero = false;
  /// -log_q |value|; +inf on an exact zero.
  double analytic_rank() const;
};

/// q^{-dim V} sum_t N_t psi(<a, t>).
BiasValue bias(const ValueHistogram& h, std::span<const Elem> a);
/// Bias of a single polynomial with the character scaled by `a` (default 1).
BiasValue bias(const MultiPoly& p, const EnumOptions& opts = {}, Elem a = 1);
double analytic_rank(const MultiPoly& p, const EnumOptions& opts = {});

/// Bias of a block-multilinear form over a field, exactly: averaging out the
/// last two blocks leaves E_{h_1..h_{d-2}} q^{-rank M(h)} with M the bilinear
/// matrix of the last two blocks.
struct MultilinearBias {
  Rational value;
  std::vector<BigInt> rank_counts;  // over the first d-2 blocks
  std::uint32_t q = 0;
  double analytic_rank() const;
};
MultilinearBias multilinear_bias(const MultilinearForm& form, const EnumOptions& opts = {});

struct UniformityReport {
  ValueHistogram histogram;
  std::vector<Rational> nu;         // nu(t) = N_t q^{c - dim V}, by value_key
  Rational max_deviation;           // max_t |nu(t) - 1|
  /// Largest integer s with deviation <= q^{-s}; nullopt when the deviation is 0.
  std::optional<long> best_s;
};

UniformityReport nu_table(const PolyCollection& coll, const EnumOptions& opts = {});
UniformityReport nu_report(ValueHistogram h);

struct FourierEntry {
  Point a;
  std::complex<double> from_nu;     // q^{-c} sum_t nu(t) psi(<a,t>)
  std::complex<double> from_poly;   // q^{-dim V} sum_v psi(P_a(v))
  bool exact_match = false;
};

struct FourierReport {
  std::vector<FourierEntry> entries;
  double max_transform_gap = 0;
  bool transforms_agree = false;
  bool reconstruction_exact = false;
  Rational deviation;
  double deviation_bound = 0;       // sum_{a != 0} |nu_hat(a)|
  bool deviation_bound_holds = false;
  double max_nontrivial_bias = 0;
  /// deviation <= q^c * max_{a != 0} |bias(P_a)|, the implication at the sharpest s.
  bool equidistribution_holds = false;
};

/// Requires c <= 4 and q^c <= 10^4. Throws InternalError when one of the
/// exact identities fails.
FourierReport fourier_check(const PolyCollection& coll, const EnumOptions& opts = {});

struct GowersValue {
  PhaseSum sum;                     // over x, h_1..h_m
  BigInt points;
  double average = 0;               // ||e(P)||_{U_m}^{2^m}
  double norm = 0;
};

GowersValue gowers_norm(const MultiPoly& p, unsigned m, const EnumOptions& opts = {});

}  // namespace polyrank
