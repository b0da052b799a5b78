#pragma once

// Exact sums S = sum_j c_j zeta^j in Z[zeta_N], N = p^l, zeta = e^{2 pi i/N}.
// Character sums are accumulated as integer counts per phase and only turned
// into complex numbers at the very end, so zero tests are exact and results
// do not depend on summation order.

#include <complex>
#include <cstdint>
#include <vector>

#include "polyrank/errors.hpp"

namespace polyrank {

class PhaseSum {
 public:
  PhaseSum(std::uint32_t p, unsigned l);

  std::uint32_t prime() const noexcept { return p_; }
  std::uint32_t modulus() const noexcept { return n_; }
  const std::vector<BigInt>& counts() const noexcept { return c_; }

  void add(std::uint32_t phase, const BigInt& count) { c_[phase % n_] += count; }

  /// Coordinates in the basis zeta^0..zeta^{phi(N)-1}.
  std::vector<BigInt> canonical() const;
  bool is_zero() const;
  /// True when S is a rational integer; `value` receives it.
  bool is_integer(BigInt* value = nullptr) const;

  std::complex<double> value() const;

 private:
  std::uint32_t p_;
  std::uint32_t n_;
  std::vector<BigInt> c_;
};

}  // namespace polyrank
