#include "polyrank/phase_sum.hpp"

#include <cmath>
#include <numbers>

namespace polyrank {

PhaseSum::PhaseSum(std::uint32_t p, unsigned l) : p_(p), n_(1) {
  for (unsigned i = 0; i < l; ++i) n_ *= p;
  c_.assign(n_, BigInt(0));
}

// sum_{k<p} zeta^{j + kN/p} = 0 for every j < N/p; clearing the top member of
// each class leaves coordinates in the power basis of length phi(N).
std::vector<BigInt> PhaseSum::canonical() const {
  const std::uint32_t stride = n_ / p_;
  const std::uint32_t phi = n_ - stride;
  std::vector<BigInt> out(c_.begin(), c_.begin() + phi);
  for (std::uint32_t j = 0; j < stride; ++j) {
    const BigInt& top = c_[j + phi];
    if (top == 0) continue;
    for (std::uint32_t k = 0; k + 1 < p_; ++k) out[j + k * stride] -= top;
  }
  return out;
}

bool PhaseSum::is_zero() const {
  for (const auto& v : canonical()) {
    if (v != 0) return false;
  }
  return true;
}

bool PhaseSum::is_integer(BigInt* value) const {
  const auto can = canonical();
  for (std::size_t i = 1; i < can.size(); ++i) {
    if (can[i] != 0) return false;
  }
  if (value) *value = can.empty() ? BigInt(0) : can[0];
  return true;
}

std::complex<double> PhaseSum::value() const {
  long double re = 0, im = 0;
  const long double step = 2.0L * std::numbers::pi_v<long double> / n_;
  for (std::uint32_t j = 0; j < n_; ++j) {
    if (c_[j] == 0) continue;
    const long double c = c_[j].convert_to<long double>();
    re += c * std::cos(step * j);
    im += c * std::sin(step * j);
  }
  // exact cancellations should print as zero
  BigInt exact;
  if (is_integer(&exact)) return {exact.convert_to<double>(), 0.0};
  return {static_cast<double>(re), static_cast<double>(im)};
}

}  // namespace polyrank
