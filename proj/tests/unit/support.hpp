#pragma once

// Small helpers shared by the unit suites: a seeded RNG and brute-force
// oracles that deliberately avoid the library's kernels.

#include <random>

#include "polyrank/poly.hpp"

namespace testing_support {

using namespace polyrank;

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(0x5eed1234u);
  return g;
}

inline Elem random_elem(const Ring& r) { return static_cast<Elem>(rng()() % r.size()); }

inline Point random_point(const Ring& r, std::size_t n) {
  Point p(n);
  for (auto& v : p) v = random_elem(r);
  return p;
}

/// Random polynomial with `terms` monomials of total degree <= d.
inline MultiPoly random_poly(const Ring& r, std::size_t n, unsigned d, unsigned terms) {
  MultiPoly p(r, n);
  for (unsigned t = 0; t < terms; ++t) {
    Exponents e(n, 0);
    const unsigned deg = static_cast<unsigned>(rng()() % (d + 1));
    for (unsigned k = 0; k < deg && n > 0; ++k) ++e[rng()() % n];
    p.add_term(e, random_elem(r));
  }
  return p;
}

/// Direct evaluation without the library's term loop.
inline std::vector<Point> all_points(const Ring& r, std::size_t n) {
  std::vector<Point> out;
  Point p(n, 0);
  for (;;) {
    out.push_back(p);
    std::size_t i = n;
    while (i-- > 0) {
      if (++p[i] < r.size()) break;
      p[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

}  // namespace testing_support
