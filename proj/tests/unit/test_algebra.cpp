#include <doctest.h>

#include <set>

#include "polyrank/algebra.hpp"
#include "support.hpp"

using namespace polyrank;
using testing_support::random_elem;

namespace {

std::vector<Ring> sample_rings() {
  return {Ring::prime_field(2),       Ring::prime_field(3),       Ring::prime_field(7),
          Ring::extension_field(2, 2), Ring::extension_field(2, 5), Ring::extension_field(3, 2),
          Ring::extension_field(5, 3), Ring::extension_field(3, 7), Ring::prime_power(3, 2),
          Ring::prime_power(2, 3),    Ring::prime_power(5, 2)};
}

// Multiplication in GF(p)[t]/(m) done by schoolbook, independent of the log tables.
Elem slow_mul(const Ring& r, Elem a, Elem b) {
  const auto ca = r.coefficients(a), cb = r.coefficients(b);
  const unsigned k = r.exponent();
  const std::uint32_t p = r.characteristic_prime();
  std::vector<std::uint64_t> prod(2 * k, 0);
  for (unsigned i = 0; i < k; ++i)
    for (unsigned j = 0; j < k; ++j) prod[i + j] += static_cast<std::uint64_t>(ca[i]) * cb[j];
  const auto& m = r.modulus();
  for (unsigned d = 2 * k - 1; d >= k; --d) {
    const std::uint64_t c = prod[d] % p;
    prod[d] = 0;
    for (unsigned i = 0; i < k; ++i) prod[d - k + i] += c * (p - m[i]);
  }
  std::vector<Elem> out(k);
  for (unsigned i = 0; i < k; ++i) out[i] = static_cast<Elem>(prod[i] % p);
  return r.from_coefficients(out);
}

}  // namespace

TEST_CASE("ring descriptors") {
  const Ring f2 = ring_from_text("GF(2)");
  CHECK(f2.kind() == RingKind::PrimeField);
  CHECK(f2.size() == 2);

  const Ring f4 = ring_from_text("GF(4)");
  CHECK(f4.kind() == RingKind::ExtensionField);
  CHECK(f4.modulus() == std::vector<Elem>{1, 1});  // t^2 + t + 1
  CHECK(ring_from_text("GF(2^2)") == f4);

  const Ring z9 = ring_from_text("Z/9");
  CHECK(z9.kind() == RingKind::PrimePower);
  CHECK(z9.characteristic_prime() == 3);
  CHECK(z9.exponent() == 2);
  CHECK(ring_from_text("Z/3^2") == z9);

  CHECK(ring_from_text(" GF( 9 ) ").size() == 9);
  CHECK(ring_from_text("GF(8; 1,0,1)").modulus() == std::vector<Elem>{1, 0, 1});
  CHECK(ring_from_text("GF(4, t^2+t+1)") == f4);
}

TEST_CASE("ring descriptor errors") {
  CHECK_THROWS_AS(ring_from_text("GF(6)"), InputError);
  CHECK_THROWS_AS(ring_from_text("GF(4^2)"), InputError);
  CHECK_THROWS_AS(ring_from_text("GF(2^21)"), InputError);
  CHECK_THROWS_AS(ring_from_text("Z/3^7"), InputError);
  CHECK_THROWS_AS(ring_from_text("Z/12"), InputError);
  CHECK_THROWS_AS(ring_from_text("GF(4; 1,0)"), InputError);  // t^2 + 1 = (t+1)^2
  CHECK_THROWS_AS(ring_from_text("Q"), InputError);
}

TEST_CASE("least irreducible moduli") {
  // exhaustive check over the monic quadratics of GF(2): only t^2+t+1 has no root
  CHECK(least_irreducible_modulus(2, 2) == std::vector<Elem>{1, 1});
  CHECK(least_irreducible_modulus(2, 3) == std::vector<Elem>{1, 1, 0});  // t^3 + t + 1
  CHECK(least_irreducible_modulus(3, 2) == std::vector<Elem>{1, 0});     // t^2 + 1
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (unsigned k = 2; k <= 4; ++k) {
      auto m = least_irreducible_modulus(p, k);
      std::vector<std::uint32_t> full(m.begin(), m.end());
      full.push_back(1);
      CHECK(fp_poly::is_irreducible(full, p));
    }
  }
}

TEST_CASE("ring axioms on random triples") {
  for (const Ring& r : sample_rings()) {
    CAPTURE(r.descriptor());
    for (int it = 0; it < 2000; ++it) {
      const Elem a = random_elem(r), b = random_elem(r), c = random_elem(r);
      CHECK(r.add(a, r.add(b, c)) == r.add(r.add(a, b), c));
      CHECK(r.mul(a, r.mul(b, c)) == r.mul(r.mul(a, b), c));
      CHECK(r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c)));
      CHECK(r.add(a, r.neg(a)) == 0);
      CHECK(r.mul(a, b) == r.mul(b, a));
      if (r.is_unit(a)) CHECK(r.mul(a, r.inv(a)) == 1);
      if (r.kind() == RingKind::ExtensionField) CHECK(r.mul(a, b) == slow_mul(r, a, b));
    }
  }
}

TEST_CASE("reduction Z/p^l -> GF(p) is a homomorphism") {
  for (const Ring& r : {Ring::prime_power(3, 3), Ring::prime_power(2, 4), Ring::prime_power(7, 2)}) {
    const Ring f = Ring::prime_field(r.characteristic_prime());
    for (int it = 0; it < 1000; ++it) {
      const Elem a = random_elem(r), b = random_elem(r);
      CHECK(reduce_to_residue_field(r, r.add(a, b)) ==
            f.add(reduce_to_residue_field(r, a), reduce_to_residue_field(r, b)));
      CHECK(reduce_to_residue_field(r, r.mul(a, b)) ==
            f.mul(reduce_to_residue_field(r, a), reduce_to_residue_field(r, b)));
    }
  }
}

TEST_CASE("trace examples in GF(4)") {
  const Ring f4 = Ring::extension_field(2, 2);
  const Elem omega = f4.from_coefficients(std::vector<Elem>{0, 1});
  CHECK(f4.mul(omega, omega) == f4.add(omega, 1));
  CHECK(f4.trace(0) == 0);
  CHECK(f4.trace(1) == 0);
  CHECK(f4.trace(omega) == 1);
}

TEST_CASE("trace is linear, surjective and equals the Frobenius sum") {
  for (const Ring& r : sample_rings()) {
    if (r.kind() != RingKind::ExtensionField || r.size() > 1024) continue;
    CAPTURE(r.descriptor());
    std::set<Elem> image;
    const std::uint32_t p = r.characteristic_prime();
    for (Elem a = 0; a < r.size(); ++a) {
      Elem frob = a, sum = 0;
      for (unsigned i = 0; i < r.exponent(); ++i) {
        sum = r.add(sum, frob);
        frob = r.pow(frob, p);
      }
      CHECK(sum == r.trace(a));  // the sum lies in the prime field, packed as itself
      image.insert(r.trace(a));
      const Elem b = random_elem(r);
      CHECK(r.trace(r.add(a, b)) == (r.trace(a) + r.trace(b)) % p);
      const Elem s = static_cast<Elem>(testing_support::rng()() % p);
      CHECK(r.trace(r.mul(s, a)) == (s * r.trace(a)) % p);
    }
    CHECK(image.size() == p);
  }
}

TEST_CASE("large extension field uses Zech logarithms consistently") {
  const Ring r = Ring::extension_field(3, 7);  // 2187 elements
  for (int it = 0; it < 5000; ++it) {
    const Elem a = random_elem(r), b = random_elem(r);
    const auto ca = r.coefficients(a), cb = r.coefficients(b);
    std::vector<Elem> sum(7);
    for (int i = 0; i < 7; ++i) sum[i] = (ca[i] + cb[i]) % 3;
    CHECK(r.add(a, b) == r.from_coefficients(sum));
  }
}

TEST_CASE("domain enumeration") {
  const Domain d2(Ring::prime_field(2), 2);
  const auto pts = enumerate_domain(d2, Shard{0, 1}, 100);
  REQUIRE(pts.size() == 4);
  CHECK(pts[0] == Point{0, 0});
  CHECK(pts[1] == Point{0, 1});
  CHECK(pts[2] == Point{1, 0});
  CHECK(pts[3] == Point{1, 1});

  const Domain d3(Ring::prime_field(3), 1);
  for (std::uint64_t s = 0; s < 3; ++s) {
    const auto part = enumerate_domain(d3, Shard{s, 3}, 100);
    REQUIRE(part.size() == 1);
    CHECK(part[0] == Point{static_cast<Elem>(s)});
  }

  const auto z9 = enumerate_domain(Domain(Ring::prime_power(3, 2), 1), Shard{0, 1}, 100);
  REQUIRE(z9.size() == 9);
  for (Elem i = 0; i < 9; ++i) CHECK(z9[i] == Point{i});
}

TEST_CASE("shards partition the domain in order") {
  const Domain d(Ring::extension_field(2, 2), 3);
  const auto whole = enumerate_domain(d, Shard{0, 1}, 1000);
  for (std::uint64_t total : {1u, 2u, 5u, 7u, 64u, 100u}) {
    std::vector<Point> cat;
    for (std::uint64_t s = 0; s < total; ++s) {
      auto part = enumerate_domain(d, Shard{s, total}, 1000);
      cat.insert(cat.end(), part.begin(), part.end());
    }
    CHECK(cat == whole);
  }
  CHECK(std::set<Point>(whole.begin(), whole.end()).size() == 64);
}

TEST_CASE("budget guard") {
  const Domain d(Ring::prime_field(5), 12);
  try {
    enumerate_domain(d, Shard{0, 1}, 1000);
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& e) {
    CHECK(e.cardinality() == big_pow_u(5, 12));
    CHECK(e.budget() == 1000);
  }
  CHECK_THROWS_AS(Domain::shard_range(10, Shard{3, 3}), PreconditionError);
}
