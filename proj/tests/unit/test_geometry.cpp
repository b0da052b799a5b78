#include <doctest.h>

#include "polyrank/geometry.hpp"
#include "polyrank/harmonic.hpp"
#include "polyrank/rank.hpp"
#include "support.hpp"

using namespace polyrank;
using namespace testing_support;

namespace {

std::uint64_t brute_count(const PolyCollection& c, const Point& t) {
  std::uint64_t n = 0;
  for (const auto& v : all_points(c.ring(), c.num_vars())) {
    bool hit = true;
    for (std::size_t i = 0; i < c.size() && hit; ++i) hit = c[i].evaluate(v) == t[i];
    n += hit;
  }
  return n;
}

PolyCollection one(const char* text, const Ring& r, std::size_t n) { return PolyCollection({parse_poly(text, r, n)}); }

}  // namespace

TEST_CASE("fiber points") {
  const Ring f2 = Ring::prime_field(2), f3 = Ring::prime_field(3);
  auto a = fiber_points(one("x1*x2", f2, 2), Point{1});
  CHECK(a.count == 1);
  REQUIRE(a.sample.size() == 1);
  CHECK(a.sample[0] == Point{1, 1});
  CHECK(fiber_points(one("x1", f3, 2), Point{0}).count == 3);
  CHECK(fiber_points(one("x1^2 + 1", f3, 1), Point{0}).count == 0);
  // sample is the first points in order
  auto b = fiber_points(one("x1", f3, 2), Point{0}, {}, 2);
  CHECK(b.sample == std::vector<Point>{{0, 0}, {0, 1}});
  CHECK_THROWS_AS(fiber_points(one("x1", f3, 2), Point{0, 1}), PreconditionError);
  CHECK_THROWS_AS(fiber_points(one("x1", f3, 20), Point{0}, EnumOptions{1000, 1}), BudgetExceeded);
}

TEST_CASE("fiber counts partition the domain and match brute force") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const Ring r = Ring::prime_field(p);
    for (int s = 0; s < 6; ++s) {
      const PolyCollection c({random_poly(r, 3, 3, 5), random_poly(r, 3, 2, 4)});
      std::uint64_t total = 0;
      for (const auto& t : all_points(r, 2)) {
        const auto f = fiber_points(c, t, EnumOptions{kDefaultBudget, 3});
        CHECK(f.count == brute_count(c, t));
        total += f.count;
      }
      CHECK(total == static_cast<std::uint64_t>(p * p * p));
    }
  }
}

TEST_CASE("tau sequences") {
  SUBCASE("pair of lines") {
    for (std::uint32_t p : {2u, 3u}) {
      const Ring r = Ring::prime_field(p);
      const auto seq = tau_sequence(one("x1*x2", r, 2), Point{0}, 3);
      for (unsigned l = 1; l <= 3; ++l) {
        const BigInt ql = big_pow_u(p, l);
        CHECK(seq.ratios[l - 1] == Rational(2 * ql - 1, ql));
      }
    }
  }
  SUBCASE("one line") {
    const auto seq = tau_sequence(one("x1", Ring::prime_field(2), 2), Point{0}, 4);
    for (const auto& t : seq.ratios) CHECK(t == 1);
  }
  SUBCASE("rank-two quadric over GF(3)") {
    const Ring f3 = Ring::prime_field(3);
    const auto seq = tau_sequence(one("x1*x3 + x2*x4", f3, 4), Point{1}, 3);
    for (unsigned l = 1; l <= 3; ++l) {
      const BigInt ql = big_pow_u(3, l);
      // Q^3 - Q points
      CHECK(seq.counts[l - 1] == ql * ql * ql - ql);
      CHECK(abs(seq.ratios[l - 1] - 1) <= Rational(2, ql));
    }
  }
  SUBCASE("extension counts match direct evaluation") {
    const Ring f3 = Ring::prime_field(3);
    const MultiPoly p = parse_poly("x1^2 + x2^3 - x1*x2 + 2", f3, 2);
    const auto seq = tau_sequence(PolyCollection({p}), Point{0}, 2);
    const Ring f9 = Ring::extension_field(3, 2);
    const MultiPoly p9 = embed_coefficients(p, f9);
    std::uint64_t n = 0;
    for (const auto& v : all_points(f9, 2)) n += p9.evaluate(v) == 0;
    CHECK(seq.counts[1] == n);
  }
  CHECK_THROWS_AS(tau_sequence(one("x1", Ring::extension_field(2, 2), 1), Point{0}, 2), PreconditionError);
  CHECK_THROWS_AS(tau_sequence(one("x1", Ring::prime_field(3), 6), Point{0}, 4, EnumOptions{100000, 1}),
                  BudgetExceeded);
}

TEST_CASE("tau_1 equals nu") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const Ring r = Ring::prime_field(p);
    const PolyCollection c({random_poly(r, 3, 2, 5)});
    const auto nu = nu_table(c);
    for (Elem t = 0; t < p; ++t) CHECK(tau_sequence(c, Point{t}, 1).ratios[0] == nu.nu[t]);
  }
}

TEST_CASE("high nc-rank quadrics are nearly uniform") {
  for (std::uint32_t p : {3u, 5u}) {
    const Ring r = Ring::prime_field(p);
    const MultiPoly q = parse_poly("x1*x4 + x2*x5 + x3*x6", r, 6);
    REQUIRE(nc_rank_bounds(q).lower_int() >= 3);
    for (Elem t = 0; t < p; ++t) {
      const auto seq = tau_sequence(PolyCollection({q}), Point{t}, 1);
      CHECK(abs(seq.ratios[0] - 1) <= Rational(1, p));
    }
  }
}

TEST_CASE("jacobian smoothness") {
  const Ring f3 = Ring::prime_field(3);
  auto a = jacobian_smoothness(one("x1", f3, 2), Point{2}, 100);
  CHECK(a.inspected == 3);
  CHECK(a.deficient == 0);
  auto b = jacobian_smoothness(one("x1*x2", f3, 2), Point{0}, 100);
  CHECK(b.inspected == 5);
  CHECK(b.deficient == 1);
  CHECK(b.singular_points == std::vector<Point>{{0, 0}});
  auto c = jacobian_smoothness(one("x1*x3 + x2*x4", f3, 4), Point{0}, 1000);
  CHECK(c.inspected == 33);
  CHECK(c.deficient == 1);
  CHECK(c.inspected == c.full_rank + c.deficient);
  auto d = jacobian_smoothness(one("x1*x3 + x2*x4", f3, 4), Point{0}, 10);
  CHECK(d.inspected == 10);
  CHECK(d.fiber_size == 33);
  CHECK_THROWS_AS(jacobian_smoothness(one("x1^3", f3, 1), Point{0}, 10), UnsupportedCharacteristic);
}

TEST_CASE("rough bound") {
  const Ring f2 = Ring::prime_field(2), f3 = Ring::prime_field(3);
  auto a = bezout_rough_bound_check(one("x1*x2", f2, 2));
  CHECK(a.bound == 4);
  CHECK(a.max_count == 3);
  CHECK(a.holds);
  auto b = bezout_rough_bound_check(one("x1", f3, 3));
  CHECK(b.bound == 9);
  CHECK(b.max_count == 9);
  CHECK(b.holds);
  const PolyCollection c({parse_poly("x1^2 + x2^2 + 1", f3, 3), parse_poly("x3", f3, 3)});
  auto r = bezout_rough_bound_check(c);
  CHECK(r.bound == 6);
  CHECK(r.holds);
  CHECK(r.entries.size() == 9);
  CHECK(r.max_tau1 <= 2);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const Ring ring = Ring::prime_field(p);
    for (int s = 0; s < 5; ++s) {
      const MultiPoly q = random_poly(ring, 3, 3, 6);
      if (q.degree() < 1) continue;
      CHECK(bezout_rough_bound_check(PolyCollection({q})).holds);
    }
  }
}
