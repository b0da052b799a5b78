#include <doctest.h>

#include <cmath>
#include <numbers>

#include "polyrank/harmonic.hpp"
#include "polyrank/linalg.hpp"
#include "support.hpp"

using namespace polyrank;
using namespace testing_support;

namespace {

// sum_v e(phase(P(v))/N) / |V| by direct evaluation at every point.
std::complex<double> brute_bias(const MultiPoly& p) {
  const Ring& r = p.ring();
  std::complex<double> acc = 0;
  const auto pts = all_points(r, p.num_vars());
  for (const auto& v : pts) {
    const double ang = 2 * std::numbers::pi * r.phase(p.evaluate(v)) / r.phase_modulus();
    acc += std::polar(1.0, ang);
  }
  return acc / static_cast<double>(pts.size());
}

MultiPoly random_affine_change(const MultiPoly& p) {
  const Ring& r = p.ring();
  const std::size_t n = p.num_vars();
  for (;;) {
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a.at(i, j) = random_elem(r);
    if (matrix_rank(r, a) != n) continue;
    std::vector<MultiPoly> images;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Elem> row(a.row(i).begin(), a.row(i).end());
      images.push_back(MultiPoly::affine(r, row, random_elem(r)));
    }
    return p.substitute(images);
  }
}

std::vector<BigInt> big(std::initializer_list<int> v) {
  std::vector<BigInt> out;
  for (int x : v) out.emplace_back(x);
  return out;
}

}  // namespace

TEST_CASE("value histograms") {
  const Ring f2 = Ring::prime_field(2), f3 = Ring::prime_field(3);
  CHECK(value_histogram(parse_poly("x1", f3, 2)).counts == big({3, 3, 3}));
  CHECK(value_histogram(parse_poly("x1*x2", f2, 2)).counts == big({3, 1}));
  const auto pair = value_histogram(PolyCollection({parse_poly("x1", f2, 2), parse_poly("x2", f2, 2)}));
  CHECK(pair.counts == big({1, 1, 1, 1}));
  CHECK(pair.count(Point{1, 0}) == 1);
}

TEST_CASE("histograms sum to the domain size and ignore the shard count") {
  for (const Ring& r : {Ring::prime_field(2), Ring::prime_field(5), Ring::extension_field(2, 2), Ring::prime_power(3, 2)}) {
    for (int it = 0; it < 20; ++it) {
      const std::size_t n = 1 + rng()() % 4;
      const PolyCollection c({random_poly(r, n, 3, 4), random_poly(r, n, 2, 3)});
      const auto h1 = value_histogram(c, {kDefaultBudget, 1});
      const auto h4 = value_histogram(c, {kDefaultBudget, 4});
      const auto h7 = value_histogram(c, {kDefaultBudget, 7});
      CHECK(h1.counts == h4.counts);
      CHECK(h1.counts == h7.counts);
      BigInt total = 0;
      for (const auto& v : h1.counts) total += v;
      CHECK(total == h1.domain_cardinality);
      // direct count
      std::vector<BigInt> direct(h1.counts.size(), 0);
      for (const auto& v : all_points(r, n)) {
        const Elem vals[] = {c[0].evaluate(v), c[1].evaluate(v)};
        direct[value_key(r, vals)] += 1;
      }
      CHECK(direct == h1.counts);
    }
  }
}

TEST_CASE("bias examples") {
  const Ring f2 = Ring::prime_field(2), f3 = Ring::prime_field(3);
  const BiasValue zero = bias(MultiPoly(f3, 2));
  CHECK(zero.magnitude == doctest::Approx(1.0));
  CHECK(zero.analytic_rank() == 0.0);

  const BiasValue b = bias(parse_poly("x1*x2", f2, 2));
  CHECK(b.value.real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(b.analytic_rank() == doctest::Approx(1.0));

  const BiasValue lin = bias(parse_poly("x1", f3, 2));
  CHECK(lin.exact_zero);
  CHECK(std::isinf(lin.analytic_rank()));

  CHECK(analytic_rank(parse_poly("x1*x3 + x2*x4", f3, 4)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(analytic_rank(MultiPoly::constant(f3, 3, 2)) == 0.0);
}

TEST_CASE("bias matches direct summation and is bounded by one") {
  for (const Ring& r : {Ring::prime_field(3), Ring::prime_field(7), Ring::extension_field(2, 3), Ring::extension_field(3, 2),
                        Ring::prime_power(2, 3), Ring::prime_power(3, 2)}) {
    for (int it = 0; it < 15; ++it) {
      const MultiPoly p = random_poly(r, 3, 3, 5);
      const BiasValue b = bias(p);
      CHECK(std::abs(b.value - brute_bias(p)) < 1e-9);
      CHECK(b.magnitude <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("bias magnitude is invariant under affine changes of variables") {
  for (const Ring& r : {Ring::prime_field(2), Ring::prime_field(5), Ring::extension_field(2, 2)}) {
    for (int it = 0; it < 20; ++it) {
      const MultiPoly p = random_poly(r, 3, 3, 5);
      CHECK(bias(random_affine_change(p)).magnitude == doctest::Approx(bias(p).magnitude).epsilon(1e-12));
    }
  }
}

TEST_CASE("analytic rank of multilinear forms does not depend on the character") {
  for (const Ring& r : {Ring::prime_field(3), Ring::prime_field(5), Ring::extension_field(2, 2)}) {
    for (int it = 0; it < 10; ++it) {
      MultiPoly p = random_poly(r, 2, 2, 3);
      if (p.degree() < 1) p += MultiPoly::variable(r, 2, 1);
      const MultilinearForm f = multilinear_form(p);
      const auto h = value_histogram(f.poly());
      const double ref = bias(h, Point{1}).magnitude;
      for (Elem a = 1; a < r.size(); ++a) CHECK(bias(h, Point{a}).magnitude == doctest::Approx(ref).epsilon(1e-12));
    }
  }
}

TEST_CASE("multilinear bias agrees with the histogram route") {
  for (const Ring& r : {Ring::prime_field(2), Ring::prime_field(3), Ring::extension_field(2, 2)}) {
    for (int it = 0; it < 15; ++it) {
      MultiPoly p = random_poly(r, 2, 3, 4);
      if (p.degree() < 1) p += MultiPoly::variable(r, 2, 0);
      const MultilinearForm f = multilinear_form(p);
      if (big_pow_u(r.size(), static_cast<unsigned>(f.poly().num_vars())) > 300000) continue;
      const MultilinearBias mb = multilinear_bias(f);
      const BiasValue hb = bias(f.poly());
      CHECK(to_double(mb.value) == doctest::Approx(hb.value.real()).epsilon(1e-12));
      CHECK(std::abs(hb.value.imag()) < 1e-12);
    }
  }
  const Ring f2 = Ring::prime_field(2);
  CHECK(multilinear_bias(multilinear_form(parse_poly("x1*x2", f2, 2))).value == Rational(1, 4));
}

TEST_CASE("nu tables") {
  const Ring f2 = Ring::prime_field(2), f3 = Ring::prime_field(3), f4 = Ring::extension_field(2, 2);
  const auto lin = nu_table(PolyCollection({parse_poly("x1", f4, 2)}));
  for (const auto& v : lin.nu) CHECK(v == 1);
  CHECK(lin.max_deviation == 0);
  CHECK_FALSE(lin.best_s.has_value());

  const auto xy = nu_table(PolyCollection({parse_poly("x1*x2", f2, 2)}));
  CHECK(xy.nu[0] == Rational(3, 2));
  CHECK(xy.nu[1] == Rational(1, 2));
  CHECK(xy.max_deviation == Rational(1, 2));
  CHECK(xy.best_s == 1);  // 1/2 <= 2^-1

  const auto h = nu_table(PolyCollection({parse_poly("x1*x3 + x2*x4", f3, 4)}));
  CHECK(h.histogram.counts[0] == 33);
  CHECK(h.nu[0] == Rational(11, 9));
  CHECK(h.max_deviation == Rational(2, 9));
  CHECK(h.best_s == 1);
}

TEST_CASE("fourier_check examples") {
  const Ring f2 = Ring::prime_field(2), f5 = Ring::prime_field(5);
  const auto lin = fourier_check(PolyCollection({parse_poly("x1 + x2", f5, 3), parse_poly("x3", f5, 3)}));
  for (std::size_t i = 1; i < lin.entries.size(); ++i) CHECK(std::abs(lin.entries[i].from_poly) < 1e-12);

  const auto xy = fourier_check(PolyCollection({parse_poly("x1*x2", f2, 2)}));
  CHECK(xy.entries[1].from_nu.real() == doctest::Approx(0.5));
  CHECK(xy.reconstruction_exact);

  const auto two = fourier_check(PolyCollection({parse_poly("x1*x2", f2, 4), parse_poly("x3*x4", f2, 4)}));
  CHECK(two.deviation_bound_holds);
  CHECK(two.equidistribution_holds);
  CHECK(two.transforms_agree);
}

TEST_CASE("fourier_check on random collections over rings") {
  for (const Ring& r : {Ring::prime_field(3), Ring::extension_field(2, 2), Ring::prime_power(3, 2), Ring::prime_power(2, 2)}) {
    for (int it = 0; it < 10; ++it) {
      const PolyCollection c({random_poly(r, 3, 3, 4), random_poly(r, 3, 2, 4)});
      const auto rep = fourier_check(c);
      CHECK(rep.transforms_agree);
      CHECK(rep.reconstruction_exact);
      CHECK(rep.deviation_bound_holds);
      CHECK(rep.equidistribution_holds);
    }
  }
  CHECK_THROWS_AS(fourier_check(PolyCollection({parse_poly("x1", Ring::prime_field(101), 1),
                                                parse_poly("x1", Ring::prime_field(101), 1)})),
                  PreconditionError);
}

TEST_CASE("Gowers norm examples") {
  const Ring f2 = Ring::prime_field(2), f5 = Ring::prime_field(5);
  for (unsigned m = 1; m <= 3; ++m) CHECK(gowers_norm(MultiPoly::constant(f5, 2, 3), m).norm == doctest::Approx(1.0));
  CHECK(gowers_norm(parse_poly("x1^2 + 3*x2", f5, 2), 3).norm == doctest::Approx(1.0));
  CHECK(gowers_norm(parse_poly("x1*x2", f2, 2), 2).norm == doctest::Approx(std::pow(2.0, -0.5)).epsilon(1e-12));
}

TEST_CASE("Gowers bridge and monotonicity") {
  for (const Ring& r : {Ring::prime_field(2), Ring::prime_field(3), Ring::prime_field(5)}) {
    for (int it = 0; it < 6; ++it) {
      MultiPoly p = random_poly(r, 2, 3, 4);
      if (p.degree() < 2) p += parse_poly("x1*x2", r, 2);
      const unsigned d = static_cast<unsigned>(p.degree());
      if (big_pow_u(r.size(), (d + 1) * 2) > 2000000) continue;
      const auto g = gowers_norm(p, d);
      const auto mb = multilinear_bias(multilinear_form(p));
      CHECK(g.average == doctest::Approx(to_double(mb.value)).epsilon(1e-9));
      if (d >= 2) CHECK(gowers_norm(p, d - 1).norm <= g.norm + 1e-12);
    }
  }
}
