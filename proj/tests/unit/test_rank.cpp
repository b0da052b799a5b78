#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>

#include "polyrank/harmonic.hpp"
#include "polyrank/linalg.hpp"
#include "polyrank/rank.hpp"
#include "support.hpp"

using namespace polyrank;
using namespace testing_support;

namespace {

// Exact Schmidt rank on tiny spaces by breadth-first search over sums of
// products, with polynomials as dense coefficient vectors over GF(p).
class RankOracle {
 public:
  RankOracle(std::uint32_t p, std::size_t n, int d) : p_(p), n_(n) {
    enumerate(2 * d - 2 > d ? 2 * d - 2 : d);
    build_chunk_table();
    std::uint64_t nf = 1;
    std::size_t fm = 0;
    for (const auto& m : monos_) fm += degree(m) <= d - 1;
    for (std::size_t i = 0; i < fm; ++i) nf *= p;
    // monos_ is sorted by degree, so factors use the first fm monomials
    std::vector<std::uint64_t> prods;
    for (std::uint64_t a = 0; a < nf; ++a)
      for (std::uint64_t b = a; b < nf; ++b) prods.push_back(product(a, b, fm));
    std::sort(prods.begin(), prods.end());
    prods.erase(std::unique(prods.begin(), prods.end()), prods.end());
    std::uint64_t states = 1;
    for (std::size_t i = 0; i < monos_.size(); ++i) states *= p;
    dist_.assign(states, -1);
    dist_[0] = 0;
    std::vector<std::uint64_t> frontier{0};
    for (int level = 1; !frontier.empty(); ++level) {
      std::vector<std::uint64_t> next;
      for (auto s : frontier)
        for (auto t : prods) {
          const auto u = add(s, t);
          if (dist_[u] < 0) {
            dist_[u] = level;
            next.push_back(u);
          }
        }
      frontier = std::move(next);
    }
  }

  int rank(const MultiPoly& poly) const {
    std::vector<std::uint32_t> c(monos_.size(), 0);
    for (const auto& [e, v] : poly.terms()) c[index_.at(e)] = v;
    return dist_[encode(c)];
  }

 private:
  static int degree(const Exponents& e) {
    int s = 0;
    for (auto x : e) s += x;
    return s;
  }
  void enumerate(int maxdeg) {
    for (int deg = 0; deg <= maxdeg; ++deg) {
      Exponents e(n_, 0);
      std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i + 1 == n_) {
          e[i] = static_cast<std::uint16_t>(left);
          monos_.push_back(e);
          return;
        }
        for (int k = 0; k <= left; ++k) {
          e[i] = static_cast<std::uint16_t>(k);
          rec(i + 1, left - k);
        }
      };
      rec(0, deg);
    }
    for (std::size_t i = 0; i < monos_.size(); ++i) index_[monos_[i]] = i;
  }
  std::vector<std::uint32_t> decode(std::uint64_t x, std::size_t len) const {
    std::vector<std::uint32_t> c(len);
    for (auto& v : c) {
      v = static_cast<std::uint32_t>(x % p_);
      x /= p_;
    }
    return c;
  }
  std::uint64_t encode(const std::vector<std::uint32_t>& c) const {
    std::uint64_t x = 0;
    for (std::size_t i = c.size(); i-- > 0;) x = x * p_ + c[i];
    return x;
  }
  std::uint64_t product(std::uint64_t a, std::uint64_t b, std::size_t fm) const {
    const auto ca = decode(a, fm), cb = decode(b, fm);
    std::vector<std::uint32_t> out(monos_.size(), 0);
    Exponents e(n_);
    for (std::size_t i = 0; i < fm; ++i) {
      if (ca[i] == 0) continue;
      for (std::size_t j = 0; j < fm; ++j) {
        if (cb[j] == 0) continue;
        for (std::size_t k = 0; k < n_; ++k) e[k] = static_cast<std::uint16_t>(monos_[i][k] + monos_[j][k]);
        auto& slot = out[index_.at(e)];
        slot = (slot + ca[i] * cb[j]) % p_;
      }
    }
    return encode(out);
  }
  // digitwise sum mod p, a chunk of digits at a time through a table
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    if (p_ == 2) return a ^ b;
    std::uint64_t out = 0, scale = 1;
    for (std::size_t i = 0; i < monos_.size(); i += chunk_digits_) {
      out += chunk_sum_[(a % chunk_) * chunk_ + b % chunk_] * scale;
      a /= chunk_;
      b /= chunk_;
      scale *= chunk_;
    }
    return out;
  }
  void build_chunk_table() {
    chunk_digits_ = 0;
    chunk_ = 1;
    while (chunk_ * p_ <= 256) {
      chunk_ *= p_;
      ++chunk_digits_;
    }
    chunk_sum_.resize(chunk_ * chunk_);
    for (std::uint64_t x = 0; x < chunk_; ++x)
      for (std::uint64_t y = 0; y < chunk_; ++y) {
        std::uint64_t s = 0, sc = 1, u = x, v = y;
        for (std::size_t k = 0; k < chunk_digits_; ++k) {
          s += ((u % p_ + v % p_) % p_) * sc;
          u /= p_;
          v /= p_;
          sc *= p_;
        }
        chunk_sum_[x * chunk_ + y] = s;
      }
  }

  std::uint32_t p_;
  std::size_t n_;
  std::vector<Exponents> monos_;
  std::map<Exponents, std::size_t> index_;
  std::vector<int> dist_;
  std::size_t chunk_digits_ = 1;
  std::uint64_t chunk_ = 1;
  std::vector<std::uint64_t> chunk_sum_;
};

MultiPoly random_of_degree(const Ring& r, std::size_t n, int d) {
  for (;;) {
    MultiPoly p = random_poly(r, n, static_cast<unsigned>(d), 2 + static_cast<unsigned>(rng()() % 5));
    if (p.degree() == d) return p;
  }
}

void check_sandwich(const RankOracle& oracle, const Ring& r, std::size_t n, int d, int samples) {
  for (int s = 0; s < samples; ++s) {
    const MultiPoly p = random_of_degree(r, n, d);
    const int truth = oracle.rank(p);
    CAPTURE(p.to_string());
    REQUIRE(truth > 0);
    const auto est = schmidt_rank_bounds(p, RankOptions{{}, 3});
    CHECK(est.lower <= truth + 1e-9);
    REQUIRE(est.upper);
    CHECK(static_cast<int>(*est.upper) >= truth);
    for (unsigned mr = 1; mr <= 3; ++mr) {
      const auto sr = decomposition_search(p, mr);
      if (sr.status == SearchStatus::Found) {
        CHECK(verify_decomposition(p, *sr.decomposition));
        CHECK(static_cast<int>(sr.decomposition->size()) <= static_cast<int>(mr));
      }
      if (sr.status == SearchStatus::ProvenImpossible) CHECK(truth > static_cast<int>(mr));
      CHECK(static_cast<int>(sr.proven_lower) <= truth);
    }
    if (d == 2 && r.characteristic_prime() != 2) CHECK(est.exact());
  }
}

}  // namespace

TEST_CASE("verify_decomposition") {
  const Ring f2 = Ring::prime_field(2), f5 = Ring::prime_field(5);
  const auto x1 = MultiPoly::variable(f2, 4, 0), x2 = MultiPoly::variable(f2, 4, 1);
  Decomposition d;
  d.pairs.emplace_back(x1, x2);
  CHECK(verify_decomposition(x1 * x2, d));
  CHECK_FALSE(verify_decomposition(parse_poly("x1*x2 + x3*x4", f2, 4), d));
  Decomposition e;
  e.pairs.emplace_back(parse_poly("x1", f5, 1), parse_poly("x1 + 1", f5, 1));
  CHECK(verify_decomposition(parse_poly("x1^2 + x1", f5, 1), e));
  // a factor of full degree is not allowed
  Decomposition f;
  f.pairs.emplace_back(parse_poly("x1^2", f5, 1), MultiPoly::constant(f5, 1, 1));
  CHECK_FALSE(verify_decomposition(parse_poly("x1^2", f5, 1), f));
}

TEST_CASE("quadratic rank examples") {
  const Ring f3 = Ring::prime_field(3), f5 = Ring::prime_field(5), f2 = Ring::prime_field(2);
  auto a = quadratic_rank(parse_poly("x1*x2", f3, 2));
  CHECK(a.exact());
  CHECK(*a.upper == 1);
  auto b = quadratic_rank(parse_poly("x1*x3 + x2*x4", f3, 4));
  CHECK(b.lower_int() == 2);
  CHECK(*b.upper == 2);
  auto c = quadratic_rank(parse_poly("x1^2", f5, 1));
  CHECK(c.exact());
  CHECK(*c.upper == 1);
  auto d = quadratic_rank(parse_poly("x1^2", f2, 1));
  CHECK(*d.upper == 1);
  auto e = quadratic_rank(parse_poly("x1*x2 + x3*x4", f2, 4));
  CHECK(e.lower_int() == 2);
  CHECK(*e.upper == 2);
  CHECK_THROWS_AS(quadratic_rank(parse_poly("x1^3", f5, 1)), PreconditionError);
  // sum of three squares over GF(3): isotropic, one plane plus one square
  auto f = quadratic_rank(parse_poly("x1^2 + x2^2 + x3^2", f3, 3));
  CHECK(f.exact());
  CHECK(*f.upper == 2);
  // x1^2 + x2^2 is anisotropic over GF(3) but x1^2 - x2^2 is not
  CHECK(*quadratic_rank(parse_poly("x1^2 + x2^2", f3, 2)).upper == 2);
  CHECK(*quadratic_rank(parse_poly("x1^2 - x2^2", f3, 2)).upper == 1);
  CHECK(*quadratic_rank(parse_poly("x1^2 + x2^2", f5, 2)).upper == 1);
  CHECK(*quadratic_rank(parse_poly("x1^2 + x2", f3, 2)).upper == 2);
  CHECK(*quadratic_rank(parse_poly("x1^2 - 1", f3, 1)).upper == 1);
}

TEST_CASE("quadratic rank within the non-degenerate range") {
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const Ring r = Ring::prime_field(p);
    for (std::size_t n = 1; n <= 6; ++n) {
      for (int s = 0; s < 10; ++s) {
        // q = sum c_i l_i^2 with the linear parts of l_i independent
        Matrix a(n, n);
        do {
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) a.at(i, j) = random_elem(r);
        } while (matrix_rank(r, a) != n);
        MultiPoly q(r, n);
        for (std::size_t i = 0; i < n; ++i) {
          std::vector<Elem> row(a.row(i).begin(), a.row(i).end());
          const MultiPoly l = MultiPoly::affine(r, row, random_elem(r));
          q += (l * l).scaled(static_cast<Elem>(1 + rng()() % (p - 1)));
        }
        if (q.degree() != 2) continue;
        const auto est = quadratic_rank(q);
        CAPTURE(q.to_string());
        CHECK(est.exact());
        CHECK(2 * *est.upper >= n);
        CHECK(2 * *est.upper <= 3 * n);
      }
    }
  }
}

TEST_CASE("decomposition search examples") {
  const Ring f2 = Ring::prime_field(2), f3 = Ring::prime_field(3);
  auto a = decomposition_search(parse_poly("x1*x2 + x3*x4", f2, 4), 2);
  CHECK(a.status == SearchStatus::Found);
  CHECK(a.decomposition->size() == 2);
  auto b = decomposition_search(parse_poly("x1^2 + x2^2 + 1", f3, 2), 1);
  CHECK(b.status == SearchStatus::ProvenImpossible);
  auto c = decomposition_search(parse_poly("x1*x2*x3 + x4*x5*x6", f2, 6), 1);
  CHECK(c.status == SearchStatus::ProvenImpossible);
  REQUIRE(c.best_known);
  CHECK(c.best_known->size() == 2);
  auto d = decomposition_search(parse_poly("x1*x2*x3 + x4*x5*x6", f2, 6), 2);
  CHECK(d.status == SearchStatus::Found);
  // too big to exhaust: honest none-found
  auto e = decomposition_search(build_Qm(3, 4, f3), 3, EnumOptions{1000, 1});
  CHECK(e.status == SearchStatus::NoneFound);
  REQUIRE(e.best_known);
  CHECK(e.best_known->size() == 4);
  CHECK(decomposition_search(MultiPoly(f3, 2), 1).status == SearchStatus::Found);
}

TEST_CASE("sandwich against the brute-force oracle") {
  SUBCASE("GF(2), three variables, quadratics") {
    const Ring r = Ring::prime_field(2);
    check_sandwich(RankOracle(2, 3, 2), r, 3, 2, 40);
  }
  SUBCASE("GF(3), two variables, quadratics") {
    const Ring r = Ring::prime_field(3);
    check_sandwich(RankOracle(3, 2, 2), r, 2, 2, 40);
  }
  SUBCASE("GF(3), three variables, quadratics") {
    const Ring r = Ring::prime_field(3);
    check_sandwich(RankOracle(3, 3, 2), r, 3, 2, 40);
  }
  SUBCASE("GF(2), two variables, cubics") {
    const Ring r = Ring::prime_field(2);
    check_sandwich(RankOracle(2, 2, 3), r, 2, 3, 30);
  }
}

TEST_CASE("nc-rank") {
  const Ring f5 = Ring::prime_field(5), f2 = Ring::prime_field(2);
  auto a = nc_rank_bounds(parse_poly("x1^2", f5, 1));
  CHECK(a.exact());
  CHECK(*a.upper == 1);
  auto b = nc_rank_bounds(parse_poly("x1 + x2", f5, 2));
  CHECK(*b.upper == 0);
  CHECK(b.lower_source == LowerSource::Convention);
  // top-degree part only
  auto c = nc_rank_bounds(parse_poly("x1*x2 + x1", f2, 2));
  CHECK(*c.upper == 2);
  CHECK(c.lower_int() == 2);
}

TEST_CASE("analytic rank never exceeds a certified rank") {
  const Ring f2 = Ring::prime_field(2), f3 = Ring::prime_field(3);
  for (const Ring& r : {f2, f3}) {
    for (int s = 0; s < 12; ++s) {
      // random trilinear form on 2+2+2 variables
      MultiPoly t(r, 6);
      for (int k = 0; k < 4; ++k) {
        Exponents e(6, 0);
        e[rng()() % 2] = 1;
        e[2 + rng()() % 2] = 1;
        e[4 + rng()() % 2] = 1;
        t.add_term(e, random_elem(r));
      }
      if (t.is_zero()) continue;
      const MultilinearForm form(t, 3, 2);
      const auto est = multilinear_rank_bounds(form);
      REQUIRE(est.upper);
      CHECK(multilinear_bias(form).analytic_rank() <= *est.upper + 1e-9);
    }
  }
}

TEST_CASE("degree one and zero conventions") {
  const Ring f3 = Ring::prime_field(3);
  auto a = schmidt_rank_bounds(parse_poly("x1 + 2", f3, 1));
  CHECK(*a.upper == 1);
  CHECK(a.lower_source == LowerSource::Convention);
  auto z = schmidt_rank_bounds(MultiPoly(f3, 1));
  CHECK(*z.upper == 0);
  CHECK(decomposition_search(parse_poly("x1", f3, 1), 3).status == SearchStatus::ProvenImpossible);
}

TEST_CASE("collection rank") {
  const Ring f2 = Ring::prime_field(2);
  const PolyCollection c({parse_poly("x1*x2", f2, 4), parse_poly("x1*x2 + x3*x4", f2, 4)});
  auto cr = collection_rank_bounds(c);
  // (1,0) and (1,1) both reach rank 1; the first in order is reported
  CHECK(cr.minimizing_a == Point{1, 0});
  CHECK(c.combination(Point{1, 1}) == parse_poly("x3*x4", f2, 4));
  CHECK(*schmidt_rank_bounds(c.combination(Point{1, 1})).upper == 1);
  CHECK(*cr.estimate.upper == 1);
  CHECK(cr.estimate.lower_int() == 1);

  const PolyCollection lin({parse_poly("x1", f2, 2), parse_poly("x2", f2, 2)});
  CHECK(*collection_rank_bounds(lin).estimate.upper == 1);

  const Ring f3 = Ring::prime_field(3);
  const MultiPoly q = parse_poly("x1*x2 + x3^2", f3, 3);
  const auto single = collection_rank_bounds(PolyCollection({q}));
  const auto direct = schmidt_rank_bounds(q);
  CHECK(*single.estimate.upper == *direct.upper);
  CHECK(single.estimate.lower == doctest::Approx(direct.lower));

  CHECK(collection_analytic_rank(c) == doctest::Approx(1.0));
}

TEST_CASE("derivative enrichment") {
  const Ring f5 = Ring::prime_field(5);
  const PolyCollection hyp({parse_poly("x1*x4 + x2*x5 + x3*x6", f5, 6)});
  const auto res = derivative_enrichment_search(hyp, 20, {}, 7);
  CHECK(res.extended.size() == 3);
  CHECK(res.estimate.lower >= 1);
  CHECK(res.v.size() == 1);

  const PolyCollection sq({parse_poly("x1^2", f5, 1)});
  CHECK(derivative_enrichment_search(sq, 5).estimate.lower <= 1 + 1e-9);

  CHECK_THROWS_AS(derivative_enrichment_search(hyp, 0), PreconditionError);
  const Ring f2 = Ring::prime_field(2);
  CHECK_THROWS_AS(derivative_enrichment_search(PolyCollection({parse_poly("x1*x2", f2, 2)}), 3),
                  UnsupportedCharacteristic);
}
