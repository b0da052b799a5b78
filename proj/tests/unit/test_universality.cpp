#include <doctest.h>

#include "polyrank/universality.hpp"
#include "support.hpp"

using namespace polyrank;
using namespace testing_support;

namespace {

std::vector<Point> zeros_of(const MultiPoly& p) {
  std::vector<Point> out;
  for (const auto& v : all_points(p.ring(), p.num_vars()))
    if (p.evaluate(v) == 0) out.push_back(v);
  return out;
}

// f on the cubic xy(x-y) = 0: zero on the axes, x on the diagonal.
FunctionTable cubic_f(const Ring& r, bool squared) {
  const auto pts = zeros_of(parse_poly("x1*x2*(x1 - x2)", r, 2));
  std::vector<Elem> vals;
  for (const auto& v : pts) vals.push_back(v[0] == v[1] ? (squared ? r.mul(v[0], v[0]) : v[0]) : 0);
  return FunctionTable(r, 2, pts, vals);
}

// Lines by brute force: every (base, direction) pair, no canonical form.
std::size_t brute_line_count(const Ring& r, const std::vector<Point>& pts) {
  std::set<std::vector<Point>> lines;
  const std::size_t n = pts.front().size();
  for (const auto& x : pts)
    for (const auto& v : all_points(r, n)) {
      if (std::all_of(v.begin(), v.end(), [](Elem e) { return e == 0; })) continue;
      std::vector<Point> line;
      bool ok = true;
      for (Elem t = 0; t < r.size() && ok; ++t) {
        Point y(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = r.add(x[i], r.mul(t, v[i]));
        ok = std::find(pts.begin(), pts.end(), y) != pts.end();
        line.push_back(y);
      }
      if (!ok) continue;
      std::sort(line.begin(), line.end());
      lines.insert(line);
    }
  return lines.size();
}

}  // namespace

TEST_CASE("affine maps") {
  const Ring f5 = Ring::prime_field(5);
  AffineMap phi{Matrix(2, 1), Point{0, 1}};
  phi.a.at(0, 0) = 1;
  phi.a.at(1, 0) = 2;
  CHECK(phi.pullback(parse_poly("x1*x2", f5, 2)) == parse_poly("2*x1^2 + x1", f5, 1));
  CHECK(phi.apply(Point{3}, f5) == Point{3, 2});
  CHECK(phi.to_string(f5) == "(x1, 2*x1 + 1)");
}

TEST_CASE("pullback search") {
  const Ring f2 = Ring::prime_field(2), f3 = Ring::prime_field(3);
  auto a = affine_pullback_search(parse_poly("x1*x2", f2, 2), parse_poly("x1^2 + x1", f2, 1));
  REQUIRE(a.status == PullbackStatus::Found);
  CHECK(a.map->pullback(parse_poly("x1*x2", f2, 2)) == parse_poly("x1^2 + x1", f2, 1));

  auto b = affine_pullback_search(parse_poly("x1*x2", f2, 2), parse_poly("x1^2 + x1 + 1", f2, 1));
  CHECK(b.status == PullbackStatus::ProvenNonexistent);
  CHECK(b.stage == "exhaustive");
  CHECK(b.maps_tried >= 16);

  auto c = affine_pullback_search(build_Qm(2, 2, f3), parse_poly("x1*x2", f3, 2));
  REQUIRE(c.status == PullbackStatus::Found);
  CHECK(c.stage == "coordinate");

  // x1^2 takes only squares; 2*t^2 needs a non-square leading coefficient
  auto d = affine_pullback_search(parse_poly("x1^2", f3, 1), parse_poly("2*x1^2", f3, 1));
  CHECK(d.status == PullbackStatus::ProvenNonexistent);

  CHECK_THROWS_AS(affine_pullback_search(parse_poly("x1", f3, 1), parse_poly("x1^2", f3, 1)), PreconditionError);

  PullbackOptions tiny;
  tiny.enumeration.budget = 50;
  tiny.random_trials = 50;
  auto e = affine_pullback_search(build_Qm(2, 3, f3), parse_poly("x1^2 + x2^2 + 2", f3, 2), tiny);
  CHECK(e.stage == "random");
  if (e.status == PullbackStatus::Found) CHECK(e.map->pullback(build_Qm(2, 3, f3)) == parse_poly("x1^2 + x2^2 + 2", f3, 2));
  else CHECK(e.status == PullbackStatus::NoneFound);
}

TEST_CASE("pullbacks of random maps are found") {
  const Ring f3 = Ring::prime_field(3);
  for (int s = 0; s < 15; ++s) {
    const MultiPoly p = random_poly(f3, 2, 2, 4);
    AffineMap phi{Matrix(2, 1), random_point(f3, 2)};
    phi.a.at(0, 0) = random_elem(f3);
    phi.a.at(1, 0) = random_elem(f3);
    const MultiPoly q = phi.pullback(p);
    const auto r = affine_pullback_search(p, q);
    REQUIRE(r.status == PullbackStatus::Found);
    CHECK(r.map->pullback(p) == q);
  }
}

TEST_CASE("function tables") {
  const Ring f3 = Ring::prime_field(3);
  CHECK_THROWS_AS(FunctionTable(f3, 1, {{0}, {0}}, {1, 2}), InputError);
  CHECK_THROWS_AS(FunctionTable(f3, 1, {{0}}, {1, 2}), InputError);
  CHECK_THROWS_AS(FunctionTable(f3, 1, {{3}}, {1}), InputError);
  const FunctionTable t(f3, 2, {{2, 1}, {0, 0}}, {1, 2});
  CHECK(t.find(Point{2, 1}) == 0);
  CHECK(t.find(Point{0, 0}) == 1);
  CHECK(t.find(Point{1, 1}) == FunctionTable::npos);
}

TEST_CASE("contained lines match brute force") {
  for (std::uint32_t pr : {3u, 5u}) {
    const Ring r = Ring::prime_field(pr);
    for (int s = 0; s < 6; ++s) {
      const auto pts = zeros_of(random_poly(r, 3, 2, 3));
      if (pts.empty()) continue;
      CHECK(contained_subspaces(r, pts, 1).size() == brute_line_count(r, pts));
    }
  }
  const Ring f3 = Ring::prime_field(3);
  // a hyperplane in GF(3)^3 is one plane with 12 lines
  const auto h = zeros_of(parse_poly("x1", f3, 3));
  const auto subs = contained_subspaces(f3, h, 2);
  CHECK(std::count_if(subs.begin(), subs.end(), [](const auto& s) { return s.directions.size() == 2; }) == 1);
  CHECK(subs.size() == 13);
}

TEST_CASE("weakly polynomial test") {
  const Ring f7 = Ring::prime_field(7);
  const auto lin = is_weakly_polynomial(cubic_f(f7, false), 1);
  CHECK(lin.holds);
  CHECK(lin.lines == 3);
  const auto sq = is_weakly_polynomial(cubic_f(f7, true), 1);
  CHECK_FALSE(sq.holds);
  REQUIRE(sq.witness);
  CHECK(sq.witness->directions == std::vector<Point>{{1, 1}});
  CHECK(is_weakly_polynomial(cubic_f(f7, true), 2).holds);
  CHECK_THROWS_AS(is_weakly_polynomial(cubic_f(f7, false), 6), PreconditionError);

  // restrictions of global polynomials always pass; extension recovers them
  for (std::uint32_t pr : {3u, 5u}) {
    const Ring r = Ring::prime_field(pr);
    for (int s = 0; s < 8; ++s) {
      const auto pts = zeros_of(random_poly(r, 3, 2, 3));
      if (pts.empty()) continue;
      const unsigned a = 1 + static_cast<unsigned>(s % (pr - 2));
      const auto f = FunctionTable::restriction(random_poly(r, 3, static_cast<int>(a), 5), pts);
      CHECK(is_weakly_polynomial(f, a, 2).holds);
      const auto g = extend_weakly_polynomial(f, a);
      REQUIRE(g);
      CHECK(f.agrees_with(*g));
      CHECK(g->degree() <= static_cast<int>(a));
    }
  }
}

TEST_CASE("extension") {
  const Ring f7 = Ring::prime_field(7), f3 = Ring::prime_field(3);
  CHECK_FALSE(extend_weakly_polynomial(cubic_f(f7, false), 1));
  // G vanishing on both axes is xy H, and x^2 H(x,x) = x forces H(x,x) = x^5
  for (unsigned a = 2; a <= 6; ++a) CHECK_FALSE(extend_weakly_polynomial(cubic_f(f7, false), a));
  CHECK(extend_weakly_polynomial(cubic_f(f7, false), 7));

  // a random element of the weak space on x1y1 + x2y2 = 0 over GF(3) extends
  const MultiPoly q2 = parse_poly("x1*x3 + x2*x4", f3, 4);
  const auto star = star_a_dimension_compare(PolyCollection({q2}), Point{0}, 1);
  CHECK(star.equal);
  REQUIRE(star.weak_basis.size() == star.dim_weak_upper);
  for (int s = 0; s < 5; ++s) {
    std::vector<Elem> vals(star.domain.size(), 0);
    for (const auto& w : star.weak_basis) {
      const Elem c = random_elem(f3);
      for (std::size_t k = 0; k < vals.size(); ++k) vals[k] = f3.add(vals[k], f3.mul(c, w[k]));
    }
    const FunctionTable f(f3, 4, star.domain, vals);
    CHECK(is_weakly_polynomial(f, 1).holds);
    CHECK(extend_weakly_polynomial(f, 1));
  }
  EnumOptions small;
  small.budget = 10;
  CHECK_THROWS_AS(extend_weakly_polynomial(cubic_f(f7, false), 1, small), BudgetExceeded);
}

TEST_CASE("weak versus global dimension") {
  const Ring f7 = Ring::prime_field(7), f3 = Ring::prime_field(3), f5 = Ring::prime_field(5);
  const auto cubic = star_a_dimension_compare(PolyCollection({parse_poly("x1*x2*(x1 - x2)", f7, 2)}), Point{0}, 1);
  CHECK(cubic.points == 19);
  CHECK(cubic.dim_global == 3);
  CHECK(cubic.dim_weak_upper == 4);
  CHECK_FALSE(cubic.equal);
  REQUIRE(cubic.gap.size() == 1);
  CHECK(is_weakly_polynomial(cubic.gap[0], 1).holds);
  CHECK_FALSE(extend_weakly_polynomial(cubic.gap[0], 1));
  CHECK(cubic.admissibility_e == 3);
  CHECK(cubic.admissible);

  for (unsigned a = 1; a <= 3; ++a) {
    const auto h = star_a_dimension_compare(PolyCollection({parse_poly("x1", f5, 3)}), Point{0}, a);
    CHECK(h.equal);
    CHECK(h.gap.empty());
  }
  const auto q3 = star_a_dimension_compare(PolyCollection({build_Qm(2, 3, f3)}), Point{0}, 1);
  CHECK(q3.points == 3 * 3 * 3 * 3 * 3 + 27 - 9);
  CHECK(q3.equal);

  // Q_2 over GF(5): equality at a = 1 on every fiber
  for (Elem t = 0; t < 5; ++t) {
    const auto rep = star_a_dimension_compare(PolyCollection({build_Qm(2, 2, f5)}), Point{t}, 1);
    CHECK(rep.dim_global <= rep.dim_weak_upper);
    CHECK(rep.equal);
  }
  // planes only add constraints
  for (int s = 0; s < 6; ++s) {
    const PolyCollection c({random_poly(f3, 3, 2, 3)});
    const auto l = star_a_dimension_compare(c, Point{0}, 1, 1);
    const auto p = star_a_dimension_compare(c, Point{0}, 1, 2);
    CHECK(l.dim_global == p.dim_global);
    CHECK(p.dim_weak_upper <= l.dim_weak_upper);
    CHECK(p.dim_global <= p.dim_weak_upper);
  }
}
