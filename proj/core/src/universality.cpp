#include "polyrank/universality.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

namespace polyrank {

Point AffineMap::apply(std::span<const Elem> y, const Ring& ring) const {
  Point x(b);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a.at(i, j) != 0 && y[j] != 0) x[i] = ring.add(x[i], ring.mul(a.at(i, j), y[j]));
  return x;
}

MultiPoly AffineMap::pullback(const MultiPoly& p) const {
  require(p.num_vars() == target_dim(), "map target does not match the polynomial");
  std::vector<MultiPoly> images;
  images.reserve(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) images.push_back(MultiPoly::affine(p.ring(), a.row(i), b[i]));
  if (a.cols() == 0) {
    // zero-dimensional source: only constants
    return MultiPoly::constant(p.ring(), 0, p.evaluate(b));
  }
  return p.substitute(images);
}

std::string AffineMap::to_string(const Ring& ring) const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i) os << ", ";
    os << MultiPoly::affine(ring, a.row(i), b[i]).to_string();
  }
  os << ')';
  return os.str();
}

const char* to_string(PullbackStatus s) {
  switch (s) {
    case PullbackStatus::Found: return "found";
    case PullbackStatus::NoneFound: return "none-found";
    case PullbackStatus::ProvenNonexistent: return "proven-nonexistent";
  }
  return "?";
}

namespace {

// Value filter on K^m followed by the symbolic check.
class PullbackTester {
 public:
  PullbackTester(const MultiPoly& p, const MultiPoly& q, std::uint64_t budget)
      : p_(p), q_(q), m_(q.num_vars()) {
    const Domain dom(q.ring(), m_);
    ys_ = enumerate_domain(dom, {}, budget);
    for (const auto& y : ys_) qvals_.push_back(q.evaluate(y));
  }

  bool test(const AffineMap& phi) const {
    const Ring& r = p_.ring();
    for (std::size_t k = 0; k < ys_.size(); ++k)
      if (p_.evaluate(phi.apply(ys_[k], r)) != qvals_[k]) return false;
    return phi.pullback(p_) == q_;
  }

 private:
  const MultiPoly& p_;
  const MultiPoly& q_;
  std::size_t m_;
  std::vector<Point> ys_;
  std::vector<Elem> qvals_;
};

// digits[i*(m+1) + j]: A_ij for j < m, b_i for j = m
AffineMap map_from_digits(const std::vector<Elem>& digits, std::size_t n, std::size_t m) {
  AffineMap phi{Matrix(n, m), Point(n, 0)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) phi.a.at(i, j) = digits[i * (m + 1) + j];
    phi.b[i] = digits[i * (m + 1) + m];
  }
  return phi;
}

bool next_digits(std::vector<Elem>& d, Elem base) {
  for (std::size_t k = d.size(); k-- > 0;) {
    if (++d[k] < base) return true;
    d[k] = 0;
  }
  return false;
}

}  // namespace

PullbackResult affine_pullback_search(const MultiPoly& p, const MultiPoly& q, const PullbackOptions& opts) {
  require(p.ring() == q.ring(), "P and Q live over different rings");
  require(q.is_zero() || q.degree() <= std::max(p.degree(), 0), "need deg Q <= deg P");
  const Ring& ring = p.ring();
  const std::size_t n = p.num_vars(), m = q.num_vars();
  const std::uint64_t budget = opts.enumeration.budget;
  const PullbackTester tester(p, q, budget);
  PullbackResult res;

  // coordinate maps: row i of A is 0 or a unit vector, b_i in {0, 1}
  const BigInt coord_count = big_pow_u(2 * (m + 1), static_cast<unsigned>(n));
  if (coord_count <= budget) {
    std::vector<Elem> choice(n, 0);
    do {
      AffineMap phi{Matrix(n, m), Point(n, 0)};
      for (std::size_t i = 0; i < n; ++i) {
        const Elem slot = choice[i] / 2;
        if (slot > 0) phi.a.at(i, slot - 1) = 1;
        phi.b[i] = choice[i] % 2;
      }
      ++res.maps_tried;
      if (tester.test(phi)) {
        res.status = PullbackStatus::Found;
        res.map = std::move(phi);
        res.stage = "coordinate";
        return res;
      }
    } while (next_digits(choice, static_cast<Elem>(2 * (m + 1))));
  }

  const std::size_t digits = (m + 1) * n;
  const BigInt all_maps = big_pow_u(ring.size(), static_cast<unsigned>(digits));
  if (all_maps <= budget) {
    res.stage = "exhaustive";
    std::vector<Elem> d(digits, 0);
    do {
      AffineMap phi = map_from_digits(d, n, m);
      ++res.maps_tried;
      if (tester.test(phi)) {
        res.status = PullbackStatus::Found;
        res.map = std::move(phi);
        return res;
      }
    } while (next_digits(d, ring.size()));
    res.status = PullbackStatus::ProvenNonexistent;
    return res;
  }

  res.stage = "random";
  std::mt19937_64 gen(opts.seed);
  std::uniform_int_distribution<Elem> pick(0, ring.size() - 1);
  std::vector<Elem> d(digits);
  const std::uint64_t trials = std::min(opts.random_trials, budget);
  for (std::uint64_t t = 0; t < trials; ++t) {
    for (auto& x : d) x = pick(gen);
    AffineMap phi = map_from_digits(d, n, m);
    ++res.maps_tried;
    if (tester.test(phi)) {
      res.status = PullbackStatus::Found;
      res.map = std::move(phi);
      return res;
    }
  }
  res.status = PullbackStatus::NoneFound;
  return res;
}

FunctionTable::FunctionTable(Ring ring, std::size_t n, std::vector<Point> domain, std::vector<Elem> values)
    : ring_(std::move(ring)), n_(n), domain_(std::move(domain)), values_(std::move(values)) {
  if (domain_.size() != values_.size()) throw InputError("function table: point and value counts differ");
  for (const auto& v : domain_) {
    if (v.size() != n_) throw InputError("function table: point of the wrong length");
    for (Elem e : v)
      if (e >= ring_.size()) throw InputError("function table: coordinate outside the ring");
  }
  for (Elem e : values_)
    if (e >= ring_.size()) throw InputError("function table: value outside the ring");
  order_.resize(domain_.size());
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  std::sort(order_.begin(), order_.end(), [&](std::size_t i, std::size_t j) { return domain_[i] < domain_[j]; });
  for (std::size_t k = 1; k < order_.size(); ++k)
    if (domain_[order_[k]] == domain_[order_[k - 1]]) throw InputError("function table: repeated point");
}

FunctionTable FunctionTable::restriction(const MultiPoly& g, std::vector<Point> domain) {
  std::vector<Elem> vals;
  vals.reserve(domain.size());
  for (const auto& v : domain) vals.push_back(g.evaluate(v));
  return FunctionTable(g.ring(), g.num_vars(), std::move(domain), std::move(vals));
}

std::size_t FunctionTable::find(std::span<const Elem> v) const {
  const Point key(v.begin(), v.end());
  auto it = std::lower_bound(order_.begin(), order_.end(), key,
                             [&](std::size_t i, const Point& k) { return domain_[i] < k; });
  if (it == order_.end() || domain_[*it] != key) return npos;
  return *it;
}

bool FunctionTable::agrees_with(const MultiPoly& g) const {
  if (!(g.ring() == ring_) || g.num_vars() != n_) return false;
  for (std::size_t k = 0; k < domain_.size(); ++k)
    if (g.evaluate(domain_[k]) != values_[k]) return false;
  return true;
}

std::string AffineSubspace::to_string() const {
  auto pt = [](const Point& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
  };
  std::string s = pt(base) + " + span{";
  for (std::size_t i = 0; i < directions.size(); ++i) s += (i ? ", " : "") + pt(directions[i]);
  return s + "}";
}

namespace {

// Points x + sum_i t_i d_i in the lexicographic order of t in K^k.
std::vector<Point> subspace_points(const Ring& r, const AffineSubspace& s) {
  const std::size_t k = s.directions.size();
  std::vector<Point> out;
  Point t(k, 0);
  do {
    Point x = s.base;
    for (std::size_t i = 0; i < k; ++i)
      if (t[i] != 0)
        for (std::size_t j = 0; j < x.size(); ++j) x[j] = r.add(x[j], r.mul(t[i], s.directions[i][j]));
    out.push_back(std::move(x));
  } while (next_digits(t, r.size()));
  return out;
}

std::vector<Point> echelon_directions(const Ring& r, const std::vector<Point>& dirs) {
  Matrix m(0, dirs.front().size());
  for (const auto& d : dirs) m.append_row(d);
  const Echelon e = row_reduce(r, m);
  std::vector<Point> out;
  for (std::size_t i = 0; i < e.rank(); ++i) {
    const auto row = e.reduced.row(i);
    out.emplace_back(row.begin(), row.end());
  }
  return out;
}

class PointSet {
 public:
  explicit PointSet(const std::vector<Point>& pts) : sorted_(pts) { std::sort(sorted_.begin(), sorted_.end()); }
  bool contains(const Point& v) const { return std::binary_search(sorted_.begin(), sorted_.end(), v); }

 private:
  std::vector<Point> sorted_;
};

// Fills `on` with the subspace's points; false when one leaves X.
bool inside(const Ring& r, const PointSet& x, const AffineSubspace& s, std::vector<Point>& on) {
  on = subspace_points(r, s);
  return std::all_of(on.begin(), on.end(), [&](const Point& v) { return x.contains(v); });
}

Point difference(const Ring& r, const Point& a, const Point& b) {
  Point d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = r.sub(a[i], b[i]);
  return d;
}

// Monomials of degree <= a in the k subspace coordinates, evaluated at every
// parameter point (rows in subspace_points order).
Matrix restriction_matrix(const Ring& r, std::size_t k, unsigned a) {
  const auto monos = monomials_up_to(k, static_cast<int>(a));
  Matrix v(0, monos.size());
  Point t(k, 0);
  std::vector<Elem> row(monos.size());
  do {
    for (std::size_t j = 0; j < monos.size(); ++j) {
      Elem acc = r.one();
      for (std::size_t i = 0; i < k; ++i)
        if (monos[j][i]) acc = r.mul(acc, r.pow(t[i], monos[j][i]));
      row[j] = acc;
    }
    v.append_row(row);
  } while (next_digits(t, r.size()));
  return v;
}

Matrix transpose(const Matrix& m) {
  Matrix t(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) t.at(j, i) = m.at(i, j);
  return t;
}

void require_weak_range(const Ring& r, unsigned a) {
  require(r.is_field(), "weakly polynomial functions need a field");
  require(a + 2 <= r.size(), "need a <= q - 2; degree q - 1 is no condition on a line");
}

}  // namespace

std::vector<AffineSubspace> contained_subspaces(const Ring& ring, const std::vector<Point>& points, unsigned cap,
                                                const EnumOptions& opts) {
  require(ring.is_field(), "affine subspaces need a field");
  require(cap >= 1 && cap <= 2, "subspace cap must be 1 (lines) or 2 (planes)");
  std::vector<AffineSubspace> out;
  if (points.empty()) return out;
  const PointSet x(points);
  const BigInt q = ring.size();
  const BigInt npts = points.size();
  const BigInt line_work = npts * npts * q;
  if (line_work > opts.budget) throw BudgetExceeded(line_work, opts.budget);

  std::set<std::pair<Point, std::vector<Point>>> seen;
  std::vector<Point> on;
  std::vector<Point> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  // A line is recorded from its least point, so the base is canonical.
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    for (std::size_t j = i + 1; j < sorted.size(); ++j) {
      AffineSubspace s{sorted[i], echelon_directions(ring, {difference(ring, sorted[j], sorted[i])})};
      if (seen.count({s.base, s.directions})) continue;
      if (!inside(ring, x, s, on)) continue;
      if (*std::min_element(on.begin(), on.end()) != s.base) continue;
      seen.insert({s.base, s.directions});
      out.push_back(std::move(s));
    }
  }
  if (cap < 2) return out;

  const std::size_t nlines = out.size();
  const BigInt plane_work = BigInt(nlines) * npts * q * q;
  if (plane_work > opts.budget) throw BudgetExceeded(plane_work, opts.budget);
  for (std::size_t li = 0; li < nlines; ++li) {
    const AffineSubspace line = out[li];
    for (const auto& z : sorted) {
      if (z <= line.base) continue;
      std::vector<Point> dirs = line.directions;
      dirs.push_back(difference(ring, z, line.base));
      dirs = echelon_directions(ring, dirs);
      if (dirs.size() != 2) continue;
      AffineSubspace s{line.base, std::move(dirs)};
      if (seen.count({s.base, s.directions})) continue;
      if (!inside(ring, x, s, on)) continue;
      if (*std::min_element(on.begin(), on.end()) != s.base) continue;
      seen.insert({s.base, s.directions});
      out.push_back(std::move(s));
    }
  }
  return out;
}

WeakTestResult is_weakly_polynomial(const FunctionTable& f, unsigned a, unsigned cap, const EnumOptions& opts) {
  const Ring& r = f.ring();
  require_weak_range(r, a);
  WeakTestResult res;
  const auto subs = contained_subspaces(r, f.domain(), cap, opts);
  Matrix v1 = restriction_matrix(r, 1, a), v2;
  if (cap >= 2) v2 = restriction_matrix(r, 2, a);
  for (const auto& s : subs) {
    const bool line = s.directions.size() == 1;
    (line ? res.lines : res.planes)++;
    std::vector<Elem> g;
    for (const auto& v : subspace_points(r, s)) g.push_back(f.values()[f.find(v)]);
    if (!solve(r, line ? v1 : v2, g)) {
      res.holds = false;
      res.witness = s;
      return res;
    }
  }
  return res;
}

std::optional<MultiPoly> extend_weakly_polynomial(const FunctionTable& f, unsigned a, const EnumOptions& opts) {
  const Ring& r = f.ring();
  require(r.is_field(), "extension needs a field");
  const std::size_t n = f.num_vars();
  const auto monos = monomials_up_to(n, static_cast<int>(a));
  const BigInt size = BigInt(f.size()) * BigInt(monos.size());
  if (size > opts.budget) throw BudgetExceeded(size, opts.budget);
  if (f.size() == 0) return MultiPoly(r, n);
  Matrix e(f.size(), monos.size());
  for (std::size_t k = 0; k < f.size(); ++k)
    for (std::size_t j = 0; j < monos.size(); ++j) {
      Elem acc = r.one();
      for (std::size_t i = 0; i < n; ++i)
        if (monos[j][i]) acc = r.mul(acc, r.pow(f.domain()[k][i], monos[j][i]));
      e.at(k, j) = acc;
    }
  const auto x = solve(r, e, f.values());
  if (!x) return std::nullopt;
  MultiPoly g(r, n);
  for (std::size_t j = 0; j < monos.size(); ++j) g.add_term(monos[j], (*x)[j]);
  if (!f.agrees_with(g)) throw InternalError("extension does not reproduce the function table");
  return g;
}

StarReport star_a_dimension_compare(const Ring& ring, std::size_t n, const std::vector<Point>& points, unsigned a,
                                    unsigned cap, const EnumOptions& opts) {
  require_weak_range(ring, a);
  StarReport rep;
  rep.points = points.size();
  rep.domain = points;
  const std::size_t np = points.size();
  if (np == 0) {
    rep.equal = true;
    return rep;
  }
  const auto monos = monomials_up_to(n, static_cast<int>(a));
  const BigInt gsize = BigInt(np) * BigInt(monos.size());
  if (gsize > opts.budget) throw BudgetExceeded(gsize, opts.budget);

  // restrictions of the monomials, one row per monomial
  Matrix global(monos.size(), np);
  for (std::size_t j = 0; j < monos.size(); ++j)
    for (std::size_t k = 0; k < np; ++k) {
      Elem acc = ring.one();
      for (std::size_t i = 0; i < n; ++i)
        if (monos[j][i]) acc = ring.mul(acc, ring.pow(points[k][i], monos[j][i]));
      global.at(j, k) = acc;
    }
  rep.dim_global = matrix_rank(ring, global);

  const FunctionTable index(ring, n, points, std::vector<Elem>(np, 0));
  const auto subs = contained_subspaces(ring, points, cap, opts);
  // u^T g = 0 for u in the left kernel of the restriction matrix
  const auto ann1 = kernel_basis(ring, transpose(restriction_matrix(ring, 1, a)));
  std::vector<std::vector<Elem>> ann2;
  if (cap >= 2) ann2 = kernel_basis(ring, transpose(restriction_matrix(ring, 2, a)));
  Matrix cons(0, np);
  std::vector<Elem> row(np);
  for (const auto& s : subs) {
    const bool line = s.directions.size() == 1;
    (line ? rep.lines : rep.planes)++;
    const auto on = subspace_points(ring, s);
    for (const auto& u : line ? ann1 : ann2) {
      std::fill(row.begin(), row.end(), 0);
      for (std::size_t t = 0; t < on.size(); ++t) row[index.find(on[t])] = u[t];
      cons.append_row(row);
    }
    // keep the constraint matrix compact
    if (cons.rows() > 2 * np + 64) {
      const Echelon e = row_reduce(ring, cons);
      Matrix kept(0, np);
      for (std::size_t i = 0; i < e.rank(); ++i) kept.append_row(e.reduced.row(i));
      cons = std::move(kept);
    }
  }
  const auto weak = kernel_basis(ring, cons.rows() ? cons : Matrix(1, np));
  rep.dim_weak_upper = weak.size();
  if (rep.dim_global > rep.dim_weak_upper) throw InternalError("global restrictions escape the weak space");
  rep.equal = rep.dim_global == rep.dim_weak_upper;

  Matrix span(0, np);
  {
    const Echelon e = row_reduce(ring, global);
    for (std::size_t i = 0; i < e.rank(); ++i) span.append_row(e.reduced.row(i));
  }
  for (const auto& w : weak) {
    if (span.rows() == rep.dim_weak_upper) break;
    Matrix trial = span;
    trial.append_row(w);
    if (matrix_rank(ring, trial) > span.rows()) {
      span = std::move(trial);
      rep.gap.emplace_back(ring, n, points, w);
    }
  }
  rep.weak_basis = weak;
  return rep;
}

StarReport star_a_dimension_compare(const PolyCollection& coll, std::span<const Elem> target, unsigned a,
                                    unsigned cap, const EnumOptions& opts) {
  require(target.size() == coll.size(), "target length must match the collection");
  const auto scan = scan_fiber(coll.polys(), target, opts, 0);
  const auto pts = scan_fiber(coll.polys(), target, opts, scan.count).points;
  StarReport rep = star_a_dimension_compare(coll.ring(), coll.num_vars(), pts, a, cap, opts);
  rep.admissibility_e = static_cast<std::uint64_t>(a) * static_cast<std::uint64_t>(std::max(coll.max_degree(), 1));
  rep.admissible = rep.admissibility_e > 0 && (coll.ring().size() - 1) % rep.admissibility_e == 0;
  return rep;
}

}  // namespace polyrank
