#include "polyrank/geometry.hpp"

#include "polyrank/harmonic.hpp"
#include "polyrank/linalg.hpp"

namespace polyrank {

namespace {

Point checked_target(const PolyCollection& coll, std::span<const Elem> target) {
  require(target.size() == coll.size(), "fiber value has " + std::to_string(target.size()) + " entries, expected " +
                                            std::to_string(coll.size()));
  for (Elem t : target) require(t < coll.ring().size(), "fiber value outside the ring");
  return Point(target.begin(), target.end());
}

}  // namespace

FiberResult fiber_points(const PolyCollection& coll, std::span<const Elem> target, const EnumOptions& opts,
                         std::uint64_t sample_cap) {
  FiberResult out;
  out.target = checked_target(coll, target);
  auto scan = scan_fiber(coll.polys(), out.target, opts, sample_cap);
  out.count = scan.count;
  out.sample = std::move(scan.points);
  return out;
}

TauSequence tau_sequence(const PolyCollection& coll, std::span<const Elem> target, unsigned levels,
                         const EnumOptions& opts) {
  const Ring& base = coll.ring();
  if (base.kind() != RingKind::PrimeField) throw PreconditionError("tau sequences need a prime base field");
  require(levels >= 1, "tau sequence needs at least one level");
  require(coll.size() <= coll.num_vars(), "tau sequence needs c <= n");
  const Point t = checked_target(coll, target);
  const std::uint32_t p = base.characteristic_prime();
  const std::size_t n = coll.num_vars(), c = coll.size();
  // refuse up front rather than after the cheap levels
  const BigInt top = big_pow_u(p, static_cast<unsigned>(levels * n));
  if (top > opts.budget) throw BudgetExceeded(top, opts.budget);

  TauSequence seq;
  seq.q = p;
  seq.n = n;
  seq.c = c;
  for (unsigned l = 1; l <= levels; ++l) {
    const Ring ext = l == 1 ? base : Ring::extension_field(p, l);
    std::vector<MultiPoly> polys;
    Point te(c);
    for (std::size_t i = 0; i < c; ++i) {
      polys.push_back(embed_coefficients(coll[i], ext));
      te[i] = ext.from_int(t[i]);
    }
    const auto scan = scan_fiber(polys, te, opts, 0);
    seq.levels.push_back(l);
    seq.counts.emplace_back(scan.count);
    const long expo = static_cast<long>((n - c) * l);
    seq.ratios.push_back(Rational(scan.count) * rational_pow(p, -expo));
  }
  return seq;
}

SmoothnessSample jacobian_smoothness(const PolyCollection& coll, std::span<const Elem> target,
                                     std::uint64_t sample_size, const EnumOptions& opts) {
  const Ring& ring = coll.ring();
  require(ring.is_field(), "Jacobian ranks need a field");
  if (static_cast<long>(ring.characteristic_prime()) <= coll.max_degree()) {
    throw UnsupportedCharacteristic("Jacobian smoothness needs characteristic > max degree");
  }
  SmoothnessSample out;
  out.target = checked_target(coll, target);
  const std::size_t n = coll.num_vars(), c = coll.size();
  std::vector<std::vector<MultiPoly>> jac(c);
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = 0; j < n; ++j) jac[i].push_back(partial_derivative(coll[i], j));

  const auto scan = scan_fiber(coll.polys(), out.target, opts, sample_size);
  out.fiber_size = scan.count;
  Matrix m(c, n);
  for (const Point& v : scan.points) {
    for (std::size_t i = 0; i < c; ++i)
      for (std::size_t j = 0; j < n; ++j) m.at(i, j) = jac[i][j].evaluate(v);
    ++out.inspected;
    if (matrix_rank(ring, m) == c) {
      ++out.full_rank;
    } else {
      ++out.deficient;
      if (out.singular_points.size() < 16) out.singular_points.push_back(v);
    }
  }
  return out;
}

BezoutReport bezout_rough_bound_check(const PolyCollection& coll, const EnumOptions& opts) {
  const Ring& ring = coll.ring();
  const std::uint32_t q = ring.size();
  const std::size_t n = coll.num_vars(), c = coll.size();
  require(c <= n, "rough bound needs c <= n");
  const auto h = value_histogram(coll, opts);
  BezoutReport rep;
  rep.degree_product = coll.degree_product();
  const BigInt qnc = big_pow_u(q, static_cast<unsigned>(n - c));
  rep.bound = qnc * rep.degree_product;
  rep.max_count = -1;
  const Domain codomain(ring, c);
  const bool keep_all = h.counts.size() <= 4096;
  for (std::uint64_t key = 0; key < h.counts.size(); ++key) {
    const BigInt& cnt = h.counts[key];
    if (cnt > rep.max_count) {
      rep.max_count = cnt;
      rep.argmax = codomain.point_at(key);
    }
    if (cnt > rep.bound) {
      rep.holds = false;
      rep.violations.push_back({codomain.point_at(key), cnt});
    }
    if (keep_all) rep.entries.push_back({codomain.point_at(key), cnt});
  }
  rep.max_tau1 = Rational(rep.max_count, qnc);
  return rep;
}

}  // namespace polyrank
