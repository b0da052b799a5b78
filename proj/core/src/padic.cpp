#include "polyrank/padic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace polyrank {

namespace {

void require_padic(const Ring& r) {
  require(r.kind() == RingKind::PrimePower || r.kind() == RingKind::PrimeField,
          "p-adic operations need Z/p^l (or GF(p))");
}

unsigned level_of(const Ring& r) { return r.kind() == RingKind::PrimePower ? r.exponent() : 1; }

}  // namespace

unsigned char_depth(std::uint64_t c, std::uint32_t p, unsigned l) {
  if (c == 0) return 0;
  unsigned v = 0;
  while (c % p == 0) {
    c /= p;
    ++v;
  }
  require(v < l || l == 0, "character frequency outside Z/p^l");
  return l - v;
}

Rational PadicCharacter::turns(Elem x) const {
  std::uint64_t q = 1;
  for (unsigned k = 0; k < l; ++k) q *= p;
  return Rational(BigInt((static_cast<std::uint64_t>(c) * x) % q), BigInt(q));
}

BiasValue padic_bias(const MultiPoly& p, const PadicCharacter& chi, const EnumOptions& opts) {
  require_padic(p.ring());
  require(chi.p == p.ring().characteristic_prime() && chi.l == level_of(p.ring()),
          "character and polynomial live on different rings");
  require(chi.c < p.ring().size(), "character frequency outside the ring");
  return bias(p, opts, chi.c);
}

PadicBiasReport padic_uniformity(const MultiPoly& p, long s, const EnumOptions& opts) {
  const Ring& ring = p.ring();
  require_padic(ring);
  PadicBiasReport rep;
  rep.p = ring.characteristic_prime();
  rep.l = level_of(ring);
  rep.s = s;
  const auto h = value_histogram(p, opts);
  rep.hypothesis = true;
  for (Elem c = 0; c < ring.size(); ++c) {
    const BiasValue b = bias(h, Point{c});
    CharacterBias cb;
    cb.c = c;
    cb.depth = char_depth(c, rep.p, rep.l);
    cb.magnitude = b.magnitude;
    cb.exact_zero = b.exact_zero;
    cb.threshold = rational_pow(rep.p, -s * static_cast<long>(cb.depth));
    cb.normalized = cb.magnitude / to_double(cb.threshold);
    cb.below = cb.exact_zero || cb.magnitude <= to_double(cb.threshold) * (1 + 1e-9);
    if (c != 0) {
      rep.hypothesis = rep.hypothesis && cb.below;
      rep.max_normalized = std::max(rep.max_normalized, cb.normalized);
    }
    rep.characters.push_back(std::move(cb));
  }
  const auto u = nu_report(h);
  rep.nu = u.nu;
  rep.deviation = u.max_deviation;
  if (rep.hypothesis) {
    rep.implication_checked = true;
    rep.implication_holds = rep.deviation <= rational_pow(rep.p, -(s - 2));
  }
  return rep;
}

MainpReport mainp_probe(const std::vector<MultiPoly>& batch, long s, const EnumOptions& opts) {
  MainpReport rep;
  rep.s = s;
  for (const auto& p : batch) {
    require_padic(p.ring());
    MainpPoint pt{p};
    const int d = p.degree();
    pt.low_characteristic = d >= 0 && static_cast<long>(p.ring().characteristic_prime()) <= d;
    if (d <= 1) {
      pt.degenerate = true;
    } else {
      const MultilinearForm form = multilinear_form(p);
      const MultiPoly reduced = reduce_mod_p(form.poly());
      if (reduced.is_zero()) {
        pt.degenerate = true;
      } else {
        pt.rank_lower = multilinear_bias(MultilinearForm(reduced, form.blocks(), form.block_size()), opts).analytic_rank();
      }
    }
    pt.max_normalized = padic_uniformity(p, s, opts).max_normalized;
    rep.points.push_back(std::move(pt));
  }
  std::vector<double> ranks;
  for (const auto& pt : rep.points)
    if (!pt.degenerate) ranks.push_back(pt.rank_lower);
  std::sort(ranks.begin(), ranks.end());
  for (double r : ranks) {
    bool ok = true;
    for (const auto& pt : rep.points)
      if (!pt.degenerate && pt.rank_lower >= r && pt.max_normalized >= 1) ok = false;
    if (ok) {
      rep.frontier = r;
      break;
    }
  }
  return rep;
}

CauchySchwarzStep proposition_b_cs_step(const MultiPoly& r, const MultiPoly& s, unsigned m, const EnumOptions& opts) {
  const Ring& ring = r.ring();
  require_padic(ring);
  require(s.ring() == ring, "R and S live on different rings");
  const unsigned l = level_of(ring);
  require(m >= 1 && m <= l, "need 1 <= m <= l");
  const int deg = r.degree();
  require(deg >= 1, "R needs degree >= 1");
  const std::size_t n = r.num_vars();
  const unsigned d = static_cast<unsigned>(deg);
  const std::size_t dn = d * n;
  require(s.num_vars() == n || s.num_vars() == dn, "S must have n or d*n variables");

  CauchySchwarzStep out;
  out.d = d;
  out.l = l;
  out.m = m;
  const MultiPoly rt = multilinear_form(r).poly();
  const MultiPoly se = s.num_vars() == n ? s.embed(dn, 0) : s;
  std::uint64_t scale = 1;
  for (unsigned k = m; k < l; ++k) scale *= ring.characteristic_prime();
  const MultiPoly t = rt + se.scaled(ring.from_int(static_cast<std::int64_t>(scale)));

  // R~(x_1 + h, x_2..) - R~(x_1, x_2..) with h in fresh variables
  {
    std::vector<MultiPoly> images;
    for (std::size_t v = 0; v < dn; ++v) {
      MultiPoly img = MultiPoly::variable(ring, dn + n, v);
      if (v < n) img += MultiPoly::variable(ring, dn + n, dn + v);
      images.push_back(std::move(img));
    }
    const MultiPoly diff = rt.substitute(images) - rt.embed(dn + n, 0);
    out.shift_invariant = true;
    for (std::size_t v = 0; v < n; ++v) out.shift_invariant = out.shift_invariant && diff.degree_in(v) <= 0;
  }

  const Domain inner(ring, n), outer(ring, dn - n);
  const BigInt total = inner.cardinality() * outer.cardinality();
  if (total > opts.budget) throw BudgetExceeded(total, opts.budget);
  const std::uint64_t ni = inner.checked_size(opts.budget), no = outer.checked_size(opts.budget);
  PhaseSum all(ring.characteristic_prime(), l);
  double rhs = 0;
  Point x(dn);
  for (std::uint64_t o = 0; o < no; ++o) {
    const Point rest = outer.point_at(o);
    std::copy(rest.begin(), rest.end(), x.begin() + static_cast<std::ptrdiff_t>(n));
    PhaseSum part(ring.characteristic_prime(), l);
    for (std::uint64_t i = 0; i < ni; ++i) {
      const Point x1 = inner.point_at(i);
      std::copy(x1.begin(), x1.end(), x.begin());
      const std::uint32_t ph = ring.phase(t.evaluate(x));
      part.add(ph, 1);
      all.add(ph, 1);
    }
    rhs += std::norm(part.value()) / (static_cast<double>(ni) * static_cast<double>(ni));
  }
  out.rhs = rhs / static_cast<double>(no);
  out.lhs = std::abs(all.value()) / (static_cast<double>(ni) * static_cast<double>(no));
  out.inequality_holds = out.lhs * out.lhs <= out.rhs + 1e-9;
  if (!out.inequality_holds) throw InternalError("Cauchy-Schwarz step failed");
  if (!out.shift_invariant) throw InternalError("block difference of the multilinear form depends on the block");
  return out;
}

SingularityReport rational_singularity_check(const MultiPoly& p, const EnumOptions& opts) {
  const Ring& ring = p.ring();
  require_padic(ring);
  SingularityReport rep;
  rep.p = ring.characteristic_prime();
  const int deg = p.degree();
  if (deg >= 0 && static_cast<long>(rep.p) <= deg) {
    throw UnsupportedCharacteristic("point-count criterion needs p > deg P");
  }
  const unsigned mmax = level_of(ring);
  const std::size_t n = p.num_vars();
  require(n >= 1, "need at least one variable");
  const BigInt top = big_pow_u(rep.p, static_cast<unsigned>(mmax * n));
  if (top > opts.budget) throw BudgetExceeded(top, opts.budget);
  for (unsigned m = 1; m <= mmax; ++m) {
    const Ring rm = Ring::prime_power(rep.p, m);
    const MultiPoly pm = p.map_coefficients(rm, [&](Elem c) { return rm.from_int(c); });
    SingularityLevel lv;
    lv.m = m;
    lv.count = scan_fiber(std::span<const MultiPoly>(&pm, 1), Point{0}, opts, 0).count;
    const unsigned e = static_cast<unsigned>(m * (n - 1));
    lv.expected = big_pow_u(rep.p, e);
    lv.deviation = abs(lv.count - lv.expected);
    // deviation <= p^{e - 1/2}  <=>  deviation^2 p <= p^{2e}
    lv.passes = lv.deviation * lv.deviation * rep.p <= big_pow_u(rep.p, 2 * e);
    rep.all_pass = rep.all_pass && lv.passes;
    rep.levels.push_back(std::move(lv));
  }
  return rep;
}

}  // namespace polyrank
