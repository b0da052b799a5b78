#include "polyrank/harmonic.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "polyrank/linalg.hpp"

namespace polyrank {

namespace {

PhaseSum empty_sum(const Ring& ring) {
  return ring.kind() == RingKind::PrimePower ? PhaseSum(ring.characteristic_prime(), ring.exponent())
                                             : PhaseSum(ring.characteristic_prime(), 1);
}

Elem dot(const Ring& ring, std::span<const Elem> a, std::span<const Elem> t) {
  Elem s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = ring.add(s, ring.mul(a[i], t[i]));
  return s;
}

double log_q(double x, std::uint32_t q) { return std::log(x) / std::log(static_cast<double>(q)); }

BiasValue finish_bias(PhaseSum sum, const BigInt& card, std::uint32_t q) {
  BiasValue b{std::move(sum), card, q, {}, 0.0, false};
  b.exact_zero = b.sum.is_zero();
  const double denom = card.convert_to<double>();
  const auto v = b.sum.value();
  b.value = {v.real() / denom, v.imag() / denom};
  b.magnitude = b.exact_zero ? 0.0 : std::abs(b.value);
  return b;
}

}  // namespace

ValueHistogram value_histogram(const PolyCollection& coll, const EnumOptions& opts) {
  const auto raw = count_values(coll.polys(), opts);
  ValueHistogram h{coll.ring(), coll.size(), coll.num_vars(), {}, Domain(coll.ring(), coll.num_vars()).cardinality()};
  h.counts.reserve(raw.size());
  for (auto v : raw) h.counts.emplace_back(v);
  return h;
}

ValueHistogram value_histogram(const MultiPoly& p, const EnumOptions& opts) {
  return value_histogram(PolyCollection({p}), opts);
}

double BiasValue::analytic_rank() const {
  if (exact_zero) return std::numeric_limits<double>::infinity();
  return std::max(0.0, -log_q(magnitude, q));
}

BiasValue bias(const ValueHistogram& h, std::span<const Elem> a) {
  require(a.size() == h.c, "character vector has wrong length");
  PhaseSum sum = empty_sum(h.ring);
  const Domain codomain(h.ring, h.c);
  for (std::uint64_t key = 0; key < h.counts.size(); ++key) {
    if (h.counts[key] == 0) continue;
    const Point t = codomain.point_at(key);
    sum.add(h.ring.phase(dot(h.ring, a, t)), h.counts[key]);
  }
  return finish_bias(std::move(sum), h.domain_cardinality, h.ring.size());
}

BiasValue bias(const MultiPoly& p, const EnumOptions& opts, Elem a) {
  const Elem av[] = {a};
  return bias(value_histogram(p, opts), av);
}

double analytic_rank(const MultiPoly& p, const EnumOptions& opts) { return bias(p, opts).analytic_rank(); }

// ---------------------------------------------------------------------------

double MultilinearBias::analytic_rank() const {
  if (value == 0) return std::numeric_limits<double>::infinity();
  return std::max(0.0, -log_q(to_double(value), q));
}

namespace {

std::size_t small_rank(const Ring& ring, std::vector<Elem>& m, std::size_t rows, std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(m[piv * cols + j], m[r * cols + j]);
    }
    const Elem inv = ring.neg(ring.inv(m[r * cols + c]));
    for (std::size_t i = r + 1; i < rows; ++i) {
      const Elem f = m[i * cols + c];
      if (f == 0) continue;
      const Elem g = ring.mul(f, inv);
      for (std::size_t j = c; j < cols; ++j) m[i * cols + j] = ring.add(m[i * cols + j], ring.mul(g, m[r * cols + j]));
    }
    ++r;
  }
  return r;
}

struct EntryTerm {
  std::size_t cell;
  Elem coef;
  std::vector<std::uint32_t> vars;  // outer variables, each to the first power
};

}  // namespace

MultilinearBias multilinear_bias(const MultilinearForm& form, const EnumOptions& opts) {
  const Ring& ring = form.ring();
  require(ring.is_field(), "multilinear bias needs a field");
  require(form.is_block_multilinear(), "form is not block-multilinear");
  const unsigned d = form.blocks();
  const std::size_t n = form.block_size();
  MultilinearBias out;
  out.q = ring.size();
  if (d <= 1) {
    out.value = form.poly().is_zero() ? 1 : 0;
    out.rank_counts = {BigInt(1)};
    return out;
  }
  const std::size_t outer_dim = static_cast<std::size_t>(d - 2) * n;
  const std::uint64_t outer_size = Domain(ring, outer_dim).checked_size(opts.budget);

  std::vector<EntryTerm> terms;
  for (const auto& [e, c] : form.poly().terms()) {
    EntryTerm t{0, c, {}};
    std::size_t i = 0, j = 0;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      if (v < outer_dim) t.vars.push_back(static_cast<std::uint32_t>(v));
      else if (v < outer_dim + n) i = v - outer_dim;
      else j = v - outer_dim - n;
    }
    t.cell = i * n + j;
    terms.push_back(std::move(t));
  }

  const unsigned shards = std::max(1u, opts.shards);
  std::vector<std::vector<std::uint64_t>> local(shards, std::vector<std::uint64_t>(n + 1, 0));
  auto work = [&](unsigned s) {
    const auto [lo, hi] = Domain::shard_range(outer_size, Shard{s, shards});
    if (lo >= hi) return;
    const Domain outer(ring, outer_dim);
    Point h = outer.point_at(lo);
    std::vector<Elem> m(n * n);
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      std::fill(m.begin(), m.end(), 0);
      for (const auto& t : terms) {
        Elem v = t.coef;
        for (auto var : t.vars) {
          v = ring.mul(v, h[var]);
          if (v == 0) break;
        }
        if (v != 0) m[t.cell] = ring.add(m[t.cell], v);
      }
      ++local[s][small_rank(ring, m, n, n)];
      for (std::size_t i = h.size(); i-- > 0;) {
        if (++h[i] < ring.size()) break;
        h[i] = 0;
      }
    }
  };
  if (shards == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errs(shards);
    for (unsigned s = 0; s < shards; ++s) {
      threads.emplace_back([&, s] {
        try {
          work(s);
        } catch (...) {
          errs[s] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errs) {
      if (e) std::rethrow_exception(e);
    }
  }

  out.rank_counts.assign(n + 1, BigInt(0));
  for (const auto& l : local) {
    for (std::size_t r = 0; r <= n; ++r) out.rank_counts[r] += l[r];
  }
  Rational acc = 0;
  for (std::size_t r = 0; r <= n; ++r) {
    if (out.rank_counts[r] != 0) acc += Rational(out.rank_counts[r]) * rational_pow(out.q, -static_cast<long>(r));
  }
  out.value = acc / Rational(big_pow_u(out.q, static_cast<unsigned>(outer_dim)));
  return out;
}

// ---------------------------------------------------------------------------

UniformityReport nu_report(ValueHistogram h) {
  UniformityReport rep;
  const std::uint32_t q = h.ring.size();
  const Rational scale(big_pow_u(q, static_cast<unsigned>(h.c)), h.domain_cardinality);
  rep.max_deviation = 0;
  rep.nu.reserve(h.counts.size());
  for (const auto& cnt : h.counts) {
    Rational nu = Rational(cnt) * scale;
    const Rational dev = abs(nu - 1);
    if (dev > rep.max_deviation) rep.max_deviation = dev;
    rep.nu.push_back(std::move(nu));
  }
  if (rep.max_deviation != 0) {
    long s = static_cast<long>(std::floor(-log_q(to_double(rep.max_deviation), q)));
    while (rep.max_deviation > rational_pow(q, -s)) --s;
    while (rep.max_deviation <= rational_pow(q, -(s + 1))) ++s;
    rep.best_s = s;
  }
  rep.histogram = std::move(h);
  return rep;
}

UniformityReport nu_table(const PolyCollection& coll, const EnumOptions& opts) {
  return nu_report(value_histogram(coll, opts));
}

FourierReport fourier_check(const PolyCollection& coll, const EnumOptions& opts) {
  const Ring& ring = coll.ring();
  const std::size_t c = coll.size();
  const BigInt codomain = big_pow_u(ring.size(), static_cast<unsigned>(c));
  require(c <= 4 && codomain <= 10000, "fourier_check needs c <= 4 and q^c <= 10^4");
  const auto width = codomain.convert_to<std::uint64_t>();
  const Domain chars(ring, c);

  UniformityReport nu = nu_table(coll, opts);
  const ValueHistogram& h = nu.histogram;
  const double card = h.domain_cardinality.convert_to<double>();
  FourierReport rep;
  rep.transforms_agree = true;
  std::vector<PhaseSum> poly_sums;
  poly_sums.reserve(width);

  for (std::uint64_t ak = 0; ak < width; ++ak) {
    const Point a = chars.point_at(ak);
    const PhaseSum from_nu = bias(h, a).sum;
    const MultiPoly pa = coll.combination(a);
    const auto direct = count_values(std::span<const MultiPoly>(&pa, 1), opts);
    PhaseSum from_poly = empty_sum(ring);
    for (std::uint64_t u = 0; u < direct.size(); ++u) {
      if (direct[u] != 0) from_poly.add(ring.phase(static_cast<Elem>(u)), BigInt(direct[u]));
    }
    FourierEntry e;
    e.a = a;
    const auto vn = from_nu.value(), vp = from_poly.value();
    e.from_nu = {vn.real() / card, vn.imag() / card};
    e.from_poly = {vp.real() / card, vp.imag() / card};
    e.exact_match = from_nu.canonical() == from_poly.canonical();
    const double gap = std::abs(e.from_nu - e.from_poly);
    rep.max_transform_gap = std::max(rep.max_transform_gap, gap);
    rep.transforms_agree = rep.transforms_agree && e.exact_match && gap <= 1e-9;
    if (ak != 0) {
      const double mag = from_poly.is_zero() ? 0.0 : std::abs(e.from_poly);
      rep.deviation_bound += mag;
      rep.max_nontrivial_bias = std::max(rep.max_nontrivial_bias, mag);
    }
    rep.entries.push_back(std::move(e));
    poly_sums.push_back(std::move(from_poly));
  }

  // sum_a psi(-<a,t>) sum_v psi(P_a(v)) = q^c N_t, as an identity in Z[zeta]
  rep.reconstruction_exact = true;
  const std::uint32_t modulus = poly_sums.front().modulus();
  for (std::uint64_t tk = 0; tk < width && rep.reconstruction_exact; ++tk) {
    const Point t = chars.point_at(tk);
    PhaseSum acc = empty_sum(ring);
    for (std::uint64_t ak = 0; ak < width; ++ak) {
      const Point a = chars.point_at(ak);
      const std::uint32_t rot = (modulus - ring.phase(dot(ring, a, t))) % modulus;
      const auto& cs = poly_sums[ak].counts();
      for (std::uint32_t j = 0; j < modulus; ++j) {
        if (cs[j] != 0) acc.add(j + rot, cs[j]);
      }
    }
    BigInt value;
    rep.reconstruction_exact = acc.is_integer(&value) && value == h.counts[tk] * codomain;
  }

  rep.deviation = nu.max_deviation;
  const double dev = to_double(rep.deviation);
  rep.deviation_bound_holds = dev <= rep.deviation_bound + 1e-9;
  rep.equidistribution_holds = dev <= codomain.convert_to<double>() * rep.max_nontrivial_bias + 1e-9;
  if (!rep.transforms_agree) throw InternalError("Fourier transform computed two ways disagrees");
  if (!rep.reconstruction_exact) throw InternalError("Fourier inversion failed to reconstruct nu exactly");
  return rep;
}

// ---------------------------------------------------------------------------

GowersValue gowers_norm(const MultiPoly& p, unsigned m, const EnumOptions& opts) {
  require(m >= 1, "Gowers norm order must be >= 1");
  const MultiPoly diff = iterated_difference(p, m);
  const auto counts = count_values(std::span<const MultiPoly>(&diff, 1), opts);
  GowersValue g{empty_sum(p.ring()), Domain(p.ring(), diff.num_vars()).cardinality(), 0, 0};
  for (std::uint64_t u = 0; u < counts.size(); ++u) {
    if (counts[u] != 0) g.sum.add(p.ring().phase(static_cast<Elem>(u)), BigInt(counts[u]));
  }
  const auto v = g.sum.value();
  const double denom = g.points.convert_to<double>();
  const double re = v.real() / denom, im = v.imag() / denom;
  if (re < -1e-9 || std::abs(im) > 1e-9) {
    throw InternalError("Gowers average is not a non-negative real (" + std::to_string(re) + ", " +
                        std::to_string(im) + ")");
  }
  g.average = std::max(0.0, re);
  g.norm = std::pow(g.average, 1.0 / static_cast<double>(1u << m));
  return g;
}

}  // namespace polyrank
