#include "polyrank/nullstellensatz.hpp"

#include <map>

#include "polyrank/linalg.hpp"

namespace polyrank {

namespace {

Elem eval_monomial(const Ring& r, const Exponents& e, const Point& v) {
  Elem acc = r.one();
  for (std::size_t i = 0; i < e.size(); ++i)
    if (e[i] != 0) acc = r.mul(acc, r.pow(v[i], e[i]));
  return acc;
}

void require_field(const PolyCollection& coll) {
  require(coll.ring().is_field(), "ideal membership needs a field");
}

}  // namespace

bool vanishes_on_points(const MultiPoly& q, const PolyCollection& coll, const EnumOptions& opts) {
  require(q.ring() == coll.ring() && q.num_vars() == coll.num_vars(), "Q and the collection live on different spaces");
  const Ring& r = coll.ring();
  const std::size_t c = coll.size();
  std::vector<MultiPoly> polys = coll.polys();
  polys.push_back(q);
  const BigInt codomain = big_pow_u(r.size(), static_cast<unsigned>(c + 1));
  if (codomain <= (1u << 22)) {
    const auto counts = count_values(polys, opts);
    Point t(c + 1, 0);
    for (Elem v = 1; v < r.size(); ++v) {
      t[c] = v;
      if (counts[value_key(r, t)] != 0) return false;
    }
    return true;
  }
  Point t(c + 1, 0);
  for (Elem v = 1; v < r.size(); ++v) {
    t[c] = v;
    if (scan_fiber(polys, t, opts, 0).count != 0) return false;
  }
  return true;
}

bool verify_membership(const MultiPoly& q, const PolyCollection& coll, const MembershipCertificate& cert) {
  if (cert.cofactors.size() != coll.size()) return false;
  MultiPoly acc(coll.ring(), coll.num_vars());
  for (std::size_t i = 0; i < coll.size(); ++i) {
    const MultiPoly& r = cert.cofactors[i];
    if (r.is_zero()) continue;
    if (r.degree() + coll[i].degree() > static_cast<int>(cert.degbound)) return false;
    acc += r * coll[i];
  }
  return acc == q;
}

std::optional<MembershipCertificate> ideal_membership(const MultiPoly& q, const PolyCollection& coll,
                                                      unsigned degbound, const EnumOptions& opts) {
  require_field(coll);
  require(q.ring() == coll.ring() && q.num_vars() == coll.num_vars(), "Q and the collection live on different spaces");
  require(q.is_zero() || q.degree() <= static_cast<int>(degbound),
          "degree bound " + std::to_string(degbound) + " is below deg Q = " + std::to_string(q.degree()));
  const Ring& ring = coll.ring();
  const std::size_t n = coll.num_vars();

  std::map<Exponents, std::size_t> row_of;
  for (const auto& [e, c] : q.terms()) row_of.emplace(e, row_of.size());
  struct Column {
    std::size_t poly;
    Exponents mono;
    std::vector<std::pair<std::size_t, Elem>> entries;
  };
  std::vector<Column> cols;
  Exponents f(n);
  for (std::size_t i = 0; i < coll.size(); ++i) {
    const int d = coll[i].degree();
    if (coll[i].is_zero() || d > static_cast<int>(degbound)) continue;
    for (const auto& m : monomials_up_to(n, static_cast<int>(degbound) - d)) {
      Column col{i, m, {}};
      for (const auto& [e, c] : coll[i].terms()) {
        for (std::size_t k = 0; k < n; ++k) f[k] = static_cast<std::uint16_t>(e[k] + m[k]);
        col.entries.emplace_back(row_of.try_emplace(f, row_of.size()).first->second, c);
      }
      cols.push_back(std::move(col));
    }
  }
  const BigInt size = BigInt(row_of.size()) * BigInt(std::max<std::size_t>(cols.size(), 1));
  if (size > opts.budget) throw BudgetExceeded(size, opts.budget);

  MembershipCertificate cert;
  cert.degbound = degbound;
  cert.cofactors.assign(coll.size(), MultiPoly(ring, n));
  if (cols.empty()) {
    if (!q.is_zero()) return std::nullopt;
    return cert;
  }
  Matrix a(row_of.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [i, c] : cols[j].entries) a.at(i, j) = ring.add(a.at(i, j), c);
  std::vector<Elem> b(row_of.size(), 0);
  for (const auto& [e, c] : q.terms()) b[row_of.at(e)] = c;
  const auto x = solve(ring, a, b);
  if (!x) return std::nullopt;
  for (std::size_t j = 0; j < cols.size(); ++j) cert.cofactors[cols[j].poly].add_term(cols[j].mono, (*x)[j]);
  if (!verify_membership(q, coll, cert)) throw InternalError("membership certificate failed to re-verify");
  return cert;
}

NullstellensatzReport nullstellensatz_probe(const PolyCollection& coll, unsigned a, const ProbeOptions& opts) {
  require_field(coll);
  const Ring& ring = coll.ring();
  const std::uint64_t D = coll.degree_product();
  if (static_cast<BigInt>(a) * D >= ring.size()) {
    throw PreconditionError("hypothesis a < q/D fails: a = " + std::to_string(a) + ", q = " +
                            std::to_string(ring.size()) + ", D = " + std::to_string(D));
  }
  const std::size_t n = coll.num_vars();
  NullstellensatzReport rep;
  rep.a = a;
  const auto monos = monomials_up_to(n, static_cast<int>(a));
  rep.monomials = monos.size();

  const Point zero(coll.size(), 0);
  rep.points = scan_fiber(coll.polys(), zero, opts.enumeration, 0).count;
  const auto pts = scan_fiber(coll.polys(), zero, opts.enumeration, rep.points).points;
  const BigInt size = BigInt(rep.points) * BigInt(monos.size());
  if (size > opts.enumeration.budget) throw BudgetExceeded(size, opts.enumeration.budget);

  // Rows arrive in blocks; the running echelon form never exceeds the
  // monomial count, so memory stays small for large fibers.
  Matrix acc(0, monos.size());
  std::vector<Elem> row(monos.size());
  for (std::size_t k = 0; k < pts.size(); ++k) {
    for (std::size_t j = 0; j < monos.size(); ++j) row[j] = eval_monomial(ring, monos[j], pts[k]);
    acc.append_row(row);
    if (acc.rows() >= 4 * monos.size() + 64 || k + 1 == pts.size()) {
      const Echelon ech = row_reduce(ring, acc);
      Matrix kept(0, monos.size());
      for (std::size_t i = 0; i < ech.rank(); ++i) kept.append_row(ech.reduced.row(i));
      acc = std::move(kept);
    }
  }
  rep.evaluation_rank = acc.rows();
  for (const auto& vec : kernel_basis(ring, acc.rows() == 0 ? Matrix(1, monos.size()) : acc)) {
    MultiPoly qpoly(ring, n);
    for (std::size_t j = 0; j < monos.size(); ++j) qpoly.add_term(monos[j], vec[j]);
    rep.kernel.push_back(std::move(qpoly));
  }
  for (const auto& qpoly : rep.kernel) {
    auto cert = ideal_membership(qpoly, coll, a + opts.extra_degree, opts.enumeration);
    if (cert) ++rep.certified;
    rep.membership.push_back(std::move(cert));
  }
  rep.fraction = rep.kernel.empty() ? 1.0 : static_cast<double>(rep.certified) / static_cast<double>(rep.kernel.size());
  if (opts.with_rank) {
    try {
      rep.rank = collection_rank_bounds(coll, RankOptions{opts.enumeration, 2}).estimate;
    } catch (const Error&) {
      // rank context is optional
    }
  }
  return rep;
}

}  // namespace polyrank
