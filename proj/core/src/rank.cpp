#include "polyrank/rank.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <random>

#include "polyrank/harmonic.hpp"
#include "polyrank/linalg.hpp"

namespace polyrank {

MultiPoly Decomposition::expand(const Ring& ring, std::size_t n) const {
  MultiPoly acc(ring, n);
  for (const auto& [q, r] : pairs) acc += q * r;
  return acc;
}

std::string Decomposition::to_string() const {
  if (pairs.empty()) return "0";
  std::string out;
  for (const auto& [q, r] : pairs) {
    if (!out.empty()) out += " + ";
    out += "(" + q.to_string() + ")*(" + r.to_string() + ")";
  }
  return out;
}

bool verify_decomposition(const MultiPoly& p, const Decomposition& d) {
  const int deg = p.degree();
  for (const auto& [q, r] : d.pairs) {
    if (!(q.ring() == p.ring()) || !(r.ring() == p.ring())) return false;
    if (q.num_vars() != p.num_vars() || r.num_vars() != p.num_vars()) return false;
    if (q.degree() >= deg || r.degree() >= deg) return false;
  }
  return d.expand(p.ring(), p.num_vars()) == p;
}

std::string to_string(LowerSource s) {
  switch (s) {
    case LowerSource::Trivial: return "trivial";
    case LowerSource::Analytic: return "analytic";
    case LowerSource::GramMatrix: return "gram-matrix";
    case LowerSource::Exhaustive: return "exhaustive";
    case LowerSource::Convention: return "convention";
  }
  return "?";
}

std::string to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::NoneFound: return "none-found";
    case SearchStatus::ProvenImpossible: return "proven-impossible";
  }
  return "?";
}

unsigned RankEstimate::lower_int() const {
  if (std::isinf(lower)) return std::numeric_limits<unsigned>::max();
  return static_cast<unsigned>(std::ceil(lower - 1e-9));
}

void RankEstimate::offer_lower(double value, LowerSource src) {
  if (value > lower + 1e-12) {
    lower = value;
    lower_source = src;
  }
}

void RankEstimate::offer_upper(const MultiPoly& p, Decomposition d) {
  if (!verify_decomposition(p, d)) throw InternalError("decomposition failed verification: " + d.to_string());
  if (!upper || d.size() < *upper) {
    upper = static_cast<unsigned>(d.size());
    certificate = std::move(d);
  }
}

namespace {

// ---------------------------------------------------------------------------
// Quadratics in odd characteristic

using Vec = std::vector<Elem>;

Vec vec_scale(const Ring& r, const Vec& v, Elem c) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = r.mul(v[i], c);
  return out;
}

Vec vec_axpy(const Ring& r, const Vec& x, Elem a, const Vec& y) {  // x + a*y
  Vec out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = r.add(x[i], r.mul(a, y[i]));
  return out;
}

// Square roots by table; desk-scale fields only.
class SqrtTable {
 public:
  explicit SqrtTable(const Ring& r) : root_(r.size(), kNone) {
    for (Elem x = 0; x < r.size(); ++x) {
      const Elem s = r.mul(x, x);
      if (root_[s] == kNone) root_[s] = x;
    }
  }
  bool is_square(Elem a) const { return root_[a] != kNone; }
  Elem root(Elem a) const { return root_[a]; }

 private:
  static constexpr Elem kNone = 0xffffffffu;
  std::vector<Elem> root_;
};

// Linear form in (x_1..x_n, x_0) -> affine polynomial with x_0 = 1.
MultiPoly dehomogenize(const Ring& r, const Vec& form) {
  const std::size_t n = form.size() - 1;
  return MultiPoly::affine(r, std::span<const Elem>(form.data(), n), form[n]);
}

struct QuadraticAnalysis {
  std::size_t top_gram_rank = 0;
  std::size_t gram_rank = 0;   // of the homogenized form
  unsigned witt_lower = 0;     // gram_rank - Witt index
  Decomposition certificate;
};

QuadraticAnalysis analyze_odd_quadratic(const MultiPoly& p) {
  const Ring& r = p.ring();
  const std::size_t n = p.num_vars();
  const std::size_t N = n + 1;
  const Elem half = r.inv(r.from_int(2));
  Matrix g(N, N);
  for (const auto& [e, c] : p.terms()) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      for (unsigned k = 0; k < e[i]; ++k) idx.push_back(i);
    while (idx.size() < 2) idx.push_back(n);  // pad with x_0
    const std::size_t i = idx[0], j = idx[1];
    if (i == j) {
      g.at(i, i) = r.add(g.at(i, i), c);
    } else {
      const Elem hc = r.mul(c, half);
      g.at(i, j) = r.add(g.at(i, j), hc);
      g.at(j, i) = r.add(g.at(j, i), hc);
    }
  }

  QuadraticAnalysis out;
  {
    Matrix top(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) top.at(i, j) = g.at(i, j);
    out.top_gram_rank = matrix_rank(r, top);
  }
  out.gram_rank = matrix_rank(r, g);

  // Congruence reduction: q = sum c_i l_i^2 + sum (2/g) a_k b_k.
  std::vector<std::pair<Elem, Vec>> squares;
  std::vector<std::pair<Vec, Vec>> products;
  auto row = [&](std::size_t i) { return Vec(g.row(i).begin(), g.row(i).end()); };
  for (;;) {
    std::size_t di = N;
    for (std::size_t i = 0; i < N && di == N; ++i)
      if (g.at(i, i) != 0) di = i;
    if (di < N) {
      const Vec l = row(di);
      const Elem inv = r.inv(g.at(di, di));
      for (std::size_t a = 0; a < N; ++a)
        for (std::size_t b = 0; b < N; ++b) g.at(a, b) = r.sub(g.at(a, b), r.mul(inv, r.mul(l[a], l[b])));
      squares.emplace_back(inv, l);
      continue;
    }
    std::size_t pi = N, pj = N;
    for (std::size_t i = 0; i < N && pi == N; ++i)
      for (std::size_t j = i + 1; j < N; ++j)
        if (g.at(i, j) != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi == N) break;
    const Vec a = row(pi), b = row(pj);
    const Elem ginv = r.inv(g.at(pi, pj));
    for (std::size_t x = 0; x < N; ++x)
      for (std::size_t y = 0; y < N; ++y)
        g.at(x, y) = r.sub(g.at(x, y), r.mul(ginv, r.add(r.mul(a[x], b[y]), r.mul(b[x], a[y]))));
    products.emplace_back(vec_scale(r, a, r.add(ginv, ginv)), b);
  }
  if (squares.size() + 2 * products.size() != out.gram_rank) throw InternalError("Gram reduction lost rank");

  // Witt index of the diagonal part from its discriminant.
  const SqrtTable roots(r);
  const std::size_t s = squares.size();
  unsigned witt = static_cast<unsigned>(products.size());
  if (s % 2 == 1) {
    witt += static_cast<unsigned>(s / 2);
  } else if (s > 0) {
    Elem disc = (s / 2) % 2 == 1 ? r.neg(r.one()) : r.one();
    for (const auto& sq : squares) disc = r.mul(disc, sq.first);
    witt += static_cast<unsigned>(roots.is_square(disc) ? s / 2 : s / 2 - 1);
  }
  out.witt_lower = static_cast<unsigned>(out.gram_rank) - witt;

  // Pair the squares into hyperbolic planes.
  for (auto& [a, b] : products) out.certificate.pairs.emplace_back(dehomogenize(r, a), dehomogenize(r, b));
  auto emit_plane = [&](Elem c, const Vec& u, Elem gamma, const Vec& v) {
    // c u^2 - c gamma^2 v^2 = c (u - gamma v)(u + gamma v)
    out.certificate.pairs.emplace_back(dehomogenize(r, vec_scale(r, vec_axpy(r, u, r.neg(gamma), v), c)),
                                       dehomogenize(r, vec_axpy(r, u, gamma, v)));
  };
  for (;;) {
    bool paired = false;
    for (std::size_t i = 0; i < squares.size() && !paired; ++i) {
      for (std::size_t j = i + 1; j < squares.size() && !paired; ++j) {
        const Elem ratio = r.mul(r.neg(squares[j].first), r.inv(squares[i].first));
        if (!roots.is_square(ratio)) continue;
        emit_plane(squares[i].first, squares[i].second, roots.root(ratio), squares[j].second);
        squares.erase(squares.begin() + static_cast<std::ptrdiff_t>(j));
        squares.erase(squares.begin() + static_cast<std::ptrdiff_t>(i));
        paired = true;
      }
    }
    if (paired) continue;
    if (squares.size() < 3) break;
    // c1 u1^2 + c2 u2^2 = e alpha^2 + c1 c2 e beta^2 with e = c1 a^2 + c2 b^2 = -c3
    const auto [c1, u1] = squares[0];
    const auto [c2, u2] = squares[1];
    const auto [c3, u3] = squares[2];
    const Elem e = r.neg(c3);
    Elem fa = 0, fb = 0;
    bool ok = false;
    for (Elem a = 0; a < r.size() && !ok; ++a) {
      const Elem rest = r.mul(r.sub(e, r.mul(c1, r.mul(a, a))), r.inv(c2));
      if (roots.is_square(rest)) {
        fa = a;
        fb = roots.root(rest);
        ok = true;
      }
    }
    if (!ok) throw InternalError("binary form failed to represent a nonzero value");
    const Elem einv = r.inv(e);
    const Vec alpha = vec_scale(r, vec_axpy(r, vec_scale(r, u1, r.mul(c1, fa)), r.mul(c2, fb), u2), einv);
    const Vec beta = vec_scale(r, vec_axpy(r, vec_scale(r, u2, fa), r.neg(fb), u1), einv);
    emit_plane(e, alpha, r.one(), u3);
    squares.erase(squares.begin(), squares.begin() + 3);
    squares.emplace_back(r.mul(r.mul(c1, c2), e), beta);
  }
  for (const auto& [c, u] : squares) out.certificate.pairs.emplace_back(dehomogenize(r, vec_scale(r, u, c)), dehomogenize(r, u));
  return out;
}

// ---------------------------------------------------------------------------
// Linear peeling

struct LinearForm {
  Vec coeffs;       // over x_1..x_n, leading nonzero coefficient is 1
  Elem constant = 0;
  std::size_t lead = 0;
};

MultiPoly to_poly(const Ring& r, const LinearForm& l) { return MultiPoly::affine(r, l.coeffs, l.constant); }

// P = L * quot + rem with rem free of x_lead.
std::pair<MultiPoly, MultiPoly> divide_by_linear(const MultiPoly& p, const LinearForm& l) {
  const Ring& r = p.ring();
  const std::size_t n = p.num_vars();
  const std::size_t j = l.lead;
  // s = L - x_j, so x_j = -s on {L = 0}
  Vec sc = l.coeffs;
  sc[j] = 0;
  const MultiPoly s = MultiPoly::affine(r, sc, l.constant);
  const int m = std::max(p.degree_in(j), 0);
  std::vector<MultiPoly> c(static_cast<std::size_t>(m) + 1, MultiPoly(r, n));
  for (const auto& [e, v] : p.terms()) {
    Exponents f = e;
    f[j] = 0;
    c[e[j]].add_term(f, v);
  }
  // synthetic division by (x_j + s)
  MultiPoly quot(r, n);
  MultiPoly carry(r, n);
  Exponents xj(n, 0);
  xj[j] = 1;
  const MultiPoly xvar = MultiPoly::variable(r, n, j);
  for (int k = m; k >= 1; --k) {
    carry = c[static_cast<std::size_t>(k)] - s * carry;
    quot = quot * xvar + carry;
  }
  MultiPoly rem = c[0] - s * carry;
  if (m == 0) rem = c[0];
  return {std::move(quot), std::move(rem)};
}

std::vector<LinearForm> greedy_candidates(const Ring& r, std::size_t n) {
  std::vector<LinearForm> out;
  const double full = std::pow(static_cast<double>(r.size()), static_cast<double>(n + 1));
  if (full <= 4096) {
    // every normalized affine form
    for (std::size_t lead = 0; lead < n; ++lead) {
      const std::uint64_t tail = Domain(r, n - lead - 1).checked_size(~std::uint64_t{0});
      for (std::uint64_t t = 0; t < tail; ++t) {
        const Point tp = Domain(r, n - lead - 1).point_at(t);
        for (Elem c = 0; c < r.size(); ++c) {
          LinearForm l{Vec(n, 0), c, lead};
          l.coeffs[lead] = 1;
          for (std::size_t k = 0; k < tp.size(); ++k) l.coeffs[lead + 1 + k] = tp[k];
          out.push_back(std::move(l));
        }
      }
    }
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (Elem c = 0; c < r.size() && c < 64; ++c) {
      LinearForm l{Vec(n, 0), c, i};
      l.coeffs[i] = 1;
      out.push_back(std::move(l));
    }
  }
  if (n <= 64) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        for (Elem a = 1; a < r.size() && a < 16; ++a) {
          LinearForm l{Vec(n, 0), 0, i};
          l.coeffs[i] = 1;
          l.coeffs[j] = a;
          out.push_back(std::move(l));
        }
  }
  return out;
}

std::tuple<int, std::size_t, std::size_t> peel_score(const MultiPoly& rem, int d) {
  const int deg = rem.degree();
  return {deg, deg >= d ? rem.homogeneous_part(deg).num_terms() : 0, rem.num_terms()};
}

std::optional<Decomposition> greedy_peel(const MultiPoly& p, unsigned limit, std::uint64_t work_budget) {
  const Ring& r = p.ring();
  const int d = p.degree();
  const auto cands = greedy_candidates(r, p.num_vars());
  Decomposition out;
  MultiPoly cur = p;
  std::uint64_t work = 0;
  while (!cur.is_zero()) {
    if (cur.degree() < d) {
      out.pairs.emplace_back(cur, MultiPoly::constant(r, p.num_vars(), r.one()));
      break;
    }
    if (out.size() >= limit) return std::nullopt;
    std::optional<std::pair<MultiPoly, MultiPoly>> best;
    std::tuple<int, std::size_t, std::size_t> best_score{std::numeric_limits<int>::max(), 0, 0};
    const LinearForm* best_l = nullptr;
    for (const auto& l : cands) {
      if (cur.degree_in(l.lead) <= 0) continue;
      work += cur.num_terms();
      if (work > work_budget) return std::nullopt;
      auto qr = divide_by_linear(cur, l);
      const auto score = peel_score(qr.second, d);
      if (score < best_score) {
        best_score = score;
        best = std::move(qr);
        best_l = &l;
        if (std::get<0>(score) == kZeroDegree) break;
      }
    }
    if (!best) return std::nullopt;
    out.pairs.emplace_back(to_poly(r, *best_l), best->first);
    cur = best->second;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Exhaustive stage

double count_normalized(std::uint32_t q, std::size_t m) {
  return (std::pow(static_cast<double>(q), static_cast<double>(m)) - 1) / (q - 1);
}

// Normalized polynomials (first nonzero coefficient 1) over the monomial list,
// restricted to degree >= min_deg.
std::vector<MultiPoly> normalized_candidates(const Ring& r, std::size_t n, const std::vector<Exponents>& monos,
                                             int min_deg) {
  std::vector<MultiPoly> out;
  const std::size_t m = monos.size();
  for (std::size_t lead = 0; lead < m; ++lead) {
    const Domain tail(r, m - lead - 1);
    const std::uint64_t size = tail.checked_size(~std::uint64_t{0});
    for (std::uint64_t t = 0; t < size; ++t) {
      const Point tp = tail.point_at(t);
      MultiPoly q(r, n);
      q.add_term(monos[lead], r.one());
      for (std::size_t k = 0; k < tp.size(); ++k) q.add_term(monos[lead + 1 + k], tp[k]);
      if (q.degree() >= min_deg) out.push_back(std::move(q));
    }
  }
  return out;
}

double binom(double n, unsigned k) {
  double v = 1;
  for (unsigned i = 0; i < k; ++i) v = v * (n - i) / (i + 1);
  return v;
}

// Solves P = sum Q_i R_i with deg R_i <= d - 1.
std::optional<Decomposition> solve_with_factors(const MultiPoly& p, const std::vector<const MultiPoly*>& qs,
                                                const std::vector<Exponents>& r_monos) {
  const Ring& r = p.ring();
  const std::size_t n = p.num_vars();
  std::map<Exponents, std::size_t> row_of;
  for (const auto& [e, c] : p.terms()) row_of.emplace(e, row_of.size());
  std::vector<std::vector<std::pair<std::size_t, Elem>>> cols;
  Exponents f(n);
  for (const MultiPoly* q : qs) {
    for (const auto& m : r_monos) {
      std::vector<std::pair<std::size_t, Elem>> col;
      for (const auto& [e, c] : q->terms()) {
        for (std::size_t i = 0; i < n; ++i) f[i] = static_cast<std::uint16_t>(e[i] + m[i]);
        auto it = row_of.try_emplace(f, row_of.size()).first;
        col.emplace_back(it->second, c);
      }
      cols.push_back(std::move(col));
    }
  }
  Matrix a(row_of.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [i, c] : cols[j]) a.at(i, j) = r.add(a.at(i, j), c);
  std::vector<Elem> b(row_of.size(), 0);
  for (const auto& [e, c] : p.terms()) b[row_of.at(e)] = c;
  const auto x = solve(r, a, b);
  if (!x) return std::nullopt;
  Decomposition d;
  std::size_t k = 0;
  for (const MultiPoly* q : qs) {
    MultiPoly rp(r, n);
    for (const auto& m : r_monos) rp.add_term(m, (*x)[k++]);
    if (!rp.is_zero()) d.pairs.emplace_back(*q, std::move(rp));
  }
  return d;
}

struct ExhaustiveOutcome {
  bool completed = false;
  std::optional<Decomposition> found;
};

// Tries every set of r normalized factors; `completed` is false when the
// work estimate exceeds the budget.
ExhaustiveOutcome exhaustive_rank(const MultiPoly& p, unsigned r, std::uint64_t work_budget) {
  const Ring& ring = p.ring();
  const std::size_t n = p.num_vars();
  const int d = p.degree();
  ExhaustiveOutcome out;
  const int qdeg = r == 1 ? d / 2 : d - 1;
  const auto q_monos = monomials_up_to(n, qdeg);
  const auto r_monos = monomials_up_to(n, d - 1);
  const double k = count_normalized(ring.size(), q_monos.size());
  const double tuples = binom(k, r);
  const double rows = static_cast<double>(monomials_up_to(n, std::min(2 * d - 2, qdeg + d - 1)).size());
  const double work = tuples * rows * static_cast<double>(r * r_monos.size());
  if (!std::isfinite(work) || work > static_cast<double>(work_budget) || k > 2e6) return out;

  if (r == 1 && qdeg == 1) {
    // trial division by every normalized affine form
    for (std::size_t lead = 0; lead < n; ++lead) {
      const Domain tail(ring, n - lead - 1);
      const std::uint64_t size = tail.checked_size(~std::uint64_t{0});
      for (std::uint64_t t = 0; t < size; ++t) {
        const Point tp = tail.point_at(t);
        for (Elem c = 0; c < ring.size(); ++c) {
          LinearForm l{Vec(n, 0), c, lead};
          l.coeffs[lead] = 1;
          for (std::size_t i = 0; i < tp.size(); ++i) l.coeffs[lead + 1 + i] = tp[i];
          if (p.degree_in(lead) <= 0) continue;
          auto [quot, rem] = divide_by_linear(p, l);
          if (rem.is_zero()) {
            Decomposition dec;
            dec.pairs.emplace_back(to_poly(ring, l), std::move(quot));
            out.found = std::move(dec);
            out.completed = true;
            return out;
          }
        }
      }
    }
    out.completed = true;
    return out;
  }

  const auto cands = normalized_candidates(ring, n, q_monos, r == 1 ? 1 : 0);
  std::vector<std::size_t> idx(r);
  for (unsigned i = 0; i < r; ++i) idx[i] = i;
  if (cands.size() < r) {
    out.completed = true;
    return out;
  }
  std::vector<const MultiPoly*> qs(r);
  for (;;) {
    for (unsigned i = 0; i < r; ++i) qs[i] = &cands[idx[i]];
    if (auto dec = solve_with_factors(p, qs, r_monos)) {
      out.found = std::move(dec);
      out.completed = true;
      return out;
    }
    // next r-subset in lexicographic order
    int i = static_cast<int>(r) - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == cands.size() - r + static_cast<std::size_t>(i)) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
  }
  out.completed = true;
  return out;
}

constexpr std::uint64_t kWorkFactor = 64;

}  // namespace

// ---------------------------------------------------------------------------

SearchResult decomposition_search(const MultiPoly& p, unsigned max_r, const EnumOptions& opts) {
  SearchResult res;
  const int d = p.degree();
  if (p.is_zero()) {
    res.status = SearchStatus::Found;
    res.decomposition = Decomposition{};
    res.best_known = Decomposition{};
    res.stage = "trivial";
    return res;
  }
  if (d <= 1) {
    // factors of degree < 1 are constants; no product of them has degree 1
    res.status = SearchStatus::ProvenImpossible;
    res.proven_lower = std::numeric_limits<unsigned>::max();
    res.stage = "trivial";
    return res;
  }
  require(p.ring().is_field(), "decomposition search needs a field");
  const std::uint64_t work_budget = opts.budget * kWorkFactor;

  auto consider = [&](Decomposition dec, const std::string& stage) {
    if (!verify_decomposition(p, dec)) throw InternalError(stage + " produced an invalid decomposition");
    if (!res.best_known || dec.size() < res.best_known->size()) {
      res.best_known = dec;
      if (dec.size() <= max_r && (!res.decomposition || dec.size() < res.decomposition->size())) {
        res.decomposition = std::move(dec);
        res.stage = stage;
      }
    }
  };

  unsigned gram_lower = 0;
  if (d == 2 && p.ring().characteristic_prime() != 2) {
    auto qa = analyze_odd_quadratic(p);
    consider(std::move(qa.certificate), "gram-matrix");
    res.proven_lower = gram_lower = qa.witt_lower;
  }
  if (auto g = greedy_peel(p, std::max(max_r, 64u), work_budget)) consider(std::move(*g), "greedy-peel");

  unsigned proven = std::max(res.proven_lower, 1u);
  bool exhausted = true;
  for (unsigned r = proven; r <= max_r; ++r) {
    if (res.best_known && res.best_known->size() <= r) break;
    const auto ex = exhaustive_rank(p, r, work_budget);
    if (!ex.completed) {
      exhausted = false;
      break;
    }
    if (ex.found) {
      consider(*ex.found, "exhaustive");
      break;
    }
    proven = r + 1;
  }
  res.proven_lower = std::max(res.proven_lower, proven);
  if (res.decomposition) {
    res.status = SearchStatus::Found;
  } else if (exhausted && res.proven_lower > max_r) {
    res.status = SearchStatus::ProvenImpossible;
    res.stage = gram_lower > max_r ? "gram-matrix" : "exhaustive";
  } else {
    res.status = SearchStatus::NoneFound;
    if (res.stage.empty()) res.stage = "budget";
  }
  return res;
}

RankEstimate quadratic_rank(const MultiPoly& p, const RankOptions& opts) {
  require(p.degree() == 2, "quadratic_rank needs a polynomial of degree 2");
  require(p.ring().is_field(), "quadratic_rank needs a field");
  RankEstimate est;
  est.offer_lower(1, LowerSource::Trivial);
  if (p.ring().characteristic_prime() != 2) {
    auto qa = analyze_odd_quadratic(p);
    est.offer_lower(std::ceil(static_cast<double>(qa.top_gram_rank) / 2.0), LowerSource::GramMatrix);
    est.offer_lower(qa.witt_lower, LowerSource::GramMatrix);
    est.offer_upper(p, std::move(qa.certificate));
    est.note = "top-form Gram rank " + std::to_string(qa.top_gram_rank) + ", homogenized Gram rank " +
               std::to_string(qa.gram_rank);
    return est;
  }
  // characteristic 2: the polar form B(h1,h2) = P~ has even rank 2k and r >= k
  const MultilinearForm polar = multilinear_form(p);
  Matrix b(p.num_vars(), p.num_vars());
  for (const auto& [e, c] : polar.poly().terms()) {
    std::size_t i = 0, j = 0;
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      if (v < p.num_vars()) i = v;
      else j = v - p.num_vars();
    }
    b.at(i, j) = p.ring().add(b.at(i, j), c);
  }
  const std::size_t brank = matrix_rank(p.ring(), b);
  est.offer_lower(static_cast<double>(brank) / 2.0, LowerSource::GramMatrix);
  const auto search = decomposition_search(p, opts.max_r, opts.enumeration);
  if (search.best_known) est.offer_upper(p, *search.best_known);
  est.offer_lower(search.proven_lower, LowerSource::Exhaustive);
  est.note = "polar form rank " + std::to_string(brank);
  return est;
}

RankEstimate multilinear_rank_bounds(const MultilinearForm& form, const RankOptions& opts) {
  RankEstimate est;
  const MultiPoly& t = form.poly();
  if (t.is_zero()) {
    est.upper = 0;
    est.certificate = Decomposition{};
    est.note = "zero form";
    return est;
  }
  if (form.blocks() <= 1) {
    est.lower = est.upper.emplace(0);
    est.lower_source = LowerSource::Convention;
    est.note = "degenerate: a linear form; rank 0 by convention";
    return est;
  }
  est.offer_lower(1, LowerSource::Trivial);
  try {
    const auto mb = multilinear_bias(form, opts.enumeration);
    est.offer_lower(mb.analytic_rank(), LowerSource::Analytic);
  } catch (const BudgetExceeded&) {
    est.note = "analytic bound skipped: budget";
  }
  const auto search = decomposition_search(t, opts.max_r, opts.enumeration);
  if (search.best_known) est.offer_upper(t, *search.best_known);
  est.offer_lower(search.proven_lower, LowerSource::Exhaustive);
  return est;
}

RankEstimate nc_rank_bounds(const MultiPoly& p, const RankOptions& opts) {
  if (p.degree() <= 0) {
    RankEstimate est;
    est.lower = est.upper.emplace(0);
    est.lower_source = LowerSource::Convention;
    est.note = "constant polynomial";
    return est;
  }
  return multilinear_rank_bounds(multilinear_form(p), opts);
}

RankEstimate schmidt_rank_bounds(const MultiPoly& p, const RankOptions& opts) {
  RankEstimate est;
  const int d = p.degree();
  if (p.is_zero()) {
    est.upper = 0;
    est.certificate = Decomposition{};
    return est;
  }
  if (d <= 1) {
    est.lower = est.upper.emplace(1);
    est.lower_source = LowerSource::Convention;
    est.note = "degree <= 1: rank 1 by convention";
    return est;
  }
  if (d == 2 && p.ring().is_field() && p.ring().characteristic_prime() != 2) return quadratic_rank(p, opts);
  est.offer_lower(1, LowerSource::Trivial);
  // a(P~) <= prank(P~) <= (2^d - 2) r(P)
  try {
    const auto mb = multilinear_bias(multilinear_form(p), opts.enumeration);
    const double a = mb.analytic_rank();
    est.offer_lower(a / static_cast<double>((1u << d) - 2), LowerSource::Analytic);
  } catch (const BudgetExceeded&) {
    est.note = "analytic bound skipped: budget";
  }
  const auto search = decomposition_search(p, opts.max_r, opts.enumeration);
  if (search.best_known) est.offer_upper(p, *search.best_known);
  est.offer_lower(search.proven_lower, LowerSource::Exhaustive);
  return est;
}

CollectionRank collection_rank_bounds(const PolyCollection& coll, const RankOptions& opts) {
  const Ring& ring = coll.ring();
  const BigInt width = big_pow_u(ring.size(), static_cast<unsigned>(coll.size()));
  require(width <= 10000, "collection rank needs q^c <= 10^4");
  const Domain combos(ring, coll.size());
  std::optional<CollectionRank> best;
  double min_lower = std::numeric_limits<double>::infinity();
  LowerSource min_source = LowerSource::Trivial;
  for (std::uint64_t k = 1; k < width; ++k) {
    const Point a = combos.point_at(k);
    MultiPoly pa = coll.combination(a);
    RankEstimate est = schmidt_rank_bounds(pa, opts);
    if (est.lower < min_lower) {
      min_lower = est.lower;
      min_source = est.lower_source;
    }
    const auto key = [](const RankEstimate& e) {
      return std::make_pair(e.upper ? *e.upper : std::numeric_limits<unsigned>::max(), e.lower);
    };
    if (!best || key(est) < key(best->estimate)) best = CollectionRank{std::move(est), a, std::move(pa)};
  }
  if (!best) throw PreconditionError("collection has no nonzero combinations");
  best->estimate.lower = min_lower;
  best->estimate.lower_source = min_source;
  return *best;
}

double collection_analytic_rank(const PolyCollection& coll, const EnumOptions& opts) {
  const BigInt width = big_pow_u(coll.ring().size(), static_cast<unsigned>(coll.size()));
  require(width <= 10000, "collection analytic rank needs q^c <= 10^4");
  const auto h = value_histogram(coll, opts);
  const Domain combos(coll.ring(), coll.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t k = 1; k < width; ++k) best = std::min(best, bias(h, combos.point_at(k)).analytic_rank());
  return best;
}

EnrichmentResult derivative_enrichment_search(const PolyCollection& coll, unsigned trials, const EnumOptions& opts,
                                              std::uint64_t seed) {
  require(trials > 0, "derivative enrichment needs at least one trial");
  const Ring& ring = coll.ring();
  const int maxd = coll.max_degree();
  if (static_cast<long>(ring.characteristic_prime()) <= maxd) {
    throw UnsupportedCharacteristic("derivative enrichment needs characteristic > max degree");
  }
  const std::size_t n = coll.num_vars();
  std::mt19937_64 gen(seed);
  std::optional<EnrichmentResult> best;
  for (unsigned t = 0; t < trials; ++t) {
    std::vector<Point> vs, ws;
    std::vector<MultiPoly> ext = coll.polys();
    for (std::size_t i = 0; i < coll.size(); ++i) {
      Point v(n), w(n);
      for (auto& x : v) x = static_cast<Elem>(gen() % ring.size());
      for (auto& x : w) x = static_cast<Elem>(gen() % ring.size());
      ext.push_back(directional_derivative(coll[i], v));
      ext.push_back(directional_derivative(coll[i], w));
      vs.push_back(std::move(v));
      ws.push_back(std::move(w));
    }
    PolyCollection extended(std::move(ext));
    RankEstimate est;
    est.lower = collection_analytic_rank(extended, opts);
    est.lower_source = LowerSource::Analytic;
    est.note = "min analytic rank over nonzero combinations of the extended collection";
    if (!best || est.lower > best->estimate.lower) {
      best = EnrichmentResult{std::move(vs), std::move(ws), std::move(extended), std::move(est)};
    }
  }
  return std::move(*best);
}

}  // namespace polyrank
