#include "polyrank/poly.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace polyrank {

namespace {

void require_same_space(const MultiPoly& a, const MultiPoly& b) {
  if (a.num_vars() != b.num_vars() || !(a.ring() == b.ring())) {
    throw PreconditionError("polynomials live over different rings or variable counts");
  }
}

}  // namespace

MultiPoly MultiPoly::constant(const Ring& ring, std::size_t n, Elem c) {
  MultiPoly p(ring, n);
  p.add_term(Exponents(n, 0), c);
  return p;
}

MultiPoly MultiPoly::variable(const Ring& ring, std::size_t n, std::size_t i) {
  if (i >= n) throw PreconditionError("variable index out of range");
  MultiPoly p(ring, n);
  Exponents e(n, 0);
  e[i] = 1;
  p.add_term(e, ring.one());
  return p;
}

MultiPoly MultiPoly::affine(const Ring& ring, std::span<const Elem> coeffs, Elem c0) {
  const std::size_t n = coeffs.size();
  MultiPoly p(ring, n);
  p.add_term(Exponents(n, 0), c0);
  for (std::size_t i = 0; i < n; ++i) {
    Exponents e(n, 0);
    e[i] = 1;
    p.add_term(e, coeffs[i]);
  }
  return p;
}

int MultiPoly::degree() const noexcept {
  int d = kZeroDegree;
  for (const auto& [e, c] : terms_) {
    d = std::max(d, static_cast<int>(std::accumulate(e.begin(), e.end(), 0u)));
  }
  return d;
}

int MultiPoly::degree_in(std::size_t var) const noexcept {
  int d = kZeroDegree;
  for (const auto& [e, c] : terms_) d = std::max(d, static_cast<int>(e[var]));
  return d;
}

Elem MultiPoly::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? ring_.zero() : it->second;
}

void MultiPoly::add_term(const Exponents& e, Elem c) {
  if (e.size() != n_) throw PreconditionError("exponent vector length mismatch");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second = ring_.add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly out(ring_, n_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, ring_.neg(c));
  return out;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& other) {
  require_same_space(*this, other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& other) {
  require_same_space(*this, other);
  for (const auto& [e, c] : other.terms_) add_term(e, ring_.neg(c));
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  require_same_space(a, b);
  MultiPoly out(a.ring_, a.n_);
  Exponents e(a.n_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < a.n_; ++i) e[i] = static_cast<std::uint16_t>(ea[i] + eb[i]);
      out.add_term(e, a.ring_.mul(ca, cb));
    }
  }
  return out;
}

MultiPoly MultiPoly::scaled(Elem c) const {
  MultiPoly out(ring_, n_);
  for (const auto& [e, v] : terms_) out.add_term(e, ring_.mul(v, c));
  return out;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly acc = constant(ring_, n_, ring_.one());
  MultiPoly base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return acc;
}

MultiPoly MultiPoly::homogeneous_part(int d) const {
  MultiPoly out(ring_, n_);
  for (const auto& [e, c] : terms_) {
    if (static_cast<int>(std::accumulate(e.begin(), e.end(), 0u)) == d) out.terms_.emplace(e, c);
  }
  return out;
}

bool MultiPoly::is_homogeneous() const {
  const int d = degree();
  return d == kZeroDegree || homogeneous_part(d).num_terms() == num_terms();
}

Elem MultiPoly::evaluate(std::span<const Elem> point) const {
  if (point.size() != n_) throw PreconditionError("point has wrong dimension");
  Elem acc = 0;
  for (const auto& [e, c] : terms_) {
    Elem t = c;
    for (std::size_t i = 0; i < n_ && t != 0; ++i) {
      if (e[i] != 0) t = ring_.mul(t, ring_.pow(point[i], e[i]));
    }
    acc = ring_.add(acc, t);
  }
  return acc;
}

MultiPoly MultiPoly::substitute(std::span<const MultiPoly> images) const {
  if (images.size() != n_) throw PreconditionError("substitute needs one image per variable");
  if (images.empty()) return *this;
  const Ring& r = images[0].ring();
  const std::size_t m = images[0].num_vars();
  // powers[i][k] = images[i]^k, grown on demand
  std::vector<std::vector<MultiPoly>> powers(n_);
  auto power_of = [&](std::size_t i, unsigned k) -> const MultiPoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(constant(r, m, r.one()));
    while (cache.size() <= k) cache.push_back(cache.back() * images[i]);
    return cache[k];
  };
  MultiPoly out(r, m);
  for (const auto& [e, c] : terms_) {
    MultiPoly term = constant(r, m, c);
    for (std::size_t i = 0; i < n_ && !term.is_zero(); ++i) {
      if (e[i] != 0) term = term * power_of(i, e[i]);
    }
    out += term;
  }
  return out;
}

MultiPoly MultiPoly::embed(std::size_t new_n, std::size_t offset) const {
  if (offset + n_ > new_n) throw PreconditionError("embedding does not fit");
  MultiPoly out(ring_, new_n);
  for (const auto& [e, c] : terms_) {
    Exponents ne(new_n, 0);
    std::copy(e.begin(), e.end(), ne.begin() + static_cast<std::ptrdiff_t>(offset));
    out.terms_.emplace(std::move(ne), c);
  }
  return out;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (std::size_t i = 0; i < n_; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string coef = ring_.element_to_string(c);
    if (coef.find('+') != std::string::npos) coef = "(" + coef + ")";
    if (!out.empty()) out += " + ";
    if (mono.empty()) {
      out += coef;
    } else if (c == ring_.one()) {
      out += mono;
    } else {
      out += coef + "*" + mono;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

Elem evaluate(const MultiPoly& p, std::span<const Elem> point) { return p.evaluate(point); }

namespace {

// P(x + s) - P(x) with x_i shifted by the polynomial shift[i].
MultiPoly shift_difference(const MultiPoly& p, std::span<const MultiPoly> shift) {
  const Ring& r = p.ring();
  const std::size_t n = p.num_vars();
  std::vector<MultiPoly> images;
  images.reserve(n);
  for (std::size_t i = 0; i < n; ++i) images.push_back(MultiPoly::variable(r, n, i) + shift[i]);
  return p.substitute(images) - p;
}

}  // namespace

MultiPoly delta(const MultiPoly& p, std::span<const Elem> h) {
  const std::size_t n = p.num_vars();
  if (h.size() != n) throw PreconditionError("shift has wrong dimension");
  std::vector<MultiPoly> shift;
  shift.reserve(n);
  for (std::size_t i = 0; i < n; ++i) shift.push_back(MultiPoly::constant(p.ring(), n, h[i]));
  return shift_difference(p, shift);
}

MultiPoly partial_derivative(const MultiPoly& p, std::size_t var) {
  const Ring& r = p.ring();
  MultiPoly out(r, p.num_vars());
  for (const auto& [e, c] : p.terms()) {
    if (e[var] == 0) continue;
    Exponents ne = e;
    --ne[var];
    out.add_term(ne, r.mul(c, r.from_int(e[var])));
  }
  return out;
}

MultiPoly directional_derivative(const MultiPoly& p, std::span<const Elem> v) {
  if (v.size() != p.num_vars()) throw PreconditionError("direction has wrong dimension");
  const int d = p.degree();
  if (d != kZeroDegree && static_cast<long>(p.ring().characteristic_prime()) <= d) {
    throw UnsupportedCharacteristic("directional derivative needs characteristic > degree (p = " +
                                    std::to_string(p.ring().characteristic_prime()) + ", degree " +
                                    std::to_string(d) + ")");
  }
  MultiPoly out(p.ring(), p.num_vars());
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] != 0) out += partial_derivative(p, j).scaled(v[j]);
  }
  return out;
}

MultiPoly reduce_mod_p(const MultiPoly& p) {
  if (p.ring().kind() != RingKind::PrimePower) throw PreconditionError("reduce_mod_p expects a polynomial over Z/p^l");
  const Ring target = Ring::prime_field(p.ring().characteristic_prime());
  return p.map_coefficients(target, [&](Elem c) { return reduce_to_residue_field(p.ring(), c); });
}

MultiPoly embed_coefficients(const MultiPoly& p, const Ring& target) {
  if (p.ring().kind() == RingKind::ExtensionField) throw PreconditionError("can only embed prime-field coefficients");
  if (target.characteristic_prime() != p.ring().characteristic_prime()) {
    throw PreconditionError("embedding between different characteristics");
  }
  return p.map_coefficients(target, [&](Elem c) { return target.from_int(c); });
}

std::vector<Exponents> monomials_up_to(std::size_t n, int deg) {
  std::vector<Exponents> out;
  Exponents e(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == n) {
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = static_cast<std::uint16_t>(k);
      rec(i + 1, left - k);
    }
    e[i] = 0;
  };
  if (deg >= 0) rec(0, deg);
  std::stable_sort(out.begin(), out.end(), [](const Exponents& a, const Exponents& b) {
    int da = 0, db = 0;
    for (auto x : a) da += x;
    for (auto x : b) db += x;
    return da > db;
  });
  return out;
}

MultiPoly build_Qm(unsigned d, unsigned m, const Ring& ring) {
  require(d >= 1 && m >= 1, "Q_m needs d, m >= 1");
  const std::size_t n = static_cast<std::size_t>(d) * m;
  MultiPoly out(ring, n);
  for (unsigned i = 0; i < m; ++i) {
    Exponents e(n, 0);
    for (unsigned j = 0; j < d; ++j) e[static_cast<std::size_t>(i) * d + j] = 1;
    out.add_term(e, ring.one());
  }
  return out;
}

MultiPoly iterated_difference(const MultiPoly& p, unsigned m) {
  const std::size_t n = p.num_vars();
  const std::size_t total = n * (m + 1);
  const Ring& r = p.ring();
  MultiPoly cur = p.embed(total, 0);
  for (unsigned j = 1; j <= m; ++j) {
    std::vector<MultiPoly> images;
    images.reserve(total);
    for (std::size_t v = 0; v < total; ++v) {
      MultiPoly img = MultiPoly::variable(r, total, v);
      if (v < n) img += MultiPoly::variable(r, total, j * n + v);
      images.push_back(std::move(img));
    }
    cur = cur.substitute(images) - cur;
  }
  return cur;
}

MultilinearForm::MultilinearForm(MultiPoly base, unsigned blocks, std::size_t block_size)
    : base_(std::move(base)), d_(blocks), n_(block_size) {
  if (base_.num_vars() != static_cast<std::size_t>(d_) * n_) {
    throw PreconditionError("multilinear form variable count must equal blocks * block size");
  }
}

bool MultilinearForm::is_block_multilinear() const {
  for (const auto& [e, c] : base_.terms()) {
    for (unsigned b = 0; b < d_; ++b) {
      unsigned s = 0;
      for (std::size_t i = 0; i < n_; ++i) s += e[b * n_ + i];
      if (s != 1) return false;
    }
  }
  return true;
}

Elem MultilinearForm::evaluate(std::span<const Point> block_points) const {
  if (block_points.size() != d_) throw PreconditionError("one point per block required");
  Point flat;
  flat.reserve(base_.num_vars());
  for (const auto& pt : block_points) {
    if (pt.size() != n_) throw PreconditionError("block point has wrong dimension");
    flat.insert(flat.end(), pt.begin(), pt.end());
  }
  return base_.evaluate(flat);
}

MultilinearForm multilinear_form(const MultiPoly& p) {
  const int d = p.degree();
  require(d >= 1, "multilinear_form needs deg(P) >= 1");
  const std::size_t n = p.num_vars();
  MultiPoly full = iterated_difference(p, static_cast<unsigned>(d));
  // Delta^d P no longer depends on x; drop those coordinates.
  const std::size_t dn = static_cast<std::size_t>(d) * n;
  MultiPoly out(p.ring(), dn);
  for (const auto& [e, c] : full.terms()) {
    for (std::size_t i = 0; i < n; ++i) {
      if (e[i] != 0) throw InternalError("iterated difference still depends on x");
    }
    out.add_term(Exponents(e.begin() + static_cast<std::ptrdiff_t>(n), e.end()), c);
  }
  return MultilinearForm(std::move(out), static_cast<unsigned>(d), n);
}

// ---------------------------------------------------------------------------

PolyCollection::PolyCollection(std::vector<MultiPoly> polys) : polys_(std::move(polys)) {
  require(!polys_.empty(), "a collection needs at least one polynomial");
  for (const auto& p : polys_) {
    if (!(p.ring() == polys_.front().ring()) || p.num_vars() != polys_.front().num_vars()) {
      throw PreconditionError("collection members must share ring and variable count");
    }
    degrees_.push_back(std::max(p.degree(), 0));
  }
}

PolyCollection::PolyCollection(std::vector<MultiPoly> polys, std::vector<int> declared_degrees)
    : PolyCollection(std::move(polys)) {
  require(declared_degrees.size() == polys_.size(), "one declared degree per polynomial");
  for (std::size_t i = 0; i < polys_.size(); ++i) {
    require(polys_[i].degree() <= declared_degrees[i], "polynomial exceeds its declared degree");
  }
  degrees_ = std::move(declared_degrees);
}

bool PolyCollection::degree_is_exact(std::size_t i) const { return polys_.at(i).degree() == degrees_.at(i); }

std::uint64_t PolyCollection::degree_product() const {
  std::uint64_t d = 1;
  for (int x : degrees_) d *= static_cast<std::uint64_t>(std::max(x, 1));
  return d;
}

int PolyCollection::max_degree() const { return *std::max_element(degrees_.begin(), degrees_.end()); }

MultiPoly PolyCollection::combination(std::span<const Elem> a) const {
  require(a.size() == polys_.size(), "coefficient vector has wrong length");
  MultiPoly out(ring(), num_vars());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0) out += polys_[i].scaled(a[i]);
  }
  return out;
}

}  // namespace polyrank
