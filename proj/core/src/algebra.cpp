#include "polyrank/algebra.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <tuple>
#include <sstream>

namespace polyrank {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace {

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// GF(p)[t] helpers

namespace fp_poly {

using Poly = std::vector<std::uint32_t>;

namespace {

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, nt = 1, r = p, nr = a;
  while (nr != 0) {
    std::int64_t qq = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - qq * nt);
    std::tie(r, nr) = std::make_pair(nr, r - qq * nr);
  }
  if (t < 0) t += p;
  return static_cast<std::uint32_t>(t);
}

// Remainder of a modulo b (b nonzero, any leading coefficient).
Poly rem(Poly a, const Poly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const std::uint32_t lead_inv = inv_mod(b.back(), p);
  while (a.size() >= b.size()) {
    const std::uint64_t factor = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    const std::size_t shift = a.size() - 1 - db;
    for (std::size_t i = 0; i <= db; ++i) {
      const std::uint64_t sub = factor * b[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

}  // namespace

Poly mulmod(const Poly& a, const Poly& b, const Poly& monic_mod, std::uint32_t p) {
  Poly prod(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = static_cast<std::uint32_t>(
          (prod[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p);
    }
  }
  return rem(std::move(prod), monic_mod, p);
}

bool is_irreducible(const Poly& monic, std::uint32_t p) {
  const std::size_t k = monic.size() - 1;
  if (k == 0) return false;
  if (k == 1) return true;
  // Ben-Or: f is irreducible iff gcd(x^{p^i} - x, f) = 1 for i <= k/2.
  Poly x{0, 1};
  Poly power = x;
  for (std::size_t i = 1; i <= k / 2; ++i) {
    // power <- power^p mod f
    Poly acc{1};
    Poly base = power;
    std::uint64_t e = p;
    while (e > 0) {
      if (e & 1) acc = mulmod(acc, base, monic, p);
      base = mulmod(base, base, monic, p);
      e >>= 1;
    }
    power = acc;
    Poly diff = power;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    Poly g = gcd(monic, diff, p);
    if (g.size() > 1) return false;
  }
  return true;
}

}  // namespace fp_poly

std::vector<Elem> least_irreducible_modulus(std::uint32_t p, unsigned k) {
  const std::uint64_t count = ipow(p, k);
  for (std::uint64_t m = 0; m < count; ++m) {
    std::vector<std::uint32_t> full(k + 1);
    std::uint64_t v = m;
    for (unsigned i = 0; i < k; ++i) {
      full[i] = static_cast<std::uint32_t>(v % p);
      v /= p;
    }
    full[k] = 1;
    if (fp_poly::is_irreducible(full, p)) {
      return std::vector<Elem>(full.begin(), full.begin() + k);
    }
  }
  throw InternalError("no irreducible polynomial found");
}

// ---------------------------------------------------------------------------
// Tables

struct RingTables {
  std::vector<Elem> modulus;  // c_0..c_{k-1}
  std::vector<std::uint32_t> log;   // log[0] unused
  std::vector<Elem> exp;            // length 2(q-1)
  std::vector<Elem> add_table;      // q*q when small
  std::vector<std::int64_t> zech;   // log(1+g^n), -1 when 1+g^n = 0
  std::vector<Elem> neg;
  std::vector<Elem> trace;
};

namespace {

Elem digit_add(Elem a, Elem b, std::uint32_t p, unsigned k) {
  Elem out = 0, place = 1;
  for (unsigned i = 0; i < k; ++i) {
    out += ((a % p + b % p) % p) * place;
    a /= p;
    b /= p;
    place *= p;
  }
  return out;
}

Elem digit_neg(Elem a, std::uint32_t p, unsigned k) {
  Elem out = 0, place = 1;
  for (unsigned i = 0; i < k; ++i) {
    out += ((p - a % p) % p) * place;
    a /= p;
    place *= p;
  }
  return out;
}

std::vector<std::uint32_t> unpack(Elem a, std::uint32_t p, unsigned k) {
  std::vector<std::uint32_t> c(k);
  for (unsigned i = 0; i < k; ++i) {
    c[i] = a % p;
    a /= p;
  }
  return c;
}

Elem pack(const std::vector<std::uint32_t>& c, std::uint32_t p, unsigned k) {
  Elem out = 0, place = 1;
  for (unsigned i = 0; i < k && i < c.size(); ++i) {
    out += c[i] * place;
    place *= p;
  }
  return out;
}

std::shared_ptr<RingTables> build_extension_tables(std::uint32_t p, unsigned k,
                                                   std::vector<Elem> modulus) {
  auto t = std::make_shared<RingTables>();
  const std::uint32_t q = static_cast<std::uint32_t>(ipow(p, k));
  std::vector<std::uint32_t> monic(modulus.begin(), modulus.end());
  monic.push_back(1);
  t->modulus = std::move(modulus);

  auto slow_mul = [&](Elem a, Elem b) {
    return pack(fp_poly::mulmod(unpack(a, p, k), unpack(b, p, k), monic, p), p, k);
  };
  auto slow_pow = [&](Elem a, std::uint64_t e) {
    Elem acc = 1;
    while (e > 0) {
      if (e & 1) acc = slow_mul(acc, a);
      a = slow_mul(a, a);
      e >>= 1;
    }
    return acc;
  };

  // Primitive element: least g whose order is q - 1.
  const auto factors = prime_factors(q - 1);
  Elem g = 0;
  for (Elem cand = 1; cand < q; ++cand) {
    bool ok = true;
    for (auto r : factors) {
      if (slow_pow(cand, (q - 1) / r) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) {
      g = cand;
      break;
    }
  }
  if (g == 0) throw InternalError("no primitive element");

  const std::uint32_t order = q - 1;
  t->log.assign(q, 0);
  t->exp.assign(2 * static_cast<std::size_t>(order), 0);
  Elem cur = 1;
  const bool shift_mul = (g == p);  // g = t: multiply by shifting
  for (std::uint32_t i = 0; i < order; ++i) {
    t->exp[i] = cur;
    t->exp[i + order] = cur;
    t->log[cur] = i;
    if (shift_mul) {
      auto c = unpack(cur, p, k);
      const std::uint32_t top = c[k - 1];
      for (unsigned j = k - 1; j > 0; --j) c[j] = c[j - 1];
      c[0] = 0;
      for (unsigned j = 0; j < k; ++j) {
        c[j] = static_cast<std::uint32_t>((c[j] + static_cast<std::uint64_t>(p - top) * monic[j]) % p);
      }
      cur = pack(c, p, k);
    } else {
      cur = slow_mul(cur, g);
    }
  }

  t->neg.resize(q);
  for (Elem a = 0; a < q; ++a) t->neg[a] = digit_neg(a, p, k);

  if (p != 2) {
    if (q <= 1024) {
      t->add_table.resize(static_cast<std::size_t>(q) * q);
      for (Elem a = 0; a < q; ++a) {
        for (Elem b = 0; b < q; ++b) t->add_table[static_cast<std::size_t>(a) * q + b] = digit_add(a, b, p, k);
      }
    } else {
      t->zech.resize(order);
      for (std::uint32_t n = 0; n < order; ++n) {
        Elem s = digit_add(1, t->exp[n], p, k);
        t->zech[n] = s == 0 ? -1 : static_cast<std::int64_t>(t->log[s]);
      }
    }
  }

  // Trace: sum of Frobenius conjugates.
  t->trace.resize(q);
  t->trace[0] = 0;
  for (Elem a = 1; a < q; ++a) {
    Elem sum = a;
    std::uint64_t la = t->log[a];
    for (unsigned i = 1; i < k; ++i) {
      la = la * p % order;
      const Elem conj = t->exp[la];
      sum = p == 2 ? (sum ^ conj) : digit_add(sum, conj, p, k);
    }
    if (sum >= p) throw InternalError("trace left the prime field");
    t->trace[a] = sum;
  }
  return t;
}

}  // namespace

// ---------------------------------------------------------------------------
// Ring

Ring Ring::prime_field(std::uint32_t p) {
  if (!is_prime(p)) throw InputError("GF(" + std::to_string(p) + "): " + std::to_string(p) + " is not prime");
  if (p > kMaxFieldSize) throw InputError("field size exceeds the supported cap 2^20");
  Ring r;
  r.kind_ = RingKind::PrimeField;
  r.p_ = p;
  r.e_ = 1;
  r.q_ = p;
  return r;
}

Ring Ring::extension_field(std::uint32_t p, unsigned k, std::optional<std::vector<Elem>> modulus) {
  if (!is_prime(p)) throw InputError("GF(" + std::to_string(p) + "^" + std::to_string(k) + "): base is not prime");
  if (k == 0) throw InputError("extension degree must be positive");
  if (k == 1 && !modulus) return prime_field(p);
  BigInt q = big_pow_u(p, k);
  if (q > kMaxFieldSize) throw InputError("field size " + q.str() + " exceeds the supported cap 2^20");
  std::vector<Elem> mod;
  if (modulus) {
    mod = *modulus;
    if (mod.size() != k) throw InputError("explicit modulus must have degree " + std::to_string(k));
    for (auto c : mod) {
      if (c >= p) throw InputError("modulus coefficient out of range");
    }
    std::vector<std::uint32_t> full(mod.begin(), mod.end());
    full.push_back(1);
    if (!fp_poly::is_irreducible(full, p)) throw InputError("explicit modulus is reducible over GF(" + std::to_string(p) + ")");
  } else {
    mod = least_irreducible_modulus(p, k);
  }
  Ring r;
  r.kind_ = RingKind::ExtensionField;
  r.p_ = p;
  r.e_ = k;
  r.q_ = static_cast<std::uint32_t>(ipow(p, k));
  r.tables_ = build_extension_tables(p, k, std::move(mod));
  return r;
}

Ring Ring::prime_power(std::uint32_t p, unsigned l) {
  if (!is_prime(p)) throw InputError("Z/" + std::to_string(p) + "^" + std::to_string(l) + ": base is not prime");
  if (l == 0 || l > kMaxPadicLevel) throw InputError("level l must be in [1, 6]");
  if (big_pow_u(p, l) > kMaxFieldSize) throw InputError("ring size exceeds the supported cap 2^20");
  Ring r;
  r.kind_ = RingKind::PrimePower;
  r.p_ = p;
  r.e_ = l;
  r.q_ = static_cast<std::uint32_t>(ipow(p, l));
  return r;
}

const std::vector<Elem>& Ring::modulus() const {
  if (kind_ != RingKind::ExtensionField) throw PreconditionError("modulus() on a non-extension ring");
  return tables_->modulus;
}

Elem Ring::from_int(std::int64_t v) const noexcept {
  const std::int64_t m = kind_ == RingKind::ExtensionField ? p_ : q_;
  std::int64_t r = v % m;
  if (r < 0) r += m;
  return static_cast<Elem>(r);
}

Elem Ring::ext_add(Elem a, Elem b) const noexcept {
  if (p_ == 2) return a ^ b;
  const auto& t = *tables_;
  if (!t.add_table.empty()) return t.add_table[static_cast<std::size_t>(a) * q_ + b];
  if (a == 0) return b;
  if (b == 0) return a;
  const std::uint32_t order = q_ - 1;
  const std::uint32_t la = t.log[a], lb = t.log[b];
  const std::uint32_t d = lb >= la ? lb - la : lb + order - la;
  const std::int64_t z = t.zech[d];
  if (z < 0) return 0;
  return t.exp[la + static_cast<std::uint32_t>(z)];
}

Elem Ring::ext_neg(Elem a) const noexcept { return tables_->neg[a]; }

Elem Ring::ext_mul(Elem a, Elem b) const noexcept {
  if (a == 0 || b == 0) return 0;
  const auto& t = *tables_;
  return t.exp[t.log[a] + t.log[b]];
}

Elem Ring::pow(Elem a, std::uint64_t e) const noexcept {
  Elem acc = one();
  while (e > 0) {
    if (e & 1) acc = mul(acc, a);
    a = mul(a, a);
    e >>= 1;
  }
  return acc;
}

bool Ring::is_unit(Elem a) const noexcept {
  if (kind_ == RingKind::PrimePower) return a % p_ != 0;
  return a != 0;
}

Elem Ring::inv(Elem a) const {
  if (!is_unit(a)) throw PreconditionError("inverse of a non-unit " + element_to_string(a) + " in " + descriptor());
  if (kind_ == RingKind::ExtensionField) {
    const auto& t = *tables_;
    const std::uint32_t order = q_ - 1;
    return t.exp[(order - t.log[a]) % order];
  }
  std::int64_t tt = 0, nt = 1, r = q_, nr = a;
  while (nr != 0) {
    const std::int64_t qq = r / nr;
    std::tie(tt, nt) = std::make_pair(nt, tt - qq * nt);
    std::tie(r, nr) = std::make_pair(nr, r - qq * nr);
  }
  if (tt < 0) tt += q_;
  return static_cast<Elem>(tt);
}

Elem Ring::trace(Elem a) const {
  switch (kind_) {
    case RingKind::PrimeField: return a;
    case RingKind::ExtensionField: return tables_->trace[a];
    case RingKind::PrimePower:
      if (e_ == 1) return a;
      throw PreconditionError("trace is defined on fields only");
  }
  return a;
}

std::vector<Elem> Ring::coefficients(Elem a) const {
  if (kind_ != RingKind::ExtensionField) return {a};
  return unpack(a, p_, e_);
}

Elem Ring::from_coefficients(std::span<const Elem> coeffs) const {
  if (kind_ != RingKind::ExtensionField) return coeffs.empty() ? 0 : from_int(coeffs[0]);
  std::vector<std::uint32_t> c(e_, 0);
  for (std::size_t i = 0; i < coeffs.size() && i < e_; ++i) c[i] = coeffs[i] % p_;
  return pack(c, p_, e_);
}

unsigned Ring::valuation(Elem a) const noexcept {
  if (a == 0) return kind_ == RingKind::PrimePower ? e_ : 1;
  if (kind_ != RingKind::PrimePower) return 0;
  unsigned v = 0;
  while (a % p_ == 0) {
    a /= p_;
    ++v;
  }
  return v;
}

std::string Ring::descriptor() const {
  switch (kind_) {
    case RingKind::PrimeField: return "GF(" + std::to_string(p_) + ")";
    case RingKind::PrimePower: return "Z/" + std::to_string(q_);
    case RingKind::ExtensionField: {
      if (tables_->modulus == least_irreducible_modulus(p_, e_)) return "GF(" + std::to_string(q_) + ")";
      std::string mod = "t^" + std::to_string(e_);
      for (unsigned i = e_; i-- > 0;) {
        const Elem c = tables_->modulus[i];
        if (c == 0) continue;
        mod += "+";
        if (c != 1 || i == 0) mod += std::to_string(c);
        if (i > 0) mod += (c != 1 ? "*t" : "t") + (i > 1 ? "^" + std::to_string(i) : std::string());
      }
      return "GF(" + std::to_string(q_) + ", " + mod + ")";
    }
  }
  return "?";
}

std::string Ring::element_to_string(Elem a) const {
  if (kind_ != RingKind::ExtensionField) return std::to_string(a);
  const auto c = unpack(a, p_, e_);
  std::string out;
  for (unsigned i = e_; i-- > 0;) {
    if (c[i] == 0) continue;
    if (!out.empty()) out += "+";
    if (i == 0) {
      out += std::to_string(c[i]);
    } else {
      if (c[i] != 1) out += std::to_string(c[i]) + "*";
      out += "t";
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

bool Ring::operator==(const Ring& other) const noexcept {
  if (kind_ != other.kind_ || p_ != other.p_ || e_ != other.e_) return false;
  if (kind_ == RingKind::ExtensionField) {
    return tables_ == other.tables_ || tables_->modulus == other.tables_->modulus;
  }
  return true;
}

Elem reduce_to_residue_field(const Ring& ring, Elem a) {
  if (ring.kind() == RingKind::ExtensionField) throw PreconditionError("reduction mod p applies to Z/p^l");
  return a % ring.characteristic_prime();
}

// ---------------------------------------------------------------------------
// Descriptor parsing

namespace {

std::string strip(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(c);
  }
  return out;
}

std::uint64_t parse_uint(std::string_view s, std::string_view whole) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw InputError("malformed ring descriptor '" + std::string(whole) + "'");
  }
  return v;
}

// Splits "p^k" or "N" into (p, k), requiring a prime power.
std::pair<std::uint32_t, unsigned> parse_prime_power(std::string_view s, std::string_view whole) {
  const auto caret = s.find('^');
  if (caret != std::string_view::npos) {
    const auto p = parse_uint(s.substr(0, caret), whole);
    const auto k = parse_uint(s.substr(caret + 1), whole);
    if (!is_prime(p)) throw InputError("'" + std::string(whole) + "': " + std::to_string(p) + " is not prime");
    if (k == 0 || k > 64) throw InputError("'" + std::string(whole) + "': exponent out of range");
    return {static_cast<std::uint32_t>(std::min<std::uint64_t>(p, UINT32_MAX)), static_cast<unsigned>(k)};
  }
  const auto n = parse_uint(s, whole);
  if (n < 2) throw InputError("'" + std::string(whole) + "': size must be at least 2");
  const auto f = prime_factors(n);
  if (f.size() != 1) throw InputError("'" + std::string(whole) + "': " + std::to_string(n) + " is not a prime power");
  unsigned k = 0;
  std::uint64_t m = n;
  while (m % f[0] == 0) {
    m /= f[0];
    ++k;
  }
  return {static_cast<std::uint32_t>(std::min<std::uint64_t>(f[0], UINT32_MAX)), k};
}

// Univariate polynomial in t with integer coefficients, low-to-high mod p.
std::vector<Elem> parse_modulus(std::string_view s, std::uint32_t p, unsigned k, std::string_view whole) {
  std::vector<std::int64_t> coeff(k + 1, 0);
  std::size_t i = 0;
  auto fail = [&] { throw InputError("malformed modulus in '" + std::string(whole) + "'"); };
  if (s.find('t') == std::string_view::npos) {
    // coefficient list c0,c1,...,c{k-1}
    std::vector<Elem> out;
    while (i <= s.size()) {
      const std::size_t j = std::min(s.find(',', i), s.size());
      if (j == i) fail();
      out.push_back(static_cast<Elem>(parse_uint(s.substr(i, j - i), whole) % p));
      i = j + 1;
    }
    if (out.size() != k) fail();
    return out;
  }
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      if (s[i] == '-') sign = -1;
      ++i;
    }
    std::int64_t c = 1;
    bool have_num = false;
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) {
      c = static_cast<std::int64_t>(parse_uint(s.substr(i, j - i), whole));
      have_num = true;
      i = j;
    }
    unsigned e = 0;
    if (i < s.size() && s[i] == '*') {
      if (!have_num) fail();
      ++i;
    }
    if (i < s.size() && s[i] == 't') {
      ++i;
      e = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        e = static_cast<unsigned>(parse_uint(s.substr(i, j - i), whole));
        i = j;
      }
    } else if (!have_num) {
      fail();
    }
    if (e > k) fail();
    coeff[e] += sign * c;
    if (i < s.size() && s[i] != '+' && s[i] != '-') fail();
  }
  if (((coeff[k] % p) + p) % p != 1) throw InputError("modulus in '" + std::string(whole) + "' must be monic of degree " + std::to_string(k));
  std::vector<Elem> out(k);
  for (unsigned e = 0; e < k; ++e) out[e] = static_cast<Elem>(((coeff[e] % p) + p) % p);
  return out;
}

}  // namespace

Ring ring_from_text(std::string_view text) {
  const std::string s = strip(text);
  if (s.rfind("GF(", 0) == 0 && s.back() == ')') {
    std::string_view body(s);
    body = body.substr(3, body.size() - 4);
    std::string_view mod_text;
    if (const auto comma = body.find_first_of(",;"); comma != std::string_view::npos) {
      mod_text = body.substr(comma + 1);
      body = body.substr(0, comma);
    }
    auto [p, k] = parse_prime_power(body, text);
    if (static_cast<double>(k) * std::log2(static_cast<double>(p)) > 20.0 + 1e-9) {
      throw InputError("'" + std::string(text) + "': q = p^k exceeds the supported cap 2^20");
    }
    if (!mod_text.empty()) {
      if (k == 1) throw InputError("'" + std::string(text) + "': a prime field takes no modulus");
      return Ring::extension_field(p, k, parse_modulus(mod_text, p, k, text));
    }
    return k == 1 ? Ring::prime_field(p) : Ring::extension_field(p, k);
  }
  if (s.rfind("Z/", 0) == 0) {
    auto [p, l] = parse_prime_power(std::string_view(s).substr(2), text);
    if (l > kMaxPadicLevel) throw InputError("'" + std::string(text) + "': level l exceeds the supported cap 6");
    if (static_cast<double>(l) * std::log2(static_cast<double>(p)) > 20.0 + 1e-9) {
      throw InputError("'" + std::string(text) + "': ring size exceeds the supported cap 2^20");
    }
    return Ring::prime_power(p, l);
  }
  throw InputError("unrecognized ring descriptor '" + std::string(text) + "' (expected GF(p), GF(p^k) or Z/p^l)");
}

// ---------------------------------------------------------------------------
// Domains

BigInt Domain::cardinality() const { return big_pow_u(ring_.size(), static_cast<unsigned>(n_)); }

std::uint64_t Domain::checked_size(std::uint64_t budget) const {
  BigInt card = cardinality();
  if (card > budget) throw BudgetExceeded(std::move(card), budget);
  return card.convert_to<std::uint64_t>();
}

Point Domain::point_at(std::uint64_t index) const {
  Point pt(n_, 0);
  const std::uint64_t q = ring_.size();
  for (std::size_t i = n_; i-- > 0;) {
    pt[i] = static_cast<Elem>(index % q);
    index /= q;
  }
  return pt;
}

std::pair<std::uint64_t, std::uint64_t> Domain::shard_range(std::uint64_t size, Shard shard) {
  if (shard.total == 0 || shard.index >= shard.total) {
    throw PreconditionError("shard index " + std::to_string(shard.index) + " out of range for " +
                            std::to_string(shard.total) + " shards");
  }
  using boost::multiprecision::uint128_t;
  const uint128_t s = size;
  const auto lo = static_cast<std::uint64_t>(s * shard.index / shard.total);
  const auto hi = static_cast<std::uint64_t>(s * (shard.index + 1) / shard.total);
  return {lo, hi};
}

void for_each_point(const Domain& domain, Shard shard, std::uint64_t budget,
                    const std::function<void(const Point&)>& visit) {
  const std::uint64_t size = domain.checked_size(budget);
  const auto [lo, hi] = Domain::shard_range(size, shard);
  if (lo >= hi) return;
  Point pt = domain.point_at(lo);
  const Elem q = domain.ring().size();
  for (std::uint64_t idx = lo; idx < hi; ++idx) {
    visit(pt);
    for (std::size_t i = pt.size(); i-- > 0;) {
      if (++pt[i] < q) break;
      pt[i] = 0;
    }
  }
}

std::vector<Point> enumerate_domain(const Domain& domain, Shard shard, std::uint64_t budget) {
  std::vector<Point> out;
  for_each_point(domain, shard, budget, [&](const Point& pt) { out.push_back(pt); });
  return out;
}

}  // namespace polyrank
