#include "polyrank/enumeration.hpp"

#include <algorithm>
#include <exception>
#include <thread>

namespace polyrank {

namespace {

constexpr std::uint64_t kMaxCodomain = std::uint64_t{1} << 26;

struct OuterTerm {
  Elem coef;
  std::vector<std::pair<std::uint32_t, std::uint16_t>> powers;  // (var, exponent) over the outer vars
};

// One polynomial as sum_k coeff_k(outer) * last^k.
struct Compiled {
  std::vector<std::vector<OuterTerm>> by_degree;
};

class Kernel {
 public:
  Kernel(std::span<const MultiPoly> polys, const EnumOptions& opts) : ring_(polys.front().ring()), opts_(opts) {
    n_ = polys.front().num_vars();
    for (const auto& p : polys) {
      if (!(p.ring() == ring_) || p.num_vars() != n_) throw PreconditionError("polynomials must share ring and variables");
    }
    total_ = Domain(ring_, n_).checked_size(opts.budget);
    outer_vars_ = n_ == 0 ? 0 : n_ - 1;
    max_exp_.assign(outer_vars_, 0);
    for (const auto& p : polys) {
      Compiled cp;
      for (const auto& [e, c] : p.terms()) {
        const std::size_t k = n_ == 0 ? 0 : e[n_ - 1];
        if (cp.by_degree.size() <= k) cp.by_degree.resize(k + 1);
        OuterTerm t{c, {}};
        for (std::uint32_t i = 0; i < outer_vars_; ++i) {
          if (e[i] == 0) continue;
          t.powers.emplace_back(i, e[i]);
          max_exp_[i] = std::max<std::uint16_t>(max_exp_[i], e[i]);
        }
        cp.by_degree[k].push_back(std::move(t));
      }
      if (cp.by_degree.empty()) cp.by_degree.resize(1);
      polys_.push_back(std::move(cp));
    }
    q_ = ring_.size();
    outer_size_ = n_ == 0 ? 1 : total_ / q_;
  }

  std::uint64_t total() const { return total_; }
  std::size_t c() const { return polys_.size(); }
  const Ring& ring() const { return ring_; }

  // Visits every point of the outer shard; `inner(outer, coeffs)` handles the
  // q points sharing an outer prefix.
  template <class Inner>
  void run_shard(std::uint64_t lo, std::uint64_t hi, Inner&& inner) const {
    if (lo >= hi) return;
    Point outer = Domain(ring_, outer_vars_).point_at(lo);
    std::vector<std::vector<Elem>> pw(outer_vars_);
    std::vector<std::vector<Elem>> coeffs(polys_.size());
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
      for (std::uint32_t i = 0; i < outer_vars_; ++i) {
        auto& row = pw[i];
        row.resize(static_cast<std::size_t>(max_exp_[i]) + 1);
        row[0] = ring_.one();
        for (std::size_t e = 1; e < row.size(); ++e) row[e] = ring_.mul(row[e - 1], outer[i]);
      }
      for (std::size_t j = 0; j < polys_.size(); ++j) {
        const auto& bd = polys_[j].by_degree;
        auto& cf = coeffs[j];
        cf.assign(bd.size(), 0);
        for (std::size_t k = 0; k < bd.size(); ++k) {
          Elem acc = 0;
          for (const auto& t : bd[k]) {
            Elem v = t.coef;
            for (const auto& [var, ex] : t.powers) v = ring_.mul(v, pw[var][ex]);
            acc = ring_.add(acc, v);
          }
          cf[k] = acc;
        }
      }
      inner(outer, coeffs);
      for (std::size_t i = outer.size(); i-- > 0;) {
        if (++outer[i] < q_) break;
        outer[i] = 0;
      }
    }
  }

  template <class ShardFn>
  void parallel(ShardFn&& fn) const {
    const unsigned shards = std::max(1u, opts_.shards);
    if (shards == 1) {
      fn(0u, std::uint64_t{0}, outer_size_);
      return;
    }
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(shards);
    for (unsigned s = 0; s < shards; ++s) {
      const auto [lo, hi] = Domain::shard_range(outer_size_, Shard{s, shards});
      threads.emplace_back([&, s, lo = lo, hi = hi] {
        try {
          fn(s, lo, hi);
        } catch (...) {
          errors[s] = std::current_exception();
        }
      });
    }
    for (auto& t : threads) t.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  Elem horner(const std::vector<Elem>& cf, Elem x) const {
    Elem v = cf.back();
    for (std::size_t k = cf.size() - 1; k-- > 0;) v = ring_.add(ring_.mul(v, x), cf[k]);
    return v;
  }

  std::uint32_t q() const { return q_; }
  std::size_t n() const { return n_; }

 private:
  Ring ring_;
  EnumOptions opts_;
  std::size_t n_ = 0;
  std::uint32_t outer_vars_ = 0;
  std::uint64_t total_ = 0;
  std::uint64_t outer_size_ = 0;
  std::uint32_t q_ = 0;
  std::vector<std::uint16_t> max_exp_;
  std::vector<Compiled> polys_;
};

}  // namespace

std::uint64_t value_key(const Ring& ring, std::span<const Elem> values) {
  std::uint64_t key = 0;
  for (Elem v : values) key = key * ring.size() + v;
  return key;
}

Point value_from_key(const Ring& ring, std::size_t c, std::uint64_t key) { return Domain(ring, c).point_at(key); }

std::vector<std::uint64_t> count_values(std::span<const MultiPoly> polys, const EnumOptions& opts) {
  require(!polys.empty(), "count_values needs at least one polynomial");
  const Ring& ring = polys.front().ring();
  const BigInt codomain = big_pow_u(ring.size(), static_cast<unsigned>(polys.size()));
  require(codomain <= kMaxCodomain, "codomain of size " + codomain.str() + " is too large to tabulate");
  const Kernel k(polys, opts);
  const auto width = codomain.convert_to<std::uint64_t>();
  const unsigned shards = std::max(1u, opts.shards);
  std::vector<std::vector<std::uint64_t>> local(shards);
  std::vector<std::uint64_t> uniform(shards, 0);
  const std::uint32_t q = k.q();

  k.parallel([&](unsigned s, std::uint64_t lo, std::uint64_t hi) {
    auto& counts = local[s];
    counts.assign(width, 0);
    std::uint64_t& uni = uniform[s];
    std::vector<Elem> vals(k.c());
    k.run_shard(lo, hi, [&](const Point&, const std::vector<std::vector<Elem>>& cf) {
      if (k.n() == 0) {
        for (std::size_t j = 0; j < cf.size(); ++j) vals[j] = cf[j][0];
        ++counts[value_key(ring, vals)];
        return;
      }
      // a unit linear coefficient in the last variable makes the q values a
      // permutation of the ring
      if (cf.size() == 1 && cf[0].size() == 2 && ring.is_unit(cf[0][1])) {
        ++uni;
        return;
      }
      if (cf.size() == 1) {
        const auto& c0 = cf[0];
        if (c0.size() == 1) {
          counts[c0[0]] += q;
          return;
        }
        for (Elem x = 0; x < q; ++x) ++counts[k.horner(c0, x)];
        return;
      }
      for (Elem x = 0; x < q; ++x) {
        std::uint64_t key = 0;
        for (const auto& c : cf) key = key * q + k.horner(c, x);
        ++counts[key];
      }
    });
  });

  std::vector<std::uint64_t> out(width, 0);
  std::uint64_t uni = 0;
  for (unsigned s = 0; s < shards; ++s) {
    uni += uniform[s];
    if (local[s].empty()) continue;
    for (std::uint64_t i = 0; i < width; ++i) out[i] += local[s][i];
  }
  if (uni != 0) {
    for (auto& v : out) v += uni;
  }
  return out;
}

FiberScan scan_fiber(std::span<const MultiPoly> polys, std::span<const Elem> target, const EnumOptions& opts,
                     std::uint64_t cap) {
  require(!polys.empty(), "scan_fiber needs at least one polynomial");
  require(target.size() == polys.size(), "target has wrong length");
  const Kernel k(polys, opts);
  const unsigned shards = std::max(1u, opts.shards);
  std::vector<FiberScan> local(shards);
  const std::uint32_t q = k.q();
  const std::size_t n = k.n();

  k.parallel([&](unsigned s, std::uint64_t lo, std::uint64_t hi) {
    FiberScan& out = local[s];
    k.run_shard(lo, hi, [&](const Point& outer, const std::vector<std::vector<Elem>>& cf) {
      const Elem last_max = n == 0 ? 1 : q;
      for (Elem x = 0; x < last_max; ++x) {
        bool hit = true;
        for (std::size_t j = 0; j < cf.size() && hit; ++j) {
          hit = (n == 0 ? cf[j][0] : k.horner(cf[j], x)) == target[j];
        }
        if (!hit) continue;
        ++out.count;
        if (out.points.size() < cap) {
          Point pt = outer;
          if (n > 0) pt.push_back(x);
          out.points.push_back(std::move(pt));
        }
      }
    });
  });

  FiberScan merged;
  for (auto& part : local) {
    merged.count += part.count;
    for (auto& pt : part.points) {
      if (merged.points.size() >= cap) break;
      merged.points.push_back(std::move(pt));
    }
  }
  return merged;
}

}  // namespace polyrank
