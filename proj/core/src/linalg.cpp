#include "polyrank/linalg.hpp"

namespace polyrank {

void Matrix::append_row(std::span<const Elem> values) {
  if (rows_ == 0 && cols_ == 0) cols_ = values.size();
  if (values.size() != cols_) throw PreconditionError("row length mismatch");
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

Echelon row_reduce(const Ring& ring, Matrix m) {
  require(ring.is_field(), "row reduction needs a field");
  Echelon out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m.at(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r) {
      auto a = m.row(piv), b = m.row(r);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    const Elem inv = ring.inv(m.at(r, c));
    auto pr = m.row(r);
    for (std::size_t j = c; j < m.cols(); ++j) pr[j] = ring.mul(pr[j], inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      const Elem f = m.at(i, c);
      if (f == 0) continue;
      auto ri = m.row(i);
      const Elem nf = ring.neg(f);
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (pr[j] != 0) ri[j] = ring.add(ri[j], ring.mul(nf, pr[j]));
      }
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.reduced = std::move(m);
  return out;
}

std::size_t matrix_rank(const Ring& ring, const Matrix& m) { return row_reduce(ring, m).rank(); }

std::optional<std::vector<Elem>> solve(const Ring& ring, const Matrix& a, std::span<const Elem> b) {
  require(b.size() == a.rows(), "right-hand side has wrong length");
  Matrix aug(a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  const Echelon e = row_reduce(ring, std::move(aug));
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return std::nullopt;
  std::vector<Elem> x(a.cols(), 0);
  for (std::size_t i = 0; i < e.rank(); ++i) x[e.pivots[i]] = e.reduced.at(i, a.cols());
  return x;
}

std::vector<std::vector<Elem>> kernel_basis(const Ring& ring, const Matrix& a) {
  const Echelon e = row_reduce(ring, a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<std::vector<Elem>> out;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<Elem> v(a.cols(), 0);
    v[f] = ring.one();
    for (std::size_t i = 0; i < e.rank(); ++i) v[e.pivots[i]] = ring.neg(e.reduced.at(i, f));
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace polyrank
