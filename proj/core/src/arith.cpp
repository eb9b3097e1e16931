#include "conefan/arith.hpp"

#include <algorithm>
#include <set>

namespace conefan {

IntMat IntMat::identity(std::size_t n) {
  IntMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMat IntMat::from_rows(const std::vector<IntVec>& rows, std::size_t cols) {
  IntMat m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  return m;
}

IntMat IntMat::from_cols(const std::vector<IntVec>& cols, std::size_t rows) {
  IntMat m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  return m;
}

IntVec IntMat::row(std::size_t r) const {
  IntVec v(cols_);
  for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(r, j);
  return v;
}

IntVec IntMat::col(std::size_t c) const {
  IntVec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, c);
  return v;
}

std::vector<IntVec> IntMat::row_list() const {
  std::vector<IntVec> rows(rows_);
  for (std::size_t i = 0; i < rows_; ++i) rows[i] = row(i);
  return rows;
}

IntMat IntMat::transposed() const {
  IntMat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

IntMat IntMat::operator*(const IntMat& rhs) const {
  IntMat r(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Int& x = (*this)(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) r(i, j) += x * rhs(k, j);
    }
  return r;
}

IntVec IntMat::operator*(const IntVec& x) const {
  IntVec r(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Int s = 0;
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
    r[i] = s;
  }
  return r;
}

RatVec IntMat::apply(const RatVec& x) const {
  RatVec r(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Rat s = 0;
    for (std::size_t j = 0; j < cols_; ++j) s += Rat((*this)(i, j)) * x[j];
    r[i] = s;
  }
  return r;
}

IntVec primitive(const IntVec& v) {
  Int g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g == 0) throw ZeroVectorError();
  IntVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
  return r;
}

IntVec canonical_hyperplane(const IntVec& normal) {
  IntVec p = primitive(normal);
  for (const auto& x : p) {
    if (x > 0) return p;
    if (x < 0) return vec_neg(p);
  }
  return p;
}

namespace {

void swap_rows(IntMat& m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(a, j), m(b, j));
}

void swap_cols(IntMat& m, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, a), m(i, b));
}

// row a += q * row b
void add_row(IntMat& m, std::size_t a, std::size_t b, const Int& q) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(a, j) += q * m(b, j);
}

void add_col(IntMat& m, std::size_t a, std::size_t b, const Int& q) {
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, a) += q * m(i, b);
}

void negate_row(IntMat& m, std::size_t a) {
  for (std::size_t j = 0; j < m.cols(); ++j) m(a, j) = -m(a, j);
}

}  // namespace

SmithResult smith_normal_form(const IntMat& input) {
  const std::size_t r = input.rows(), c = input.cols();
  SmithResult res{IntMat::identity(r), input, IntMat::identity(c)};
  IntMat& s = res.s;
  IntMat& u = res.u;
  IntMat& v = res.v;

  const std::size_t steps = std::min(r, c);
  for (std::size_t k = 0; k < steps; ++k) {
    for (;;) {
      // smallest nonzero |entry| in the trailing submatrix, first position on
      // ties, moved to the pivot slot
      std::size_t pi = k, pj = k;
      Int best = 0;
      for (std::size_t i = k; i < r; ++i)
        for (std::size_t j = k; j < c; ++j) {
          if (s(i, j) == 0) continue;
          Int a = abs(s(i, j));
          if (best == 0 || a < best) {
            best = a;
            pi = i;
            pj = j;
          }
        }
      if (best == 0) break;  // submatrix is zero
      if (pi != k) {
        swap_rows(s, k, pi);
        swap_rows(u, k, pi);
      }
      if (pj != k) {
        swap_cols(s, k, pj);
        swap_cols(v, k, pj);
      }
      bool reduced = true;
      for (std::size_t i = k + 1; i < r; ++i) {
        if (s(i, k) == 0) continue;
        Int q = s(i, k) / s(k, k);
        add_row(s, i, k, -q);
        add_row(u, i, k, -q);
        if (s(i, k) != 0) reduced = false;
      }
      for (std::size_t j = k + 1; j < c; ++j) {
        if (s(k, j) == 0) continue;
        Int q = s(k, j) / s(k, k);
        add_col(s, j, k, -q);
        add_col(v, j, k, -q);
        if (s(k, j) != 0) reduced = false;
      }
      if (!reduced) continue;
      // divisibility: fold any non-divisible trailing entry into row k
      bool fold = false;
      for (std::size_t i = k + 1; i < r && !fold; ++i)
        for (std::size_t j = k + 1; j < c && !fold; ++j)
          if (s(i, j) % s(k, k) != 0) {
            add_row(s, k, i, 1);
            add_row(u, k, i, 1);
            fold = true;
          }
      if (!fold) break;
    }
    if (s(k, k) < 0) {
      negate_row(s, k);
      negate_row(u, k);
    }
  }
  return res;
}

std::vector<Int> invariant_factors(const IntMat& m) {
  SmithResult snf = smith_normal_form(m);
  std::vector<Int> d;
  for (std::size_t k = 0; k < std::min(m.rows(), m.cols()); ++k)
    if (snf.s(k, k) != 0) d.push_back(snf.s(k, k));
  return d;
}

std::size_t rank_of_rows(const std::vector<IntVec>& rows) {
  if (rows.empty()) return 0;
  std::vector<IntVec> w = rows;
  const std::size_t n = w[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < w.size(); ++col) {
    std::size_t piv = rank;
    while (piv < w.size() && w[piv][col] == 0) ++piv;
    if (piv == w.size()) continue;
    std::swap(w[rank], w[piv]);
    for (std::size_t i = rank + 1; i < w.size(); ++i) {
      if (w[i][col] == 0) continue;
      Int a = w[rank][col], b = w[i][col];
      for (std::size_t j = col; j < n; ++j) w[i][j] = w[i][j] * a - w[rank][j] * b;
    }
    ++rank;
  }
  return rank;
}

namespace {

// Reduced row echelon form over the rationals; returns pivot columns.
std::vector<std::size_t> rref(std::vector<RatVec>& w) {
  std::vector<std::size_t> pivots;
  if (w.empty()) return pivots;
  const std::size_t n = w[0].size();
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < w.size(); ++col) {
    std::size_t piv = row;
    while (piv < w.size() && w[piv][col] == 0) ++piv;
    if (piv == w.size()) continue;
    std::swap(w[row], w[piv]);
    Rat inv = w[row][col];
    for (std::size_t j = col; j < n; ++j) w[row][j] /= inv;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i == row || w[i][col] == 0) continue;
      Rat f = w[i][col];
      for (std::size_t j = col; j < n; ++j) w[i][j] -= f * w[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

}  // namespace

std::vector<IntVec> kernel_basis(const std::vector<IntVec>& rows,
                                 std::size_t dim) {
  std::vector<RatVec> w;
  w.reserve(rows.size());
  for (const auto& r : rows) w.push_back(to_rat_vec(r));
  std::vector<std::size_t> pivots = rref(w);
  std::vector<bool> is_pivot(dim, false);
  for (std::size_t p : pivots) is_pivot[p] = true;

  std::vector<IntVec> basis;
  for (std::size_t free = 0; free < dim; ++free) {
    if (is_pivot[free]) continue;
    RatVec x(dim, Rat(0));
    x[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = -w[i][free];
    basis.push_back(primitive(clear_denominators(x)));
  }
  std::sort(basis.begin(), basis.end(), lex_less);
  return basis;
}

std::optional<RatVec> solve_linear(const IntMat& a, const RatVec& b) {
  const std::size_t r = a.rows(), c = a.cols();
  std::vector<RatVec> w(r, RatVec(c + 1, Rat(0)));
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) w[i][j] = Rat(a(i, j));
    w[i][c] = b[i];
  }
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < c && row < r; ++col) {
    std::size_t piv = row;
    while (piv < r && w[piv][col] == 0) ++piv;
    if (piv == r) continue;
    std::swap(w[row], w[piv]);
    Rat inv = w[row][col];
    for (std::size_t j = col; j <= c; ++j) w[row][j] /= inv;
    for (std::size_t i = 0; i < r; ++i) {
      if (i == row || w[i][col] == 0) continue;
      Rat f = w[i][col];
      for (std::size_t j = col; j <= c; ++j) w[i][j] -= f * w[row][j];
    }
    pivots.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < r; ++i)
    if (w[i][c] != 0) return std::nullopt;
  RatVec x(c, Rat(0));
  for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = w[i][c];
  return x;
}

Int determinant(const IntMat& m) {
  // Bareiss fraction-free elimination
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMat w = m;
  Int sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (w(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && w(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      swap_rows(w, k, piv);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        w(i, j) = (w(i, j) * w(k, k) - w(i, k) * w(k, j)) / prev;
    prev = w(k, k);
  }
  return sign * w(n - 1, n - 1);
}

namespace {

std::size_t rank_of_indexed(const std::vector<IntVec>& all,
                            const std::vector<std::size_t>& idx) {
  std::vector<IntVec> rows;
  rows.reserve(idx.size());
  for (std::size_t i : idx) rows.push_back(all[i]);
  return rank_of_rows(rows);
}

}  // namespace

std::vector<IntVec> extreme_rays(std::vector<IntVec> halfspaces,
                                 std::size_t dim) {
  for (auto& h : halfspaces)
    if (!is_zero_vec(h)) h = primitive(h);
  halfspaces.erase(
      std::remove_if(halfspaces.begin(), halfspaces.end(),
                     [](const IntVec& h) { return is_zero_vec(h); }),
      halfspaces.end());
  std::sort(halfspaces.begin(), halfspaces.end(), lex_less);
  halfspaces.erase(std::unique(halfspaces.begin(), halfspaces.end()),
                   halfspaces.end());

  // pointed iff the normals span the whole space
  std::vector<IntVec> lines = kernel_basis(halfspaces, dim);
  if (!lines.empty()) throw LinealityError(lines.front());

  // greedily pick dim independent normals for the initial simplicial cone
  std::vector<std::size_t> base;
  std::vector<IntVec> base_rows;
  for (std::size_t i = 0; i < halfspaces.size() && base.size() < dim; ++i) {
    base_rows.push_back(halfspaces[i]);
    if (rank_of_rows(base_rows) == base.size() + 1) {
      base.push_back(i);
    } else {
      base_rows.pop_back();
    }
  }

  // rays of the initial simplicial cone: r_j with B * r_j a positive
  // multiple of e_j
  IntMat b = IntMat::from_rows(base_rows, dim);
  std::vector<IntVec> rays;
  for (std::size_t j = 0; j < dim; ++j) {
    RatVec e(dim, Rat(0));
    e[j] = 1;
    auto sol = solve_linear(b, e);  // unique: b invertible
    rays.push_back(primitive(clear_denominators(*sol)));
  }

  std::vector<std::size_t> processed = base;
  for (std::size_t hi = 0; hi < halfspaces.size(); ++hi) {
    if (std::find(base.begin(), base.end(), hi) != base.end()) continue;
    const IntVec& a = halfspaces[hi];
    std::vector<IntVec> pos, zero, neg;
    for (const auto& r : rays) {
      Int d = dot(a, r);
      if (d > 0)
        pos.push_back(r);
      else if (d == 0)
        zero.push_back(r);
      else
        neg.push_back(r);
    }
    std::vector<IntVec> next = pos;
    next.insert(next.end(), zero.begin(), zero.end());
    if (dim < 2) {
      std::sort(next.begin(), next.end(), lex_less);
      rays = next;
      processed.push_back(hi);
      continue;
    }
    for (const auto& u : pos)
      for (const auto& v : neg) {
        // adjacency: common tight constraints have rank dim - 2
        std::vector<std::size_t> tight;
        for (std::size_t t : processed)
          if (dot(halfspaces[t], u) == 0 && dot(halfspaces[t], v) == 0)
            tight.push_back(t);
        if (tight.size() + 2 < dim) continue;
        if (rank_of_indexed(halfspaces, tight) != dim - 2) continue;
        Int cu = dot(a, u), cv = dot(a, v);
        IntVec w(dim);
        for (std::size_t k = 0; k < dim; ++k) w[k] = cu * v[k] - cv * u[k];
        next.push_back(primitive(w));
      }
    std::sort(next.begin(), next.end(), lex_less);
    next.erase(std::unique(next.begin(), next.end()), next.end());
    rays = next;
    processed.push_back(hi);
  }
  std::sort(rays.begin(), rays.end(), lex_less);
  return rays;
}

}  // namespace conefan
