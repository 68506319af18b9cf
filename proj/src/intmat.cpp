#include "tropic/intmat.hpp"

#include <cstdlib>
#include <numeric>

#include "tropic/errors.hpp"

namespace tropic {

MatZ MatZ::identity(int n) {
  MatZ m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

MatZ MatZ::from_rows(const std::vector<VecZ>& rows) {
  if (rows.empty()) return MatZ();
  MatZ m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
  for (int i = 0; i < m.rows; ++i) {
    if (static_cast<int>(rows[i].size()) != m.cols)
      throw InternalError("ragged row list");
    for (int j = 0; j < m.cols; ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

MatZ MatZ::from_cols(const std::vector<VecZ>& cols) {
  if (cols.empty()) return MatZ();
  MatZ m(static_cast<int>(cols[0].size()), static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols; ++j) {
    if (static_cast<int>(cols[j].size()) != m.rows)
      throw InternalError("ragged column list");
    for (int i = 0; i < m.rows; ++i) m.at(i, j) = cols[j][i];
  }
  return m;
}

VecZ MatZ::row(int i) const {
  VecZ v(cols);
  for (int j = 0; j < cols; ++j) v[j] = at(i, j);
  return v;
}

VecZ MatZ::col(int j) const {
  VecZ v(rows);
  for (int i = 0; i < rows; ++i) v[i] = at(i, j);
  return v;
}

MatZ mat_mul(const MatZ& x, const MatZ& y) {
  if (x.cols != y.rows) throw InternalError("matrix shape mismatch in mul");
  MatZ r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      ZZ xv = x.at(i, k);
      if (xv == 0) continue;
      for (int j = 0; j < y.cols; ++j) r.at(i, j) += xv * y.at(k, j);
    }
  return r;
}

VecZ mat_apply(const MatZ& m, const VecZ& v) {
  if (m.cols != static_cast<int>(v.size()))
    throw InternalError("matrix shape mismatch in apply");
  VecZ r(m.rows, 0);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r[i] += m.at(i, j) * v[j];
  return r;
}

MatZ mat_transpose(const MatZ& m) {
  MatZ r(m.cols, m.rows);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) r.at(j, i) = m.at(i, j);
  return r;
}

MatZ mat_sub(const MatZ& x, const MatZ& y) {
  if (x.rows != y.rows || x.cols != y.cols)
    throw InternalError("matrix shape mismatch in sub");
  MatZ r(x.rows, x.cols);
  for (size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

ZZ mat_det(const MatZ& m) {
  if (m.rows != m.cols) throw InternalError("determinant of non-square matrix");
  int n = m.rows;
  if (n == 0) return 1;
  if (n == 1) return m.at(0, 0);
  if (n == 2) return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
  ZZ det = 0;
  for (int j = 0; j < n; ++j) {
    if (m.at(0, j) == 0) continue;
    MatZ minor(n - 1, n - 1);
    for (int i = 1; i < n; ++i) {
      int jj = 0;
      for (int k = 0; k < n; ++k) {
        if (k == j) continue;
        minor.at(i - 1, jj++) = m.at(i, k);
      }
    }
    ZZ term = m.at(0, j) * mat_det(minor);
    det += (j % 2 == 0) ? term : -term;
  }
  return det;
}

bool is_zero(const MatZ& m) {
  for (ZZ x : m.a)
    if (x != 0) return false;
  return true;
}

bool is_zero(const VecZ& v) {
  for (ZZ x : v)
    if (x != 0) return false;
  return true;
}

MatZ inverse_unimodular(const MatZ& m) {
  ZZ d = mat_det(m);
  if (d != 1 && d != -1) throw InternalError("matrix is not unimodular");
  int n = m.rows;
  MatZ inv(n, n);
  if (n == 1) {
    inv.at(0, 0) = d;
    return inv;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      MatZ minor(n - 1, n - 1);
      for (int r = 0, rr = 0; r < n; ++r) {
        if (r == j) continue;
        for (int c = 0, cc = 0; c < n; ++c) {
          if (c == i) continue;
          minor.at(rr, cc++) = m.at(r, c);
        }
        ++rr;
      }
      ZZ cof = mat_det(minor);
      if ((i + j) % 2 == 1) cof = -cof;
      inv.at(i, j) = cof * d;  // 1/d == d for d = +-1
    }
  return inv;
}

namespace {

struct SnfWork {
  MatZ u, s, v;

  void swap_rows(int i, int k) {
    if (i == k) return;
    for (int j = 0; j < s.cols; ++j) std::swap(s.at(i, j), s.at(k, j));
    for (int j = 0; j < u.cols; ++j) std::swap(u.at(i, j), u.at(k, j));
  }
  void swap_cols(int j, int l) {
    if (j == l) return;
    for (int i = 0; i < s.rows; ++i) std::swap(s.at(i, j), s.at(i, l));
    for (int i = 0; i < v.rows; ++i) std::swap(v.at(i, j), v.at(i, l));
  }
  void add_row(int i, int k, ZZ q) {  // row_i += q * row_k
    if (q == 0) return;
    for (int j = 0; j < s.cols; ++j) s.at(i, j) += q * s.at(k, j);
    for (int j = 0; j < u.cols; ++j) u.at(i, j) += q * u.at(k, j);
  }
  void add_col(int j, int l, ZZ q) {  // col_j += q * col_l
    if (q == 0) return;
    for (int i = 0; i < s.rows; ++i) s.at(i, j) += q * s.at(i, l);
    for (int i = 0; i < v.rows; ++i) v.at(i, j) += q * v.at(i, l);
  }
  void negate_row(int i) {
    for (int j = 0; j < s.cols; ++j) s.at(i, j) = -s.at(i, j);
    for (int j = 0; j < u.cols; ++j) u.at(i, j) = -u.at(i, j);
  }
};

}  // namespace

Snf smith_normal_form(const MatZ& m) {
  SnfWork w{MatZ::identity(m.rows), m, MatZ::identity(m.cols)};
  int n = std::min(m.rows, m.cols);
  for (int t = 0; t < n; ++t) {
    for (;;) {
      // Move the smallest nonzero entry of the trailing block to the pivot.
      int pi = -1, pj = -1;
      for (int i = t; i < m.rows; ++i)
        for (int j = t; j < m.cols; ++j) {
          ZZ x = std::llabs(w.s.at(i, j));
          if (x != 0 && (pi < 0 || x < std::llabs(w.s.at(pi, pj)))) {
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) {
        // Trailing block is zero: done with the whole matrix.
        t = n;
        break;
      }
      w.swap_rows(t, pi);
      w.swap_cols(t, pj);
      ZZ p = w.s.at(t, t);
      bool clean = true;
      for (int i = t + 1; i < m.rows; ++i) {
        ZZ q = w.s.at(i, t) / p;
        w.add_row(i, t, -q);
        if (w.s.at(i, t) != 0) clean = false;
      }
      for (int j = t + 1; j < m.cols; ++j) {
        ZZ q = w.s.at(t, j) / p;
        w.add_col(j, t, -q);
        if (w.s.at(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Pivot must divide every remaining entry for the divisor chain.
      bool divides = true;
      for (int i = t + 1; i < m.rows && divides; ++i)
        for (int j = t + 1; j < m.cols && divides; ++j)
          if (w.s.at(i, j) % p != 0) {
            w.add_row(t, i, 1);
            divides = false;
          }
      if (divides) break;
    }
    if (t >= n) break;
    if (w.s.at(t, t) < 0) w.negate_row(t);
  }
  if (mat_mul(mat_mul(w.u, m), w.v) != w.s)
    throw InternalError("smith normal form verification failed");
  return Snf{w.u, w.s, w.v};
}

std::vector<ZZ> elementary_divisors(const MatZ& m) {
  Snf f = smith_normal_form(m);
  std::vector<ZZ> d;
  int n = std::min(m.rows, m.cols);
  for (int i = 0; i < n; ++i)
    if (f.s.at(i, i) != 0) d.push_back(f.s.at(i, i));
  return d;
}

int mat_rank(const MatZ& m) {
  if (m.rows == 0 || m.cols == 0) return 0;
  return static_cast<int>(elementary_divisors(m).size());
}

std::vector<VecZ> kernel_basis(const MatZ& m) {
  Snf f = smith_normal_form(m);
  int r = 0;
  int n = std::min(m.rows, m.cols);
  while (r < n && f.s.at(r, r) != 0) ++r;
  std::vector<VecZ> basis;
  for (int j = r; j < m.cols; ++j) basis.push_back(f.v.col(j));
  return basis;
}

std::vector<VecZ> saturation_basis(const std::vector<VecZ>& generators, int dim) {
  MatZ m(dim, static_cast<int>(generators.size()));
  for (int j = 0; j < m.cols; ++j) {
    if (static_cast<int>(generators[j].size()) != dim)
      throw InternalError("generator dimension mismatch");
    for (int i = 0; i < dim; ++i) m.at(i, j) = generators[j][i];
  }
  if (m.cols == 0) return {};
  Snf f = smith_normal_form(m);
  int r = 0;
  int n = std::min(m.rows, m.cols);
  while (r < n && f.s.at(r, r) != 0) ++r;
  MatZ uinv = inverse_unimodular(f.u);
  std::vector<VecZ> basis;
  for (int j = 0; j < r; ++j) basis.push_back(uinv.col(j));
  return basis;
}

MatZ complete_primitive(const VecZ& v) {
  int n = static_cast<int>(v.size());
  if (is_zero(v)) throw InternalError("cannot complete the zero vector");
  if (content(v) != 1) throw InternalError("vector to complete is not primitive");
  MatZ col(n, 1);
  for (int i = 0; i < n; ++i) col.at(i, 0) = v[i];
  Snf f = smith_normal_form(col);
  // u * col * v = e1 with v = (+-1); hence col = +-(u^-1 e1).
  MatZ uinv = inverse_unimodular(f.u);
  if (f.v.at(0, 0) == -1)
    for (int i = 0; i < n; ++i) uinv.at(i, 0) = -uinv.at(i, 0);
  for (int i = 0; i < n; ++i)
    if (uinv.at(i, 0) != v[i]) throw InternalError("primitive completion failed");
  return uinv;
}

ZZ gcd_z(ZZ a, ZZ b) { return std::gcd(a, b); }

ZZ content(const VecZ& v) {
  ZZ g = 0;
  for (ZZ x : v) g = std::gcd(g, x);
  return g;
}

VecZ primitive(const VecZ& v) {
  ZZ g = content(v);
  if (g == 0) throw InternalError("primitive part of zero vector");
  VecZ r = v;
  for (ZZ& x : r) x /= g;
  return r;
}

bool solve_unique(const MatZ& m, const std::vector<Rat>& rhs, std::vector<Rat>& out) {
  if (m.rows != static_cast<int>(rhs.size()))
    throw InternalError("rhs dimension mismatch");
  int nr = m.rows, nc = m.cols;
  std::vector<std::vector<Rat>> aug(nr, std::vector<Rat>(nc + 1));
  for (int i = 0; i < nr; ++i) {
    for (int j = 0; j < nc; ++j) aug[i][j] = Rat(m.at(i, j));
    aug[i][nc] = rhs[i];
  }
  int row = 0;
  std::vector<int> pivot_col(nc, -1);
  for (int col = 0; col < nc && row < nr; ++col) {
    int p = -1;
    for (int i = row; i < nr; ++i)
      if (aug[i][col] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(aug[row], aug[p]);
    Rat inv = Rat(1) / aug[row][col];
    for (int j = col; j <= nc; ++j) aug[row][j] *= inv;
    for (int i = 0; i < nr; ++i) {
      if (i == row || aug[i][col] == 0) continue;
      Rat f = aug[i][col];
      for (int j = col; j <= nc; ++j) aug[i][j] -= f * aug[row][j];
    }
    pivot_col[col] = row;
    ++row;
  }
  for (int col = 0; col < nc; ++col)
    if (pivot_col[col] < 0) throw InternalError("solve_unique needs full column rank");
  for (int i = row; i < nr; ++i)
    if (aug[i][nc] != 0) return false;
  out.assign(nc, Rat(0));
  for (int col = 0; col < nc; ++col) out[col] = aug[pivot_col[col]][nc];
  return true;
}

}  // namespace tropic
