#pragma once

#include <vector>

#include "tropic/rational.hpp"

namespace tropic {

// Small dense integer matrices (dimensions <= 5 in practice). Entries stay tiny,
// so plain 64-bit arithmetic is fine everywhere except determinants of rational
// systems, which go through Rat.
using ZZ = long long;
using VecZ = std::vector<ZZ>;

struct MatZ {
  int rows = 0;
  int cols = 0;
  std::vector<ZZ> a;

  MatZ() = default;
  MatZ(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}

  ZZ& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  ZZ at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  bool operator==(const MatZ&) const = default;

  static MatZ identity(int n);
  static MatZ from_rows(const std::vector<VecZ>& rows);
  static MatZ from_cols(const std::vector<VecZ>& cols);
  VecZ row(int i) const;
  VecZ col(int j) const;
};

MatZ mat_mul(const MatZ& x, const MatZ& y);
VecZ mat_apply(const MatZ& m, const VecZ& v);
MatZ mat_transpose(const MatZ& m);
MatZ mat_sub(const MatZ& x, const MatZ& y);
ZZ mat_det(const MatZ& m);
int mat_rank(const MatZ& m);
bool is_zero(const MatZ& m);

// Inverse of a matrix with determinant +-1; throws InternalError otherwise.
MatZ inverse_unimodular(const MatZ& m);

// u * a * v = s with u, v unimodular and s diagonal, s[i] | s[i+1], s[i] >= 0.
struct Snf {
  MatZ u, s, v;
};
Snf smith_normal_form(const MatZ& m);

// Nonzero diagonal entries of the Smith form.
std::vector<ZZ> elementary_divisors(const MatZ& m);

// Basis of the saturated integer kernel {x : m x = 0}.
std::vector<VecZ> kernel_basis(const MatZ& m);

// Basis of span_Q(columns) intersected with Z^rows.
std::vector<VecZ> saturation_basis(const std::vector<VecZ>& generators, int dim);

// Unimodular matrix whose first column is v (v must be primitive).
MatZ complete_primitive(const VecZ& v);

ZZ gcd_z(ZZ a, ZZ b);
ZZ content(const VecZ& v);
VecZ primitive(const VecZ& v);  // v / content, throws on zero vector
bool is_zero(const VecZ& v);

// Solve m x = rhs over the rationals; returns false if inconsistent.
// Requires the solution to be unique (full column rank).
bool solve_unique(const MatZ& m, const std::vector<Rat>& rhs, std::vector<Rat>& out);

}  // namespace tropic
