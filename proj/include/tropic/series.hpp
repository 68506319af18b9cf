#pragma once

#include <compare>
#include <map>
#include <string>

#include "tropic/rational.hpp"

namespace tropic {

// Exponent of a monomial c * t^t_deg * x^a * y^b.
struct ExpKey {
  int t_deg = 0;
  long long a = 0;
  long long b = 0;
  auto operator<=>(const ExpKey&) const = default;
};

// Element of Q[x^\pm, y^\pm][t] / (t^(order+1)), stored sparsely with no
// explicit zeros. All arithmetic drops monomials beyond the truncation order.
class Series {
 public:
  Series() = default;
  explicit Series(int order) : order_(order) {}

  static Series zero(int order) { return Series(order); }
  static Series one(int order);
  static Series monomial(int order, const Rat& c, int t_deg, long long a, long long b);

  int order() const { return order_; }
  const std::map<ExpKey, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rat coeff(int t_deg, long long a, long long b) const;
  void set_coeff(int t_deg, long long a, long long b, const Rat& c);

  // Terms of exact t-degree k, as a series of the same order.
  Series graded_part(int k) const;
  // Image in Q[...][t]/(t^(new_order+1)); new_order <= order.
  Series truncated(int new_order) const;
  // Lowest t-degree present, or order+1 if zero.
  int valuation() const;

  Series operator-() const;
  Series& operator+=(const Series& o);
  Series& operator-=(const Series& o);
  friend Series operator+(Series x, const Series& y) { return x += y; }
  friend Series operator-(Series x, const Series& y) { return x -= y; }
  friend Series operator*(const Series& x, const Series& y);
  Series& operator*=(const Series& o) { return *this = *this * o; }
  Series operator*(const Rat& c) const;

  bool operator==(const Series&) const = default;

  // Multiplicative inverse; the t^0 part must be a single monomial with
  // nonzero coefficient (a unit of the Laurent ring).
  Series inverse() const;
  // log(*this); requires *this = 1 + (higher t-order terms).
  Series log() const;
  // exp(*this); requires valuation >= 1.
  Series exp() const;
  // Integer powers, negative allowed when invertible.
  Series pow(long long e) const;

  std::string to_string() const;

 private:
  int order_ = 0;
  std::map<ExpKey, Rat> terms_;

  void check_order(const Series& o) const;
};

// Parse the textual form produced by Series::to_string into a series of the
// given truncation order. Accepts optional '*' between factors, signs, and
// explicit '^' exponents; throws ParseError with position info.
Series parse_series(const std::string& text, int order);

}  // namespace tropic
