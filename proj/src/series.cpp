#include "tropic/series.hpp"

#include <cctype>
#include <vector>

#include "tropic/errors.hpp"

namespace tropic {

Series Series::one(int order) { return monomial(order, Rat(1), 0, 0, 0); }

Series Series::monomial(int order, const Rat& c, int t_deg, long long a, long long b) {
  Series s(order);
  s.set_coeff(t_deg, a, b, c);
  return s;
}

Rat Series::coeff(int t_deg, long long a, long long b) const {
  auto it = terms_.find(ExpKey{t_deg, a, b});
  return it == terms_.end() ? Rat(0) : it->second;
}

void Series::set_coeff(int t_deg, long long a, long long b, const Rat& c) {
  if (t_deg < 0 || t_deg > order_)
    throw InternalError("series coefficient outside truncation range");
  ExpKey k{t_deg, a, b};
  if (c == 0)
    terms_.erase(k);
  else
    terms_[k] = c;
}

Series Series::graded_part(int k) const {
  Series r(order_);
  for (const auto& [key, c] : terms_)
    if (key.t_deg == k) r.terms_[key] = c;
  return r;
}

Series Series::truncated(int new_order) const {
  if (new_order > order_)
    throw InternalError("cannot extend series truncation order");
  Series r(new_order);
  for (const auto& [key, c] : terms_)
    if (key.t_deg <= new_order) r.terms_[key] = c;
  return r;
}

int Series::valuation() const {
  if (terms_.empty()) return order_ + 1;
  return terms_.begin()->first.t_deg;
}

void Series::check_order(const Series& o) const {
  if (order_ != o.order_) throw InternalError("series truncation order mismatch");
}

Series Series::operator-() const {
  Series r(order_);
  for (const auto& [key, c] : terms_) r.terms_[key] = -c;
  return r;
}

Series& Series::operator+=(const Series& o) {
  check_order(o);
  for (const auto& [key, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(key, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

Series& Series::operator-=(const Series& o) {
  check_order(o);
  for (const auto& [key, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(key, -c);
    if (!inserted) {
      it->second -= c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

Series operator*(const Series& x, const Series& y) {
  x.check_order(y);
  Series r(x.order_);
  for (const auto& [kx, cx] : x.terms_) {
    if (kx.t_deg > x.order_) continue;
    for (const auto& [ky, cy] : y.terms_) {
      int td = kx.t_deg + ky.t_deg;
      if (td > x.order_) break;  // y keys sorted by t_deg first
      ExpKey k{td, kx.a + ky.a, kx.b + ky.b};
      auto [it, inserted] = r.terms_.try_emplace(k, cx * cy);
      if (!inserted) {
        it->second += cx * cy;
        if (it->second == 0) r.terms_.erase(it);
      }
    }
  }
  return r;
}

Series Series::operator*(const Rat& c) const {
  Series r(order_);
  if (c == 0) return r;
  for (const auto& [key, v] : terms_) r.terms_[key] = v * c;
  return r;
}

Series Series::inverse() const {
  Series head = graded_part(0);
  if (head.terms_.size() != 1)
    throw InternalError("series inverse needs a single-monomial unit part");
  const auto& [uk, uc] = *head.terms_.begin();
  Series minv = monomial(order_, Rat(1) / uc, 0, -uk.a, -uk.b);
  Series v = minv * *this - one(order_);  // valuation >= 1 by construction
  // Horner form of the alternating geometric series 1 - v + v^2 - ...
  Series r = one(order_);
  for (int d = 0; d < order_; ++d) r = one(order_) - v * r;
  return r * minv;
}

Series Series::log() const {
  if (coeff(0, 0, 0) != 1 || graded_part(0).terms_.size() != 1)
    throw InternalError("series log needs constant part 1");
  Series v = *this - one(order_);
  Series sum(order_);
  Series p = one(order_);
  for (int d = 1; d <= order_; ++d) {
    p = p * v;
    if (p.is_zero()) break;
    Rat c = Rat(d % 2 == 1 ? 1 : -1) / d;
    sum += p * c;
  }
  return sum;
}

Series Series::exp() const {
  if (valuation() < 1) throw InternalError("series exp needs positive valuation");
  Series sum = one(order_);
  Series p = one(order_);
  Rat fact(1);
  for (int d = 1; d <= order_; ++d) {
    p = p * *this;
    if (p.is_zero()) break;
    fact *= d;
    sum += p * (Rat(1) / fact);
  }
  return sum;
}

Series Series::pow(long long e) const {
  if (e < 0) return inverse().pow(-e);
  Series r = one(order_);
  Series base = *this;
  unsigned long long n = static_cast<unsigned long long>(e);
  while (n > 0) {
    if (n & 1ULL) r = r * base;
    n >>= 1ULL;
    if (n > 0) base = base * base;
  }
  return r;
}

namespace {

void append_power(std::vector<std::string>& parts, const char* var, long long e) {
  if (e == 0) return;
  std::string p = var;
  if (e != 1) p += "^" + std::to_string(e);
  parts.push_back(std::move(p));
}

}  // namespace

std::string Series::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    bool neg = c < 0;
    Rat abs = neg ? Rat(-c) : c;
    std::vector<std::string> parts;
    append_power(parts, "t", key.t_deg);
    append_power(parts, "x", key.a);
    append_power(parts, "y", key.b);
    std::string piece;
    if (parts.empty()) {
      piece = rat_str(abs);
    } else {
      if (abs != 1) piece = rat_str(abs) + "*";
      for (size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) piece += "*";
        piece += parts[i];
      }
    }
    if (first) {
      out = (neg ? "-" : "") + piece;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + piece;
    }
  }
  return out;
}

namespace {

struct Cursor {
  const std::string& text;
  size_t i = 0;

  bool eof() const { return i >= text.size(); }
  char peek() const { return eof() ? '\0' : text[i]; }
  void skip_ws() {
    while (!eof() && (text[i] == ' ' || text[i] == '\t' || text[i] == '\n' || text[i] == '\r'))
      ++i;
  }
  [[noreturn]] void fail(const std::string& msg, size_t at) const {
    int line = 1, col = 1;
    for (size_t k = 0; k < at && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(msg, line, col);
  }

  long long parse_uint() {
    size_t start = i;
    if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
      fail("expected a digit", i);
    long long v = 0;
    while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) {
      if (v > 1000000000000000LL) fail("integer literal too large", start);
      v = v * 10 + (text[i] - '0');
      ++i;
    }
    return v;
  }

  long long parse_int() {
    long long sign = 1;
    if (peek() == '-') {
      sign = -1;
      ++i;
    } else if (peek() == '+') {
      ++i;
    }
    return sign * parse_uint();
  }
};

bool starts_factor(char c) {
  return std::isdigit(static_cast<unsigned char>(c)) || c == 't' || c == 'x' || c == 'y';
}

}  // namespace

Series parse_series(const std::string& text, int order) {
  if (order < 0) throw InternalError("negative truncation order");
  Cursor cur{text};
  Series result(order);
  cur.skip_ws();
  if (cur.eof()) cur.fail("empty series", cur.i);
  bool negative = false;
  if (cur.peek() == '-') {
    negative = true;
    ++cur.i;
  } else if (cur.peek() == '+') {
    ++cur.i;
  }
  for (;;) {
    cur.skip_ws();
    // One term: a nonempty product of factors.
    Rat c(1);
    long long t_deg = 0, a = 0, b = 0;
    bool want_factor = true;
    while (want_factor) {
      size_t fstart = cur.i;
      char ch = cur.peek();
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        long long p = cur.parse_uint();
        if (cur.peek() == '/') {
          ++cur.i;
          size_t dstart = cur.i;
          long long q = cur.parse_uint();
          if (q == 0) cur.fail("zero denominator", dstart);
          c *= Rat(p, q);
        } else {
          c *= p;
        }
      } else if (ch == 't' || ch == 'x' || ch == 'y') {
        ++cur.i;
        long long e = 1;
        if (cur.peek() == '^') {
          ++cur.i;
          e = cur.parse_int();
        }
        if (ch == 't') {
          if (e < 0) cur.fail("negative power of t", fstart);
          t_deg += e;
        } else if (ch == 'x') {
          a += e;
        } else {
          b += e;
        }
      } else {
        cur.fail("expected a number or one of t, x, y", cur.i);
      }
      // Decide whether another factor follows.
      size_t save = cur.i;
      cur.skip_ws();
      if (cur.peek() == '*') {
        ++cur.i;
        cur.skip_ws();
        if (!starts_factor(cur.peek())) cur.fail("expected a factor after '*'", cur.i);
        want_factor = true;
      } else if (starts_factor(cur.peek())) {
        want_factor = true;
      } else {
        cur.i = save;
        want_factor = false;
      }
    }
    if (negative) c = -c;
    if (t_deg <= order) {
      Series term(order);
      term.set_coeff(static_cast<int>(t_deg), a, b, c);
      result += term;
    }
    cur.skip_ws();
    if (cur.eof()) break;
    if (cur.peek() == '+') {
      negative = false;
      ++cur.i;
    } else if (cur.peek() == '-') {
      negative = true;
      ++cur.i;
    } else {
      cur.fail("expected '+', '-', or end of series", cur.i);
    }
  }
  return result;
}

}  // namespace tropic
