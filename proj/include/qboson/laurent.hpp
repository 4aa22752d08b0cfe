#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qboson/errors.hpp"

namespace qboson {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Laurent polynomials in q with integer coefficients.  Dense storage with an
// exponent offset; empty coefficient vector means 0, otherwise both ends are
// nonzero.
class Laurent {
 public:
  Laurent() = default;
  Laurent(long long c) {
    if (c != 0) c_.push_back(BigInt(c));
  }
  explicit Laurent(const BigInt& c) {
    if (c != 0) c_.push_back(c);
  }

  static Laurent monomial(const BigInt& c, int e) {
    Laurent r;
    if (c != 0) {
      r.low_ = e;
      r.c_.push_back(c);
    }
    return r;
  }

  bool zero() const { return c_.empty(); }
  bool is_constant() const { return c_.empty() || (c_.size() == 1 && low_ == 0); }
  bool is_one() const { return c_.size() == 1 && low_ == 0 && c_[0] == 1; }

  int low() const { return low_; }
  int high() const { return low_ + static_cast<int>(c_.size()) - 1; }
  int num_terms() const {
    int n = 0;
    for (const auto& c : c_)
      if (c != 0) ++n;
    return n;
  }

  BigInt coeff(int e) const {
    if (zero() || e < low_ || e > high()) return BigInt(0);
    return c_[static_cast<size_t>(e - low_)];
  }

  Laurent shifted(int k) const {
    Laurent r = *this;
    if (!r.zero()) r.low_ += k;
    return r;
  }

  Laurent operator-() const {
    Laurent r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }

  Laurent& operator+=(const Laurent& o) {
    if (o.zero()) return *this;
    if (zero()) {
      *this = o;
      return *this;
    }
    int nl = std::min(low_, o.low_);
    int nh = std::max(high(), o.high());
    std::vector<BigInt> nc(static_cast<size_t>(nh - nl + 1));
    for (int e = low_; e <= high(); ++e) nc[static_cast<size_t>(e - nl)] = coeff(e);
    for (int e = o.low_; e <= o.high(); ++e) nc[static_cast<size_t>(e - nl)] += o.coeff(e);
    low_ = nl;
    c_ = std::move(nc);
    trim();
    return *this;
  }
  Laurent& operator-=(const Laurent& o) { return *this += -o; }

  friend Laurent operator+(Laurent a, const Laurent& b) {
    a += b;
    return a;
  }
  friend Laurent operator-(Laurent a, const Laurent& b) {
    a -= b;
    return a;
  }

  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    if (a.zero() || b.zero()) return Laurent();
    Laurent r;
    r.low_ = a.low_ + b.low_;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, BigInt(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) {
        if (b.c_[j] == 0) continue;
        r.c_[i + j] += a.c_[i] * b.c_[j];
      }
    }
    r.trim();
    return r;
  }
  Laurent& operator*=(const Laurent& o) {
    *this = *this * o;
    return *this;
  }

  Laurent times_int(const BigInt& k) const {
    if (k == 0) return Laurent();
    Laurent r = *this;
    for (auto& c : r.c_) c *= k;
    return r;
  }

  bool operator==(const Laurent& o) const {
    return (zero() && o.zero()) || (low_ == o.low_ && c_ == o.c_);
  }
  bool operator!=(const Laurent& o) const { return !(*this == o); }

  BigInt value_at_one() const {
    BigInt s = 0;
    for (const auto& c : c_) s += c;
    return s;
  }

  // gcd of |coefficients|; 0 for the zero polynomial.
  BigInt content() const {
    BigInt g = 0;
    for (const auto& c : c_) g = boost::multiprecision::gcd(g, c);
    return boost::multiprecision::abs(g);
  }

  // Exact division in Z[q^{+-1}]; nullopt when the quotient does not exist
  // there.  Works coefficient-exactly: when the quotient exists over Q with
  // integer coefficients, top-down long division recovers it.
  static std::optional<Laurent> div_exact(const Laurent& a, const Laurent& b) {
    if (b.zero()) throw Error("Laurent: division by zero");
    if (a.zero()) return Laurent();
    Laurent rem = a.shifted(-a.low_);
    Laurent den = b.shifted(-b.low_);
    if (rem.c_.size() < den.c_.size()) return std::nullopt;
    int qlow = a.low_ - b.low_;
    std::vector<BigInt> quot(rem.c_.size() - den.c_.size() + 1, BigInt(0));
    const BigInt& lead = den.c_.back();
    while (!rem.zero() && rem.high() >= den.high()) {
      BigInt top = rem.c_.back();
      if (top % lead != 0) return std::nullopt;
      BigInt q = top / lead;
      int shift = rem.high() - den.high();
      quot[static_cast<size_t>(shift)] = q;
      rem -= den.shifted(shift).times_int(q);
      if (!rem.zero() && rem.high() >= den.high() + static_cast<int>(quot.size()))
        return std::nullopt;  // unreachable guard
    }
    if (!rem.zero()) return std::nullopt;
    Laurent r;
    r.low_ = qlow;
    r.c_ = std::move(quot);
    r.trim();
    return r;
  }

  // Primitive part with positive leading coefficient (ignores q-power units).
  Laurent primitive() const {
    if (zero()) return Laurent();
    BigInt c = content();
    Laurent r = shifted(-low_);
    for (auto& x : r.c_) x /= c;
    if (r.c_.back() < 0)
      for (auto& x : r.c_) x = -x;
    return r;
  }

  // Polynomial gcd (primitive Euclid with cross-multiplied remainders);
  // result is primitive with positive leading coefficient, q-powers dropped.
  static Laurent gcd(const Laurent& a, const Laurent& b) {
    Laurent A = a.primitive();
    Laurent B = b.primitive();
    if (A.zero()) return B;
    if (B.zero()) return A;
    if (A.c_.size() < B.c_.size()) std::swap(A, B);
    while (!B.zero()) {
      Laurent R = A;
      while (!R.zero() && R.high() >= B.high()) {
        BigInt lr = R.c_.back();
        R = R.times_int(B.c_.back()) - B.shifted(R.high() - B.high()).times_int(lr);
      }
      A = B;
      B = R.primitive();
    }
    return A.primitive();
  }

  // Sparse canonical text form "e:c,e:c" (ascending exponents), "0" for zero.
  std::string str() const {
    if (zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int e = low_; e <= high(); ++e) {
      const BigInt c = coeff(e);
      if (c == 0) continue;
      if (!first) os << ",";
      os << e << ":" << c;
      first = false;
    }
    return os.str();
  }

  static Laurent parse(const std::string& s) {
    Laurent r;
    if (s == "0" || s.empty()) return r;
    std::istringstream is(s);
    std::string term;
    while (std::getline(is, term, ',')) {
      auto colon = term.find(':');
      if (colon == std::string::npos) throw Error("Laurent::parse: bad term '" + term + "'");
      int e = std::stoi(term.substr(0, colon));
      BigInt c(term.substr(colon + 1));
      r += monomial(c, e);
    }
    return r;
  }

 private:
  void trim() {
    size_t b = 0;
    while (b < c_.size() && c_[b] == 0) ++b;
    size_t t = c_.size();
    while (t > b && c_[t - 1] == 0) --t;
    if (b == t) {
      c_.clear();
      low_ = 0;
      return;
    }
    if (b > 0 || t < c_.size()) {
      std::vector<BigInt> nc(c_.begin() + static_cast<long>(b), c_.begin() + static_cast<long>(t));
      c_ = std::move(nc);
      low_ += static_cast<int>(b);
    }
  }

  int low_ = 0;
  std::vector<BigInt> c_;
};

}  // namespace qboson
