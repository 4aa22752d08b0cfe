#pragma once

#include <string>
#include <utility>

#include "qboson/laurent.hpp"

namespace qboson {

struct IntegralityCertificate {
  bool in_A = false;
  int one_minus_q_valuation = 0;
};

// Exact elements of Q(q), stored as a reduced fraction of integer Laurent
// polynomials.  Canonical form: the denominator is a genuine polynomial with
// nonzero positive constant term, gcd(num, den) = 1 in Q[q] and the joint
// integer content is 1.  Equality is representation equality.
class QScalar {
 public:
  QScalar() : num_(), den_(1) {}
  QScalar(long long n) : num_(n), den_(1) {}
  explicit QScalar(const BigInt& n) : num_(n), den_(1) {}
  explicit QScalar(const BigRat& r)
      : num_(boost::multiprecision::numerator(r)), den_(boost::multiprecision::denominator(r)) {
    reduce();
  }

  static QScalar of(Laurent n) {
    QScalar s;
    s.num_ = std::move(n);
    s.den_ = Laurent(1);
    return s;
  }
  static QScalar ratio(Laurent n, Laurent d) {
    QScalar s;
    s.num_ = std::move(n);
    s.den_ = std::move(d);
    s.reduce();
    return s;
  }
  static QScalar q_power(int e) { return of(Laurent::monomial(1, e)); }

  const Laurent& num() const { return num_; }
  const Laurent& den() const { return den_; }

  bool is_zero() const { return num_.zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }

  QScalar operator-() const {
    QScalar r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend QScalar operator+(const QScalar& a, const QScalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return ratio(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend QScalar operator-(const QScalar& a, const QScalar& b) { return a + (-b); }
  friend QScalar operator*(const QScalar& a, const QScalar& b) {
    if (a.is_zero() || b.is_zero()) return QScalar();
    return ratio(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend QScalar operator/(const QScalar& a, const QScalar& b) {
    if (b.is_zero()) throw Error("QScalar: division by zero");
    if (a.is_zero()) return QScalar();
    return ratio(a.num_ * b.den_, a.den_ * b.num_);
  }
  QScalar& operator+=(const QScalar& o) { return *this = *this + o; }
  QScalar& operator-=(const QScalar& o) { return *this = *this - o; }
  QScalar& operator*=(const QScalar& o) { return *this = *this * o; }
  QScalar& operator/=(const QScalar& o) { return *this = *this / o; }

  QScalar inverse() const { return QScalar(1) / *this; }

  bool operator==(const QScalar& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const QScalar& o) const { return !(*this == o); }

  BigRat eval_at_one() const {
    BigInt d = den_.value_at_one();
    if (d == 0) throw PoleAtOneError("QScalar: pole at q = 1 for " + str());
    BigInt n = num_.value_at_one();
    if (d < 0) {
      n = -n;
      d = -d;
    }
    return BigRat(n, d);
  }

  // Membership in A = Q[q^{+-1}] localized at [3]! = [2][3].  The reduced
  // denominator must divide q^m ([2][3])^k, i.e. factor into
  // q^2+1, q^2+q+1, q^2-q+1 (q-powers were already normalized away).
  IntegralityCertificate integrality() const {
    IntegralityCertificate cert;
    if (is_zero()) {
      cert.in_A = true;
      cert.one_minus_q_valuation = 0;
      return cert;
    }
    Laurent d = den_;
    static const Laurent f1 = Laurent::parse("0:1,2:1");       // q^2 + 1
    static const Laurent f2 = Laurent::parse("0:1,1:1,2:1");   // q^2 + q + 1
    static const Laurent f3 = Laurent::parse("0:1,1:-1,2:1");  // q^2 - q + 1
    for (const Laurent* f : {&f1, &f2, &f3}) {
      for (;;) {
        auto quo = Laurent::div_exact(d, *f);
        if (!quo) break;
        d = *quo;
      }
    }
    cert.in_A = d.is_constant();
    if (cert.in_A) {
      static const Laurent one_minus_q = Laurent::parse("0:1,1:-1");
      Laurent n = num_;
      int v = 0;
      for (;;) {
        auto quo = Laurent::div_exact(n, one_minus_q);
        if (!quo) break;
        n = *quo;
        ++v;
      }
      cert.one_minus_q_valuation = v;
    }
    return cert;
  }

  int one_minus_q_valuation() const {
    if (is_zero()) throw Error("one_minus_q_valuation: undefined on 0");
    IntegralityCertificate c = integrality();
    if (!c.in_A) throw NotInIntegralFormError("one_minus_q_valuation: " + str() + " is not in A");
    return c.one_minus_q_valuation;
  }

  // Whether the denominator is a unit of Q[q^{+-1}] (i.e. a nonzero constant;
  // q-powers already live in the numerator).  Used to examine, per LS
  // coefficient, whether the localization at [3]! was actually needed.
  bool denominator_is_laurent_unit() const { return den_.is_constant(); }

  std::string str() const { return num_.str() + "/" + den_.str(); }

  static QScalar parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) throw Error("QScalar::parse: missing '/' in '" + s + "'");
    return ratio(Laurent::parse(s.substr(0, slash)), Laurent::parse(s.substr(slash + 1)));
  }

 private:
  void reduce() {
    if (den_.zero()) throw Error("QScalar: zero denominator");
    if (num_.zero()) {
      den_ = Laurent(1);
      return;
    }
    // Denominator becomes a polynomial with nonzero constant term.
    int k = den_.low();
    if (k != 0) {
      den_ = den_.shifted(-k);
      num_ = num_.shifted(-k);
    }
    Laurent npoly = num_.shifted(-num_.low());
    Laurent g = Laurent::gcd(npoly, den_);
    if (!g.is_one()) {
      auto qn = Laurent::div_exact(num_, g);
      auto qd = Laurent::div_exact(den_, g);
      if (!qn || !qd) throw Error("QScalar::reduce: gcd division failed");
      num_ = *qn;
      den_ = *qd;
    }
    BigInt c = boost::multiprecision::gcd(num_.content(), den_.content());
    if (c > 1) {
      auto qn = Laurent::div_exact(num_, Laurent(c));
      auto qd = Laurent::div_exact(den_, Laurent(c));
      num_ = *qn;
      den_ = *qd;
    }
    if (den_.coeff(den_.low()) < 0) {
      num_ = -num_;
      den_ = -den_;
    }
  }

  Laurent num_;
  Laurent den_;
};

// ---- quantum combinatorics ------------------------------------------------

// [n]_lambda for a root of squared length root_len_sq in {2,4,6}; plain [n]
// is root_len_sq = 2.  Always a Laurent polynomial.
inline QScalar quantum_integer(int n, int root_len_sq = 2) {
  if (n < 0) throw Error("quantum_integer: negative n");
  int d = root_len_sq / 2;
  if (d < 1 || d > 3 || root_len_sq % 2 != 0) throw Error("quantum_integer: bad root length");
  Laurent r;
  for (int i = 0; i < n; ++i) r += Laurent::monomial(1, d * (n - 1 - 2 * i));
  return QScalar::of(r);
}

inline QScalar quantum_factorial(int n, int root_len_sq = 2) {
  QScalar r(1);
  for (int i = 1; i <= n; ++i) r *= quantum_integer(i, root_len_sq);
  return r;
}

inline QScalar quantum_binomial(int m, int n, int root_len_sq = 2) {
  if (n < 0 || n > m) throw Error("quantum_binomial: need 0 <= n <= m");
  QScalar r = quantum_factorial(m, root_len_sq) /
              (quantum_factorial(n, root_len_sq) * quantum_factorial(m - n, root_len_sq));
  if (!r.den().is_one()) throw Error("quantum_binomial: division left a remainder");
  return r;
}

// q_lambda - q_lambda^{-1} for squared length root_len_sq.
inline QScalar q_lambda_minus_inverse(int root_len_sq) {
  int d = root_len_sq / 2;
  return QScalar::q_power(d) - QScalar::q_power(-d);
}

}  // namespace qboson
