#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qboson/wordalg.hpp"

namespace qboson {

enum class Side { E, F };
enum class MonomialOrder {
  Reversed,  // X^d = X_N^{d_N} ... X_1^{d_1} (main-text convention)
  Forward,   // X^d = X_1^{d_1} ... X_N^{d_N} (straightening-law variant)
};

inline std::string side_name(Side s) { return s == Side::E ? "E" : "F"; }
inline std::string order_name(MonomialOrder o) {
  return o == MonomialOrder::Reversed ? "reversed" : "forward";
}

using ExpVec = std::vector<int>;

// Root vectors and PBW machinery attached to one reduced word for w0.
class PBWBasis {
 public:
  PBWBasis(const RootDatum& datum, ReducedWord word)
      : datum_(&datum), word_(std::move(word)), engine_(datum) {
    roots_ = positive_roots_from_word(datum, word_);
    const int rank = datum.rank();
    for (int k = 0; k < size(); ++k) {
      UElement e = UElement::generator_e(rank, word_.letters[static_cast<size_t>(k)]);
      UElement f = UElement::generator_f(rank, word_.letters[static_cast<size_t>(k)]);
      for (int t = k; t-- > 0;) {
        e = braid_T(datum, word_.letters[static_cast<size_t>(t)], e);
        f = braid_T(datum, word_.letters[static_cast<size_t>(t)], f);
      }
      check_root_vector(e, roots_[static_cast<size_t>(k)], /*e_side=*/true, k);
      check_root_vector(f, roots_[static_cast<size_t>(k)], /*e_side=*/false, k);
      e_vectors_.push_back(std::move(e));
      f_vectors_.push_back(std::move(f));
    }
    cross_check_diagonal();
  }

  explicit PBWBasis(const RootDatum& datum) : PBWBasis(datum, canonical_w0_word(datum)) {}

  const RootDatum& datum() const { return *datum_; }
  const ReducedWord& word() const { return word_; }
  int size() const { return static_cast<int>(word_.letters.size()); }
  const LatticeVector& root(int k) const { return roots_[static_cast<size_t>(k)]; }
  const std::vector<LatticeVector>& roots() const { return roots_; }
  const UElement& e_root_vector(int k) const { return e_vectors_[static_cast<size_t>(k)]; }
  const UElement& f_root_vector(int k) const { return f_vectors_[static_cast<size_t>(k)]; }
  int root_len_sq(int k) const { return datum_->root_len_sq(root(k)); }

  // Index of the positive root equal to `v` in this enumeration, or -1.
  int index_of_root(const LatticeVector& v) const {
    for (int k = 0; k < size(); ++k)
      if (roots_[static_cast<size_t>(k)] == v) return k;
    return -1;
  }

  LatticeVector weight_of(const ExpVec& d) const {
    LatticeVector w = LatticeVector::zero(datum_->rank());
    for (int k = 0; k < size(); ++k)
      if (d[static_cast<size_t>(k)] != 0) w = w + roots_[static_cast<size_t>(k)].scaled(d[static_cast<size_t>(k)]);
    return w;
  }

  static int total_degree(const ExpVec& d) {
    int s = 0;
    for (int x : d) s += x;
    return s;
  }

  // All d >= 0 with sum d_k lambda_k = mu, sorted; cached per weight.
  const std::vector<ExpVec>& exponents_of_weight(const LatticeVector& mu) const {
    auto it = weight_exps_.find(mu);
    if (it != weight_exps_.end()) return it->second;
    std::vector<ExpVec> out;
    ExpVec cur(static_cast<size_t>(size()), 0);
    enumerate(mu, 0, cur, out);
    std::sort(out.begin(), out.end());
    return weight_exps_.emplace(mu, std::move(out)).first->second;
  }

  // E^d = E_N^{d_N} ... E_1^{d_1} as a word-level element (cached).
  const UElement& e_monomial(const ExpVec& d) const { return monomial(d, Side::E, MonomialOrder::Reversed); }
  const UElement& f_monomial(const ExpVec& d) const { return monomial(d, Side::F, MonomialOrder::Reversed); }
  const UElement& f_monomial_forward(const ExpVec& d) const {
    return monomial(d, Side::F, MonomialOrder::Forward);
  }
  const UElement& e_monomial_forward(const ExpVec& d) const {
    return monomial(d, Side::E, MonomialOrder::Forward);
  }

  // <F_{lambda_k}^m, E_{lambda_k}^m> = (-1)^m q_k^{m(m-1)/2} [m]_k! /
  // (q_k - q_k^{-1})^m
  QScalar diagonal_single(int k, int m) const {
    int len = root_len_sq(k);
    int dk = len / 2;
    QScalar v = quantum_factorial(m, len) * QScalar::q_power(dk * m * (m - 1) / 2);
    QScalar denom(1);
    for (int t = 0; t < m; ++t) denom *= q_lambda_minus_inverse(len);
    v /= denom;
    if (m % 2 == 1) v = -v;
    return v;
  }

  QScalar diagonal(const ExpVec& d) const {
    QScalar v(1);
    for (int k = 0; k < size(); ++k) v *= diagonal_single(k, d[static_cast<size_t>(k)]);
    return v;
  }

  QScalar factorial_of(const ExpVec& d) const {
    QScalar v(1);
    for (int k = 0; k < size(); ++k) v *= quantum_factorial(d[static_cast<size_t>(k)], root_len_sq(k));
    return v;
  }

  PairingEngine& engine() const { return engine_; }
  QScalar pair(const UElement& y, const UElement& x) const { return engine_.pair(y, x); }

 private:
  void check_root_vector(const UElement& v, const LatticeVector& lambda, bool e_side, int k) const {
    for (const auto& [w, c] : v.terms()) {
      if (e_side ? !w.pure_e() : !w.pure_f())
        throw ImpureRootVectorError("root vector " + std::to_string(k + 1) +
                                    " kept stray letters: " + v.str());
      if (w.weight() != (e_side ? lambda : -lambda))
        throw Error("root vector " + std::to_string(k + 1) + " has wrong weight");
    }
    if (v.is_zero()) throw Error("root vector vanished");
  }

  // The closed diagonal form against the recursive pairing, at small sizes.
  void cross_check_diagonal() const {
    for (int k = 0; k < size(); ++k) {
      int h = root(k).height();
      for (int m = 1; m <= 3 && m * h <= 6; ++m) {
        ExpVec d(static_cast<size_t>(size()), 0);
        d[static_cast<size_t>(k)] = m;
        QScalar recursive = engine_.pair(f_monomial(d), e_monomial(d));
        if (recursive != diagonal_single(k, m))
          throw Error("diagonal pairing closed form mismatch at root " + std::to_string(k + 1) +
                      ", power " + std::to_string(m));
      }
    }
  }

  void enumerate(const LatticeVector& remaining, int k, ExpVec& cur,
                 std::vector<ExpVec>& out) const {
    if (remaining.is_zero()) {
      out.push_back(cur);
      return;
    }
    if (k >= size()) return;
    if (!remaining.nonneg()) return;
    const LatticeVector& lam = roots_[static_cast<size_t>(k)];
    LatticeVector left = remaining;
    int m = 0;
    for (;;) {
      cur[static_cast<size_t>(k)] = m;
      enumerate(left, k + 1, cur, out);
      left = left - lam;
      ++m;
      if (!left.nonneg()) break;
    }
    cur[static_cast<size_t>(k)] = 0;
  }

  const UElement& monomial(const ExpVec& d, Side side, MonomialOrder order) const {
    auto& cache = monomial_cache_[{static_cast<int>(side), static_cast<int>(order)}];
    auto it = cache.find(d);
    if (it != cache.end()) return it->second;
    UElement value(datum_->rank());
    if (total_degree(d) == 0) {
      value = UElement::unit(datum_->rank());
    } else {
      // Reversed: rightmost factor has the smallest index; forward: largest.
      int k = -1;
      if (order == MonomialOrder::Reversed) {
        for (int t = 0; t < size(); ++t)
          if (d[static_cast<size_t>(t)] > 0) {
            k = t;
            break;
          }
      } else {
        for (int t = size(); t-- > 0;)
          if (d[static_cast<size_t>(t)] > 0) {
            k = t;
            break;
          }
      }
      ExpVec d2 = d;
      d2[static_cast<size_t>(k)] -= 1;
      const UElement& head = monomial(d2, side, order);
      const UElement& gen = side == Side::E ? e_vectors_[static_cast<size_t>(k)]
                                            : f_vectors_[static_cast<size_t>(k)];
      value = multiply(*datum_, head, gen);
    }
    return cache.emplace(d, std::move(value)).first->second;
  }

  const RootDatum* datum_;
  ReducedWord word_;
  std::vector<LatticeVector> roots_;
  std::vector<UElement> e_vectors_, f_vectors_;
  mutable PairingEngine engine_;
  mutable std::map<LatticeVector, std::vector<ExpVec>> weight_exps_;
  mutable std::map<std::pair<int, int>, std::map<ExpVec, UElement>> monomial_cache_;
};

// Sparse element in PBW coordinates.
class PBWElement {
 public:
  PBWElement(const PBWBasis& basis, Side side, MonomialOrder order)
      : basis_(&basis), side_(side), order_(order) {}

  const PBWBasis& basis() const { return *basis_; }
  Side side() const { return side_; }
  MonomialOrder order() const { return order_; }
  const std::map<ExpVec, QScalar>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  void add(const ExpVec& d, const QScalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = coeffs_.try_emplace(d, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }
  QScalar coeff(const ExpVec& d) const {
    auto it = coeffs_.find(d);
    return it == coeffs_.end() ? QScalar() : it->second;
  }
  bool operator==(const PBWElement& o) const {
    return side_ == o.side_ && order_ == o.order_ && coeffs_ == o.coeffs_;
  }

  // Word-level representative.
  UElement to_element() const {
    UElement out(basis_->datum().rank());
    for (const auto& [d, c] : coeffs_) {
      const UElement& mono = side_ == Side::E
                                 ? (order_ == MonomialOrder::Reversed ? basis_->e_monomial(d)
                                                                      : basis_->e_monomial_forward(d))
                                 : (order_ == MonomialOrder::Reversed ? basis_->f_monomial(d)
                                                                      : basis_->f_monomial_forward(d));
      out += mono.scaled(c);
    }
    return out;
  }

 private:
  const PBWBasis* basis_;
  Side side_;
  MonomialOrder order_;
  std::map<ExpVec, QScalar> coeffs_;
};

namespace detail {

// Gram matrix <F^d_fwd, E^e_rev> (resp. mirrored) per graded piece, with its
// exact LU solve.  Invertibility is the PBW linear-independence certificate
// for the forward monomials.
struct GramSolver {
  std::vector<ExpVec> exps;
  std::vector<std::vector<QScalar>> lu;  // row-reduced augmented storage
  std::vector<size_t> perm;

  GramSolver(const PBWBasis& b, const LatticeVector& mu, Side side) {
    exps = b.exponents_of_weight(mu);
    size_t n = exps.size();
    lu.assign(n, std::vector<QScalar>(n));
    for (size_t r = 0; r < n; ++r) {
      for (size_t c = 0; c < n; ++c) {
        // row r: pairing against the reversed monomial of exps[r] on the
        // opposite side; column c: forward monomial of exps[c].
        lu[r][c] = side == Side::F ? b.pair(b.f_monomial_forward(exps[c]), b.e_monomial(exps[r]))
                                   : b.pair(b.f_monomial(exps[r]), b.e_monomial_forward(exps[c]));
      }
    }
    perm.resize(n);
    for (size_t i = 0; i < n; ++i) perm[i] = i;
    // in-place LU with partial (first nonzero) pivoting
    for (size_t c = 0; c < n; ++c) {
      size_t p = c;
      while (p < n && lu[p][c].is_zero()) ++p;
      if (p == n)
        throw Error("forward PBW Gram matrix is singular on weight piece " + mu.str());
      std::swap(lu[p], lu[c]);
      std::swap(perm[p], perm[c]);
      for (size_t r = c + 1; r < n; ++r) {
        if (lu[r][c].is_zero()) continue;
        QScalar f = lu[r][c] / lu[c][c];
        lu[r][c] = f;
        for (size_t k = c + 1; k < n; ++k) lu[r][k] -= f * lu[c][k];
      }
    }
  }

  std::vector<QScalar> solve(std::vector<QScalar> rhs) const {
    size_t n = exps.size();
    std::vector<QScalar> b(n);
    for (size_t i = 0; i < n; ++i) b[i] = rhs[perm[i]];
    for (size_t r = 1; r < n; ++r)
      for (size_t c = 0; c < r; ++c) b[r] -= lu[r][c] * b[c];
    for (size_t r = n; r-- > 0;) {
      for (size_t c = r + 1; c < n; ++c) b[r] -= lu[r][c] * b[c];
      b[r] /= lu[r][r];
    }
    return b;
  }
};

// Keyed by (type, word, side, weight): the Gram matrix depends only on the
// mathematical data, so equal bases share entries safely.
inline GramSolver& gram_solver(const PBWBasis& b, const LatticeVector& mu, Side side) {
  static std::map<std::tuple<std::string, std::vector<int>, int, LatticeVector>,
                  std::unique_ptr<GramSolver>>
      cache;
  auto key = std::make_tuple(b.datum().type_string(), b.word().letters, static_cast<int>(side), mu);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(std::move(key), std::make_unique<GramSolver>(b, mu, side)).first;
  return *it->second;
}

}  // namespace detail

// Expand a pure, weight-homogeneous element of U^+ (resp. U^-) in PBW
// coordinates.  Reversed order uses the diagonal orthogonality
//   coeff_d = <F^d, a> / <F^d, E^d>;
// forward order solves the exact Gram system against reversed monomials.
inline PBWElement expand_in_pbw(const UElement& a, const PBWBasis& basis, Side side,
                                MonomialOrder order = MonomialOrder::Reversed) {
  PBWElement out(basis, side, order);
  if (a.is_zero()) return out;
  LatticeVector wt;
  if (!a.weight_homogeneous(&wt))
    throw Error("expand_in_pbw: element is weight-inhomogeneous; split it first");
  if (side == Side::E && !a.pure_e()) throw Error("expand_in_pbw: element is not in U+");
  if (side == Side::F && !a.pure_f()) throw Error("expand_in_pbw: element is not in U-");
  LatticeVector mu = side == Side::E ? wt : -wt;
  if (!mu.nonneg()) throw Error("expand_in_pbw: weight outside the positive cone");
  const auto& exps = basis.exponents_of_weight(mu);
  if (order == MonomialOrder::Reversed) {
    for (const auto& d : exps) {
      QScalar num = side == Side::E ? basis.pair(basis.f_monomial(d), a)
                                    : basis.pair(a, basis.e_monomial(d));
      if (!num.is_zero()) out.add(d, num / basis.diagonal(d));
    }
    return out;
  }
  auto& solver = detail::gram_solver(basis, mu, side);
  std::vector<QScalar> rhs(exps.size());
  for (size_t r = 0; r < exps.size(); ++r)
    rhs[r] = side == Side::F ? basis.pair(a, basis.e_monomial(exps[r]))
                             : basis.pair(basis.f_monomial(exps[r]), a);
  std::vector<QScalar> sol = solver.solve(std::move(rhs));
  for (size_t c = 0; c < exps.size(); ++c) out.add(exps[c], sol[c]);
  return out;
}

inline PBWElement pbw_multiply(const PBWElement& a, const PBWElement& b) {
  if (&a.basis() != &b.basis() || a.side() != b.side() || a.order() != b.order())
    throw BasisMismatchError("pbw_multiply: mixed bases, sides or orders");
  UElement prod =
      multiply(a.basis().datum(), a.to_element(), b.to_element());
  if (prod.is_zero()) return PBWElement(a.basis(), a.side(), a.order());
  // split into weight-homogeneous components before expanding
  PBWElement out(a.basis(), a.side(), a.order());
  std::map<LatticeVector, UElement> comps;
  for (const auto& [w, c] : prod.terms()) {
    auto [it, inserted] = comps.try_emplace(w.weight(), UElement(prod.rank()));
    it->second.add(w, c);
  }
  for (auto& [wt, comp] : comps) {
    PBWElement part = expand_in_pbw(comp, a.basis(), a.side(), a.order());
    for (const auto& [d, c] : part.coeffs()) out.add(d, c);
  }
  return out;
}

// ---- Levendorskii-Soibelman straightening ----------------------------------

struct LSEntry {
  ExpVec d;
  QScalar c;
  int valuation = 0;
  bool laurent_unit_den = false;
};

// The q-commutator X_i X_j - q^{(lambda_i,lambda_j)} X_j X_i expanded in the
// side's PBW basis (E: reversed order, F: forward order).  The support and
// (1-q)-valuation certificates are theorem-level facts; their failure is a
// hard error.
inline std::vector<LSEntry> ls_relation(const PBWBasis& basis, int i, int j, Side side) {
  if (!(0 <= i && i < j && j < basis.size())) throw Error("ls_relation: need 0 <= i < j < N");
  const RootDatum& R = basis.datum();
  int ip = R.pair(basis.root(i), basis.root(j));
  const UElement& xi = side == Side::E ? basis.e_root_vector(i) : basis.f_root_vector(i);
  const UElement& xj = side == Side::E ? basis.e_root_vector(j) : basis.f_root_vector(j);
  UElement lhs = multiply(R, xi, xj) - multiply(R, xj, xi).scaled(QScalar::q_power(ip));
  MonomialOrder order = side == Side::E ? MonomialOrder::Reversed : MonomialOrder::Forward;
  PBWElement exp = expand_in_pbw(lhs, basis, side, order);
  std::vector<LSEntry> out;
  for (const auto& [d, c] : exp.coeffs()) {
    for (int k = 0; k < basis.size(); ++k) {
      if (d[static_cast<size_t>(k)] != 0 && (k <= i || k >= j))
        throw CertificateError("LS support violated at pair (" + std::to_string(i + 1) + "," +
                               std::to_string(j + 1) + "), side " + side_name(side));
    }
    IntegralityCertificate cert = c.integrality();
    if (!cert.in_A)
      throw CertificateError("LS coefficient outside A at pair (" + std::to_string(i + 1) + "," +
                             std::to_string(j + 1) + ")");
    int needed = PBWBasis::total_degree(d) - 1;
    if (cert.one_minus_q_valuation < needed)
      throw CertificateError("LS (1-q)-valuation too small at pair (" + std::to_string(i + 1) +
                             "," + std::to_string(j + 1) + "): got " +
                             std::to_string(cert.one_minus_q_valuation) + ", need " +
                             std::to_string(needed));
    out.push_back(LSEntry{d, c, cert.one_minus_q_valuation, c.denominator_is_laurent_unit()});
  }
  return out;
}

struct LSTable {
  std::string type;
  ReducedWord word;
  Side side = Side::E;
  std::map<std::pair<int, int>, std::vector<LSEntry>> pairs;
};

inline LSTable build_ls_table(const PBWBasis& basis, Side side) {
  LSTable t;
  t.type = basis.datum().type_string();
  t.word = basis.word();
  t.side = side;
  for (int i = 0; i < basis.size(); ++i)
    for (int j = i + 1; j < basis.size(); ++j) t.pairs[{i, j}] = ls_relation(basis, i, j, side);
  return t;
}

// Divided-power structure constants: F^{(d)} F^{(e)} = sum_f n_f^{d,e} F^{(f)}
// in the reversed divided basis.  Membership in A is certified.
inline std::map<ExpVec, QScalar> n_coefficients(const PBWBasis& basis, const ExpVec& d,
                                                const ExpVec& e) {
  const RootDatum& R = basis.datum();
  UElement prod = multiply(R, basis.f_monomial(d), basis.f_monomial(e));
  QScalar scale = QScalar(1) / (basis.factorial_of(d) * basis.factorial_of(e));
  std::map<ExpVec, QScalar> out;
  if (prod.is_zero()) return out;
  PBWElement exp = expand_in_pbw(prod.scaled(scale), basis, Side::F, MonomialOrder::Reversed);
  for (const auto& [f, c] : exp.coeffs()) {
    QScalar n = c * basis.factorial_of(f);
    if (!n.integrality().in_A)
      throw CertificateError("n-coefficient outside A at f = monomial exponent");
    out.emplace(f, n);
  }
  return out;
}

}  // namespace qboson
