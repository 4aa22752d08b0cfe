#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qboson/boson.hpp"

namespace qboson {

// Sparse multivariate polynomial over Q in generators x_1..x_N.
class Poly {
 public:
  Poly() = default;
  explicit Poly(int nvars) : n_(nvars) {}
  static Poly constant(int nvars, const BigRat& c) {
    Poly p(nvars);
    p.add(ExpVec(static_cast<size_t>(nvars), 0), c);
    return p;
  }
  static Poly variable(int nvars, int i) {
    Poly p(nvars);
    ExpVec e(static_cast<size_t>(nvars), 0);
    e[static_cast<size_t>(i)] = 1;
    p.add(e, BigRat(1));
    return p;
  }
  static Poly monomial(int nvars, const ExpVec& e, const BigRat& c) {
    Poly p(nvars);
    p.add(e, c);
    return p;
  }

  int nvars() const { return n_; }
  bool is_zero() const { return t_.empty(); }
  const std::map<ExpVec, BigRat>& terms() const { return t_; }

  void add(const ExpVec& e, const BigRat& c) {
    if (c == 0) return;
    auto [it, inserted] = t_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) t_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    for (const auto& [e, c] : o.t_) add(e, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [e, c] : o.t_) add(e, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  Poly operator-() const {
    Poly r(n_);
    for (const auto& [e, c] : t_) r.t_.emplace(e, -c);
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r(a.n_);
    for (const auto& [ea, ca] : a.t_)
      for (const auto& [eb, cb] : b.t_) {
        ExpVec e = ea;
        for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
        r.add(e, ca * cb);
      }
    return r;
  }
  Poly scaled(const BigRat& c) const {
    Poly r(n_);
    if (c == 0) return r;
    for (const auto& [e, cc] : t_) r.t_.emplace(e, cc * c);
    return r;
  }
  bool operator==(const Poly& o) const { return t_ == o.t_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly derivative(int i) const {
    Poly r(n_);
    for (const auto& [e, c] : t_) {
      int m = e[static_cast<size_t>(i)];
      if (m == 0) continue;
      ExpVec e2 = e;
      e2[static_cast<size_t>(i)] -= 1;
      r.add(e2, c * m);
    }
    return r;
  }

  BigRat eval(const std::vector<BigRat>& point) const {
    BigRat total = 0;
    for (const auto& [e, c] : t_) {
      BigRat m = c;
      for (size_t i = 0; i < e.size(); ++i)
        for (int t = 0; t < e[i]; ++t) m *= point[i];
      total += m;
    }
    return total;
  }

  Poly substitute(const std::vector<Poly>& images) const {
    Poly r(images.empty() ? n_ : images[0].nvars());
    for (const auto& [e, c] : t_) {
      Poly m = Poly::constant(r.nvars(), c);
      for (size_t i = 0; i < e.size(); ++i)
        for (int t = 0; t < e[i]; ++t) m = m * images[i];
      r += m;
    }
    return r;
  }

  // Extract the total-degree-1 part.
  Poly linear_part() const {
    Poly r(n_);
    for (const auto& [e, c] : t_)
      if (PBWBasis::total_degree(e) == 1) r.add(e, c);
    return r;
  }

  // Canonical display: terms in map order, "3*x1*x2^2 - 1/2*x3".
  std::string str() const {
    if (t_.empty()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [e, c] : t_) {
      BigRat a = c;
      if (first) {
        if (a < 0) {
          s += "-";
          a = -a;
        }
      } else {
        s += a < 0 ? " - " : " + ";
        if (a < 0) a = -a;
      }
      std::string mono;
      for (size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += "x" + std::to_string(i + 1);
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      std::string coeff = a.str();
      if (mono.empty()) {
        s += coeff;
      } else if (a == 1) {
        s += mono;
      } else {
        s += coeff + "*" + mono;
      }
      first = false;
    }
    return s;
  }

 private:
  int n_ = 0;
  std::map<ExpVec, BigRat> t_;
};

// Antisymmetric bracket/bivector table: entries for i < j, the rest by
// antisymmetry.
struct BracketTable {
  int N = 0;
  std::vector<Poly> entries;  // packed (i,j), i<j

  BracketTable() = default;
  explicit BracketTable(int n) : N(n), entries(static_cast<size_t>(n * (n - 1) / 2), Poly(n)) {}

  size_t idx(int i, int j) const {
    return static_cast<size_t>(i * (2 * N - i - 1) / 2 + (j - i - 1));
  }
  void set(int i, int j, Poly p) { entries[idx(i, j)] = std::move(p); }
  Poly get(int i, int j) const {
    if (i == j) return Poly(N);
    if (i < j) return entries[idx(i, j)];
    return -entries[idx(j, i)];
  }
  bool operator==(const BracketTable& o) const { return N == o.N && entries == o.entries; }

  BracketTable operator+(const BracketTable& o) const {
    BracketTable r(N);
    for (size_t t = 0; t < entries.size(); ++t) r.entries[t] = entries[t] + o.entries[t];
    return r;
  }
  BracketTable operator-(const BracketTable& o) const {
    BracketTable r(N);
    for (size_t t = 0; t < entries.size(); ++t) r.entries[t] = entries[t] - o.entries[t];
    return r;
  }
  BracketTable scaled(const BigRat& c) const {
    BracketTable r(N);
    for (size_t t = 0; t < entries.size(); ++t) r.entries[t] = entries[t].scaled(c);
    return r;
  }
  bool is_zero() const {
    for (const auto& p : entries)
      if (!p.is_zero()) return false;
    return true;
  }
};

using Bivector = BracketTable;

// {f,g} by bilinear Leibniz extension of the table.
inline Poly bracket(const Poly& f, const Poly& g, const BracketTable& pi) {
  Poly out(pi.N);
  std::vector<Poly> df(static_cast<size_t>(pi.N)), dg(static_cast<size_t>(pi.N));
  for (int i = 0; i < pi.N; ++i) {
    df[static_cast<size_t>(i)] = f.derivative(i);
    dg[static_cast<size_t>(i)] = g.derivative(i);
  }
  for (int i = 0; i < pi.N; ++i) {
    if (df[static_cast<size_t>(i)].is_zero()) continue;
    for (int j = 0; j < pi.N; ++j) {
      if (i == j || dg[static_cast<size_t>(j)].is_zero()) continue;
      out += df[static_cast<size_t>(i)] * dg[static_cast<size_t>(j)] * pi.get(i, j);
    }
  }
  return out;
}

inline Poly jacobiator(const Poly& f, const Poly& g, const Poly& h, const BracketTable& pi) {
  return bracket(bracket(f, g, pi), h, pi) + bracket(bracket(g, h, pi), f, pi) +
         bracket(bracket(h, f, pi), g, pi);
}

// Jacobi identity on all generator triples (equivalent to [pi,pi] = 0 for a
// bivector given on coordinates).
inline bool jacobi_ok(const BracketTable& pi) {
  for (int i = 0; i < pi.N; ++i)
    for (int j = i + 1; j < pi.N; ++j)
      for (int k = j + 1; k < pi.N; ++k) {
        Poly xi = Poly::variable(pi.N, i);
        Poly xj = Poly::variable(pi.N, j);
        Poly xk = Poly::variable(pi.N, k);
        if (!jacobiator(xi, xj, xk, pi).is_zero()) return false;
      }
  return true;
}

// A certified Poisson structure; construction fails when Jacobi does not
// hold.
struct PoissonStructure {
  BracketTable table;

  explicit PoissonStructure(BracketTable t) : table(std::move(t)) {
    if (!jacobi_ok(table)) throw CertificateError("PoissonStructure: Jacobi identity fails");
  }
};

// ---- the Hayashi bracket ----------------------------------------------------

// {x_i, x_j} = [(1-q)^{-1} [r'_i, r'_j]]|_{q=1} in the PBW coordinates; the
// (1-q)-divisibility is part of the commutator certificates.
inline PoissonStructure hayashi_structure(const KashiwaraCalculus& calc) {
  const PBWBasis& b = calc.basis();
  int N = b.size();
  BracketTable t(N);
  QScalar one_minus_q = QScalar(1) - QScalar::q_power(1);
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      OperatorElement h = calc.commutator_structure(i, j);
      Poly p(N);
      for (const auto& [d, c] : h.a) p.add(d, (c / one_minus_q).eval_at_one());
      t.set(i, j, std::move(p));
    }
  }
  return PoissonStructure(std::move(t));
}

// Generator labels x_{i,j} for the canonical type-A word: position k of the
// enumeration <-> the interval of lambda_k.
inline std::vector<std::pair<int, int>> type_a_intervals(const PBWBasis& b) {
  std::vector<std::pair<int, int>> out;
  for (int k = 0; k < b.size(); ++k) out.push_back(type_a_interval(b.datum(), b.root(k)));
  return out;
}

// Closed-form type-A bracket table by the six relative positions of the
// intervals [i,j] and [k,l]:
//   0                      j <= k-2
//   x_{i,j}x_{k,l} + 2x_{i,l}   j = k-1
//   -2 x_{k,j} x_{i,l}     i < k <= j < l
//   0                      k < i <= j < l
//   -x_{i,j}x_{k,l}        i = k, j < l
//   x_{i,j}x_{k,l}         k < i, j = l
inline PoissonStructure closed_form_type_a(const PBWBasis& b) {
  if (b.datum().letter() != 'A') throw Error("closed_form_type_a: type A only");
  int N = b.size();
  auto iv = type_a_intervals(b);
  std::map<std::pair<int, int>, int> index_of;
  for (int k = 0; k < N; ++k) index_of[iv[static_cast<size_t>(k)]] = k;
  auto var = [&](int i, int j) { return Poly::variable(N, index_of.at({i, j})); };
  BracketTable t(N);
  for (int a = 0; a < N; ++a) {
    for (int bb = a + 1; bb < N; ++bb) {
      auto [i, j] = iv[static_cast<size_t>(a)];
      auto [k, l] = iv[static_cast<size_t>(bb)];
      // the six cases cover one orientation of the interval pair; the other
      // orientation goes through antisymmetry
      auto compute = [&](int i1, int j1, int k1, int l1) -> std::pair<bool, Poly> {
        Poly prod = var(i1, j1) * var(k1, l1);
        if (j1 <= k1 - 2) return {true, Poly(N)};
        if (j1 == k1 - 1) return {true, prod + var(i1, l1).scaled(2)};
        if (i1 < k1 && k1 <= j1 && j1 < l1) return {true, (var(k1, j1) * var(i1, l1)).scaled(-2)};
        if (k1 < i1 && i1 <= j1 && j1 < l1) return {true, Poly(N)};
        if (i1 == k1 && j1 < l1) return {true, -prod};
        if (k1 < i1 && j1 == l1) return {true, prod};
        return {false, Poly(N)};
      };
      auto [ok, p] = compute(i, j, k, l);
      if (!ok) {
        auto [ok2, p2] = compute(k, l, i, j);
        if (!ok2) throw Error("closed_form_type_a: uncovered interval configuration");
        p = -p2;
      }
      t.set(a, bb, std::move(p));
    }
  }
  return PoissonStructure(std::move(t));
}

// Kirillov-Kostant bracket on strictly-upper-triangular matrix coordinates,
// through the same interval labeling: {y_{i,j}, y_{k,l}} = y_{i,l} if
// k = j+1, -y_{k,j} if i = l+1, 0 otherwise.
inline PoissonStructure kirillov_kostant(const PBWBasis& b) {
  if (b.datum().letter() != 'A') throw Error("kirillov_kostant: type A only");
  int N = b.size();
  auto iv = type_a_intervals(b);
  std::map<std::pair<int, int>, int> index_of;
  for (int k = 0; k < N; ++k) index_of[iv[static_cast<size_t>(k)]] = k;
  BracketTable t(N);
  for (int a = 0; a < N; ++a) {
    for (int bb = a + 1; bb < N; ++bb) {
      auto [i, j] = iv[static_cast<size_t>(a)];
      auto [k, l] = iv[static_cast<size_t>(bb)];
      Poly p(N);
      if (k == j + 1) p += Poly::variable(N, index_of.at({i, l}));
      if (i == l + 1) p -= Poly::variable(N, index_of.at({k, j}));
      t.set(a, bb, std::move(p));
    }
  }
  return PoissonStructure(std::move(t));
}

// psi = (sum over partitions of [1..n] into consecutive intervals of the
// interval-variable products) * x_{1,n}.
inline Poly casimir_psi(const PBWBasis& b) {
  if (b.datum().letter() != 'A') throw Error("casimir_psi: type A only");
  int n = b.datum().rank();
  int N = b.size();
  auto iv = type_a_intervals(b);
  std::map<std::pair<int, int>, int> index_of;
  for (int k = 0; k < N; ++k) index_of[iv[static_cast<size_t>(k)]] = k;
  Poly sum(N);
  std::function<void(int, Poly)> rec = [&](int start, Poly acc) {
    if (start == n) {
      sum += acc;
      return;
    }
    for (int end = start; end < n; ++end)
      rec(end + 1, acc * Poly::variable(N, index_of.at({start, end})));
  };
  rec(0, Poly::constant(N, BigRat(1)));
  return sum * Poly::variable(N, index_of.at({0, n - 1}));
}

// psi' = x_{1,2} x_{2,3} - x_{2,2} x_{1,3} (the extra A3 Casimir).
inline Poly casimir_psi_prime_a3(const PBWBasis& b) {
  if (b.datum().letter() != 'A' || b.datum().rank() != 3)
    throw Error("casimir_psi_prime_a3: A3 only");
  int N = b.size();
  auto iv = type_a_intervals(b);
  std::map<std::pair<int, int>, int> index_of;
  for (int k = 0; k < N; ++k) index_of[iv[static_cast<size_t>(k)]] = k;
  auto var = [&](int i, int j) { return Poly::variable(N, index_of.at({i, j})); };
  return var(0, 1) * var(1, 2) - var(1, 1) * var(0, 2);
}

inline bool casimir_check(const Poly& f, const BracketTable& pi) {
  for (int m = 0; m < pi.N; ++m)
    if (!bracket(f, Poly::variable(pi.N, m), pi).is_zero()) return false;
  return true;
}

// ---- vector fields and deformed bivectors -----------------------------------

struct PolyVectorField {
  std::vector<Poly> comp;  // coefficient of d/dx_k

  bool is_zero() const {
    for (const auto& p : comp)
      if (!p.is_zero()) return false;
    return true;
  }
  Poly apply(const Poly& f) const {
    Poly out(static_cast<int>(comp.size()));
    for (size_t k = 0; k < comp.size(); ++k) {
      if (comp[k].is_zero()) continue;
      out += comp[k] * f.derivative(static_cast<int>(k));
    }
    return out;
  }
  bool operator==(const PolyVectorField& o) const { return comp == o.comp; }
};

// Fbar_k x_j = - sum_e (n_{lambda_j}^{e_k, e})|_{q=1} x^e, where the n's are
// the divided structure constants with output slot F_j.
inline PolyVectorField vector_field(const KashiwaraCalculus& calc, int k) {
  const PBWBasis& b = calc.basis();
  int N = b.size();
  PolyVectorField vf;
  vf.comp.assign(static_cast<size_t>(N), Poly(N));
  ExpVec ek(static_cast<size_t>(N), 0);
  ek[static_cast<size_t>(k)] = 1;
  for (int j = 0; j < N; ++j) {
    LatticeVector rest = b.root(j) - b.root(k);
    if (!rest.nonneg()) continue;
    ExpVec ej(static_cast<size_t>(N), 0);
    ej[static_cast<size_t>(j)] = 1;
    Poly comp(N);
    for (const auto& e : b.exponents_of_weight(rest)) {
      auto ns = n_coefficients(b, ek, e);
      auto it = ns.find(ej);
      if (it == ns.end()) continue;
      BigRat v = it->second.eval_at_one();
      if (v == 0) continue;
      comp.add(e, -v);
    }
    vf.comp[static_cast<size_t>(j)] = std::move(comp);
  }
  if (b.datum().letter() == 'A') {
    // closed form: Fbar_{[i,j]} = -d_{i,j} + sum_{t=j+1}^{n-1} x_{j+1,t} d_{i,t}
    int n = b.datum().rank();
    auto iv = type_a_intervals(b);
    std::map<std::pair<int, int>, int> index_of;
    for (int m = 0; m < N; ++m) index_of[iv[static_cast<size_t>(m)]] = m;
    auto [i, j] = iv[static_cast<size_t>(k)];
    PolyVectorField expect;
    expect.comp.assign(static_cast<size_t>(N), Poly(N));
    expect.comp[static_cast<size_t>(index_of.at({i, j}))] = Poly::constant(N, BigRat(-1));
    for (int t = j + 1; t < n; ++t)
      expect.comp[static_cast<size_t>(index_of.at({i, t}))] =
          Poly::variable(N, index_of.at({j + 1, t}));
    if (!(vf == expect))
      throw CertificateError("vector_field: type-A closed form mismatch at k = " +
                             std::to_string(k + 1));
  }
  return vf;
}

// [X, pi](dx_i, dx_j) = X.{x_i,x_j} - {X.x_i, x_j} - {x_i, X.x_j}
inline Bivector lie_derivative(const PolyVectorField& X, const BracketTable& pi) {
  Bivector out(pi.N);
  for (int i = 0; i < pi.N; ++i) {
    for (int j = i + 1; j < pi.N; ++j) {
      Poly xi = Poly::variable(pi.N, i);
      Poly xj = Poly::variable(pi.N, j);
      Poly v = X.apply(pi.get(i, j)) - bracket(X.apply(xi), xj, pi) - bracket(xi, X.apply(xj), pi);
      out.set(i, j, std::move(v));
    }
  }
  return out;
}

struct PencilReport {
  bool jacobi_first = false;
  bool jacobi_second = false;
  bool jacobi_sum = false;
  bool compatible() const { return jacobi_first && jacobi_second && jacobi_sum; }
};

inline PencilReport pencil_checks(const BracketTable& p1, const BracketTable& p2) {
  if (p1.N != p2.N) throw Error("pencil_checks: generator sets differ");
  PencilReport r;
  r.jacobi_first = jacobi_ok(p1);
  r.jacobi_second = jacobi_ok(p2);
  r.jacobi_sum = jacobi_ok(p1 + p2);
  return r;
}

// ---- generic rank -----------------------------------------------------------

// SplitMix64: tiny, portable, seed-deterministic.
struct SplitMix64 {
  uint64_t state;
  explicit SplitMix64(uint64_t seed) : state(seed) {}
  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  int coord() { return static_cast<int>(next() % 19ULL) - 9; }  // [-9, 9]
};

inline int matrix_rank_rational(std::vector<std::vector<BigRat>> m) {
  if (m.empty()) return 0;
  size_t rows = m.size(), cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    for (size_t i = r + 1; i < rows; ++i) {
      if (m[i][c] == 0) continue;
      BigRat f = m[i][c] / m[r][c];
      for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return static_cast<int>(r);
}

// Max over sampled integer points of the exact rank of ({x_i,x_j})(p).
inline int generic_rank(const BracketTable& pi, int samples, uint64_t seed) {
  if (samples < 1) throw Error("generic_rank: need samples >= 1");
  SplitMix64 rng(seed);
  int best = 0;
  for (int s = 0; s < samples; ++s) {
    std::vector<BigRat> pt(static_cast<size_t>(pi.N));
    for (auto& x : pt) x = BigRat(rng.coord());
    std::vector<std::vector<BigRat>> m(static_cast<size_t>(pi.N),
                                       std::vector<BigRat>(static_cast<size_t>(pi.N)));
    for (int i = 0; i < pi.N; ++i)
      for (int j = i + 1; j < pi.N; ++j) {
        BigRat v = pi.get(i, j).eval(pt);
        m[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
        m[static_cast<size_t>(j)][static_cast<size_t>(i)] = -v;
      }
    best = std::max(best, matrix_rank_rational(std::move(m)));
  }
  return best;
}

// ---- reduced-word independence ----------------------------------------------

struct WordIndependenceResult {
  bool supported = false;
  bool holds = false;
  std::string detail;
};

// Transport the bracket along the chain of braid moves from word A to word B
// and compare with the bracket computed in basis B.  Only commuting and
// A2-type moves have published coordinate changes; anything else is reported
// as unsupported.
inline WordIndependenceResult reduced_word_independence_check(const RootDatum& datum,
                                                              const ReducedWord& wa,
                                                              const ReducedWord& wb) {
  WordIndependenceResult res;
  auto chain = find_move_chain(datum, wa, wb);
  if (!chain) {
    res.detail = "no braid-move chain found";
    return res;
  }
  int N = datum.num_positive_roots();
  // substitution phi: variables of wa expressed in the current word's
  // variables, composed move by move
  std::vector<Poly> phi(static_cast<size_t>(N));
  for (int k = 0; k < N; ++k) phi[static_cast<size_t>(k)] = Poly::variable(N, k);
  ReducedWord cur = wa;
  for (const BraidMove& mv : *chain) {
    if (mv.order != 2 && mv.order != 3) {
      res.detail = "chain contains a rank-2 move of order " + std::to_string(mv.order) +
                   " (no published coordinate change)";
      return res;
    }
    int p = mv.position;
    std::vector<Poly> step(static_cast<size_t>(N));
    for (int k = 0; k < N; ++k) step[static_cast<size_t>(k)] = Poly::variable(N, k);
    if (mv.order == 2) {
      step[static_cast<size_t>(p)] = Poly::variable(N, p + 1);
      step[static_cast<size_t>(p) + 1] = Poly::variable(N, p);
    } else {
      // x_p = y_{p+2}; x_{p+2} = y_p; x_{p+1} = -y_{p+1} - y_p y_{p+2}
      step[static_cast<size_t>(p)] = Poly::variable(N, p + 2);
      step[static_cast<size_t>(p) + 2] = Poly::variable(N, p);
      step[static_cast<size_t>(p) + 1] =
          -Poly::variable(N, p + 1) - Poly::variable(N, p) * Poly::variable(N, p + 2);
    }
    for (int k = 0; k < N; ++k) phi[static_cast<size_t>(k)] = phi[static_cast<size_t>(k)].substitute(step);
    cur = apply_braid_move(datum, cur, p);
  }
  res.supported = true;
  PBWBasis basis_a(datum, wa);
  PBWBasis basis_b(datum, wb);
  KashiwaraCalculus calc_a(basis_a), calc_b(basis_b);
  PoissonStructure pa = hayashi_structure(calc_a);
  PoissonStructure pb = hayashi_structure(calc_b);
  for (int i = 0; i < N && res.detail.empty(); ++i) {
    for (int j = i + 1; j < N; ++j) {
      Poly lhs = bracket(phi[static_cast<size_t>(i)], phi[static_cast<size_t>(j)], pb.table);
      Poly rhs = pa.table.get(i, j).substitute(phi);
      if (!(lhs == rhs)) {
        res.detail = "bracket transport fails at pair (" + std::to_string(i + 1) + "," +
                     std::to_string(j + 1) + ")";
        return res;
      }
    }
  }
  res.holds = true;
  return res;
}

// ---- diagnostics ------------------------------------------------------------

// Non-asserting comparison of the corrected closed-form general bracket
// reading (summation over lambda_d = lambda_i + lambda_j, exponent -d_k)
// against the computed table.
struct PoisBraDiagnostic {
  int i = 0, j = 0;
  bool matches = false;
};

inline std::vector<PoisBraDiagnostic> pois_bra_diagnostic(const PBWBasis& b,
                                                          const BracketTable& table) {
  std::vector<PoisBraDiagnostic> out;
  int N = b.size();
  QScalar one_minus_q = QScalar(1) - QScalar::q_power(1);
  for (int i = 0; i < N; ++i) {
    for (int j = i + 1; j < N; ++j) {
      Poly p(N);
      ExpVec eij(static_cast<size_t>(N), 0);
      eij[static_cast<size_t>(i)] = 1;
      eij[static_cast<size_t>(j)] = 1;
      p.add(eij, BigRat(-b.datum().pair(b.root(i), b.root(j))));
      QScalar qfac = q_lambda_minus_inverse(b.root_len_sq(i)) * q_lambda_minus_inverse(b.root_len_sq(j));
      bool defined = true;
      try {
        for (const LSEntry& entry : ls_relation(b, i, j, Side::E)) {
          QScalar denom(1);
          for (int k = 0; k < N; ++k)
            for (int t = 0; t < entry.d[static_cast<size_t>(k)]; ++t)
              denom *= q_lambda_minus_inverse(b.root_len_sq(k));
          QScalar v = entry.c * qfac / denom / one_minus_q;
          if (PBWBasis::total_degree(entry.d) % 2 == 1) v = -v;
          p.add(entry.d, v.eval_at_one());
        }
      } catch (const Error&) {
        defined = false;
      }
      PoisBraDiagnostic d;
      d.i = i;
      d.j = j;
      d.matches = defined && p == table.get(i, j);
      out.push_back(d);
    }
  }
  return out;
}

// Weight of a polynomial's monomial under the root grading (x_k has weight
// lambda_k); returns false when inhomogeneous.
inline bool weight_homogeneous_poly(const PBWBasis& b, const Poly& p, LatticeVector* out = nullptr) {
  bool first = true;
  LatticeVector wt = LatticeVector::zero(b.datum().rank());
  for (const auto& [e, c] : p.terms()) {
    LatticeVector w = b.weight_of(e);
    if (first) {
      wt = w;
      first = false;
    } else if (!(w == wt)) {
      return false;
    }
  }
  if (out && !first) *out = wt;
  return true;
}

}  // namespace qboson
