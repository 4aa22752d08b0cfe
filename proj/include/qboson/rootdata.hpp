#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qboson/errors.hpp"
#include "qboson/laurent.hpp"

namespace qboson {

// Element of the root lattice in simple-root coordinates.
struct LatticeVector {
  std::vector<int> c;

  LatticeVector() = default;
  explicit LatticeVector(std::vector<int> v) : c(std::move(v)) {}
  static LatticeVector zero(int rank) { return LatticeVector(std::vector<int>(rank, 0)); }
  static LatticeVector basis(int rank, int i) {
    LatticeVector v = zero(rank);
    v.c[static_cast<size_t>(i)] = 1;
    return v;
  }

  int rank() const { return static_cast<int>(c.size()); }
  bool is_zero() const {
    for (int x : c)
      if (x != 0) return false;
    return true;
  }
  bool nonneg() const {
    for (int x : c)
      if (x < 0) return false;
    return true;
  }
  int height() const {
    int h = 0;
    for (int x : c) h += x;
    return h;
  }

  LatticeVector operator+(const LatticeVector& o) const {
    LatticeVector r = *this;
    for (size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
    return r;
  }
  LatticeVector operator-(const LatticeVector& o) const {
    LatticeVector r = *this;
    for (size_t i = 0; i < c.size(); ++i) r.c[i] -= o.c[i];
    return r;
  }
  LatticeVector operator-() const {
    LatticeVector r = *this;
    for (auto& x : r.c) x = -x;
    return r;
  }
  LatticeVector scaled(int k) const {
    LatticeVector r = *this;
    for (auto& x : r.c) x *= k;
    return r;
  }

  // Standard partial order: this <= o iff o - this has nonnegative coords.
  bool leq(const LatticeVector& o) const { return (o - *this).nonneg(); }

  bool operator==(const LatticeVector& o) const { return c == o.c; }
  bool operator!=(const LatticeVector& o) const { return c != o.c; }
  bool operator<(const LatticeVector& o) const { return c < o.c; }

  std::string str() const {
    std::string s = "(";
    for (size_t i = 0; i < c.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(c[i]);
    }
    return s + ")";
  }
};

// Reduced expression for a Weyl group element as a sequence of simple-root
// indices (0-based internally).
struct ReducedWord {
  std::vector<int> letters;
  bool operator==(const ReducedWord& o) const { return letters == o.letters; }
  bool operator<(const ReducedWord& o) const { return letters < o.letters; }
  int size() const { return static_cast<int>(letters.size()); }
};

// Cartan datum for a finite type: the symmetric invariant form normalized so
// that short roots have squared length 2, plus the finite root system and
// Weyl elements realized as permutations of the full root set.
class RootDatum {
 public:
  using WeylPerm = std::vector<int>;

  static RootDatum build(char letter, int rank) {
    RootDatum d;
    d.letter_ = letter;
    d.rank_ = rank;
    d.form_ = build_form(letter, rank);
    d.enumerate_roots();
    d.check_invariants();
    return d;
  }

  char letter() const { return letter_; }
  int rank() const { return rank_; }
  std::string type_string() const { return std::string(1, letter_) + std::to_string(rank_); }

  int form(int i, int j) const { return form_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }

  int pair(const LatticeVector& a, const LatticeVector& b) const {
    long long s = 0;
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j)
        s += static_cast<long long>(a.c[static_cast<size_t>(i)]) * b.c[static_cast<size_t>(j)] *
             form(i, j);
    return static_cast<int>(s);
  }

  // c_{ij} = 2(alpha_i, alpha_j)/(alpha_i, alpha_i)
  int cartan(int i, int j) const { return 2 * form(i, j) / form(i, i); }

  int root_len_sq(const LatticeVector& v) const { return pair(v, v); }
  int d_index(int i) const { return form(i, i) / 2; }  // q_{alpha_i} = q^{d_i}

  LatticeVector alpha(int i) const { return LatticeVector::basis(rank_, i); }

  LatticeVector simple_reflection(int i, const LatticeVector& v) const {
    int coeff = 2 * pair(v, alpha(i)) / form(i, i);
    LatticeVector r = v;
    r.c[static_cast<size_t>(i)] -= coeff;
    return r;
  }

  LatticeVector act(const ReducedWord& w, const LatticeVector& v) const {
    LatticeVector r = v;
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
      r = simple_reflection(*it, r);
    return r;
  }

  const std::vector<LatticeVector>& positive_roots() const { return positive_roots_; }
  int num_positive_roots() const { return static_cast<int>(positive_roots_.size()); }
  const std::vector<LatticeVector>& all_roots() const { return all_roots_; }

  int root_index(const LatticeVector& v) const {
    auto it = root_lookup_.find(v);
    return it == root_lookup_.end() ? -1 : it->second;
  }
  bool is_root(const LatticeVector& v) const { return root_index(v) >= 0; }

  // ---- Weyl elements as permutations of the finite root set ----
  WeylPerm identity_perm() const {
    WeylPerm p(all_roots_.size());
    for (size_t i = 0; i < p.size(); ++i) p[i] = static_cast<int>(i);
    return p;
  }
  WeylPerm simple_perm(int i) const {
    WeylPerm p(all_roots_.size());
    for (size_t r = 0; r < all_roots_.size(); ++r)
      p[r] = root_index(simple_reflection(i, all_roots_[r]));
    return p;
  }
  // (a * b)(root) = a(b(root))
  static WeylPerm compose(const WeylPerm& a, const WeylPerm& b) {
    WeylPerm p(a.size());
    for (size_t i = 0; i < a.size(); ++i) p[i] = a[static_cast<size_t>(b[i])];
    return p;
  }
  WeylPerm word_perm(const ReducedWord& w) const {
    WeylPerm p = identity_perm();
    for (int letter : w.letters) p = compose(p, simple_perm(letter));
    return p;
  }
  int perm_length(const WeylPerm& p) const {
    int n = 0;
    for (int k = 0; k < num_positive_roots(); ++k)
      if (!all_roots_[static_cast<size_t>(p[static_cast<size_t>(k)])].nonneg()) ++n;
    return n;
  }
  const WeylPerm& longest_perm() const { return w0_; }

  // Fixed subspace dimension of -w0 acting on the Cartan subalgebra.
  int dim_h_fixed_minus_w0() const {
    // Rows of W: w0(alpha_j) in simple-root coordinates; fixed space of -W
    // is the kernel of W + I.
    int n = rank_;
    std::vector<std::vector<BigRat>> m(static_cast<size_t>(n), std::vector<BigRat>(static_cast<size_t>(n)));
    for (int j = 0; j < n; ++j) {
      LatticeVector img = all_roots_[static_cast<size_t>(w0_[static_cast<size_t>(root_index(alpha(j)))])];
      for (int i = 0; i < n; ++i) {
        m[static_cast<size_t>(i)][static_cast<size_t>(j)] = BigRat(img.c[static_cast<size_t>(i)]);
        if (i == j) m[static_cast<size_t>(i)][static_cast<size_t>(j)] += 1;
      }
    }
    int rank_wpi = rational_rank(m);
    return n - rank_wpi;
  }

 private:
  static std::vector<std::vector<int>> build_form(char letter, int n) {
    auto bad = [&]() -> std::vector<std::vector<int>> {
      throw Error(std::string("build_root_datum: invalid type ") + letter + std::to_string(n));
    };
    std::vector<std::vector<int>> f(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n), 0));
    auto set_sym = [&](int i, int j, int v) {
      f[static_cast<size_t>(i)][static_cast<size_t>(j)] = v;
      f[static_cast<size_t>(j)][static_cast<size_t>(i)] = v;
    };
    switch (letter) {
      case 'A': {
        if (n < 1) return bad();
        for (int i = 0; i < n; ++i) set_sym(i, i, 2);
        for (int i = 0; i + 1 < n; ++i) set_sym(i, i + 1, -1);
        break;
      }
      case 'B': {  // alpha_0..alpha_{n-2} long, alpha_{n-1} short
        if (n < 2) return bad();
        for (int i = 0; i < n - 1; ++i) set_sym(i, i, 4);
        set_sym(n - 1, n - 1, 2);
        for (int i = 0; i + 1 < n; ++i) set_sym(i, i + 1, -2);
        break;
      }
      case 'C': {  // alpha_0..alpha_{n-2} short, alpha_{n-1} long
        if (n < 2) return bad();
        for (int i = 0; i < n - 1; ++i) set_sym(i, i, 2);
        set_sym(n - 1, n - 1, 4);
        for (int i = 0; i + 2 < n; ++i) set_sym(i, i + 1, -1);
        set_sym(n - 2, n - 1, -2);
        break;
      }
      case 'D': {
        if (n < 3) return bad();
        for (int i = 0; i < n; ++i) set_sym(i, i, 2);
        for (int i = 0; i + 2 < n; ++i) set_sym(i, i + 1, -1);
        set_sym(n - 3, n - 1, -1);
        break;
      }
      case 'E': {
        if (n < 6 || n > 8) return bad();
        // Bourbaki: node 1 attaches to 3, node 2 attaches to 4, chain 3-4-5-...
        for (int i = 0; i < n; ++i) set_sym(i, i, 2);
        set_sym(0, 2, -1);
        set_sym(1, 3, -1);
        for (int i = 2; i + 1 < n; ++i) set_sym(i, i + 1, -1);
        break;
      }
      case 'F': {
        if (n != 4) return bad();
        set_sym(0, 0, 4);
        set_sym(1, 1, 4);
        set_sym(2, 2, 2);
        set_sym(3, 3, 2);
        set_sym(0, 1, -2);
        set_sym(1, 2, -2);
        set_sym(2, 3, -1);
        break;
      }
      case 'G': {  // alpha_0 short, alpha_1 long
        if (n != 2) return bad();
        set_sym(0, 0, 2);
        set_sym(1, 1, 6);
        set_sym(0, 1, -3);
        break;
      }
      default:
        return bad();
    }
    return f;
  }

  void enumerate_roots() {
    std::set<LatticeVector> seen;
    std::vector<LatticeVector> queue;
    for (int i = 0; i < rank_; ++i) {
      for (int s : {1, -1}) {
        LatticeVector v = alpha(i).scaled(s);
        if (seen.insert(v).second) queue.push_back(v);
      }
    }
    for (size_t h = 0; h < queue.size(); ++h) {
      LatticeVector v = queue[h];
      for (int i = 0; i < rank_; ++i) {
        LatticeVector w = simple_reflection(i, v);
        if (seen.insert(w).second) queue.push_back(w);
      }
    }
    positive_roots_.clear();
    std::vector<LatticeVector> negatives;
    for (const auto& v : seen)
      (v.nonneg() ? positive_roots_ : negatives).push_back(v);
    auto by_height = [](const LatticeVector& a, const LatticeVector& b) {
      if (a.height() != b.height()) return a.height() < b.height();
      return a.c < b.c;
    };
    std::sort(positive_roots_.begin(), positive_roots_.end(), by_height);
    all_roots_ = positive_roots_;
    // negatives mirror positives so that index k + N is -positive_roots_[k]
    for (const auto& v : positive_roots_) all_roots_.push_back(-v);
    for (size_t i = 0; i < all_roots_.size(); ++i) root_lookup_[all_roots_[i]] = static_cast<int>(i);
    // longest element by greedy descent
    WeylPerm w = identity_perm();
    int len = 0;
    const int N = num_positive_roots();
    while (len < N) {
      bool moved = false;
      for (int i = 0; i < rank_ && !moved; ++i) {
        // length(s_i * w) > length(w) iff w^{-1}(alpha_i) > 0; build w s_i
        WeylPerm cand = compose(w, simple_perm(i));
        int l2 = perm_length(cand);
        if (l2 > len) {
          w = cand;
          len = l2;
          moved = true;
        }
      }
      if (!moved) throw Error("longest element search stuck");
    }
    w0_ = w;
  }

  void check_invariants() const {
    for (const auto& r : positive_roots_) {
      int l = root_len_sq(r);
      if (l != 2 && l != 4 && l != 6) throw Error("root length invariant violated");
    }
    int shortest = 6;
    for (const auto& r : positive_roots_) shortest = std::min(shortest, root_len_sq(r));
    if (shortest != 2) throw Error("short-root normalization violated");
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j)
        if ((2 * form(i, j)) % form(i, i) != 0) throw Error("Cartan integrality violated");
  }

  static int rational_rank(std::vector<std::vector<BigRat>> m) {
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
      size_t piv = r;
      while (piv < rows && m[piv][c] == 0) ++piv;
      if (piv == rows) continue;
      std::swap(m[piv], m[r]);
      for (size_t i = 0; i < rows; ++i) {
        if (i == r || m[i][c] == 0) continue;
        BigRat f = m[i][c] / m[r][c];
        for (size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
      }
      ++r;
    }
    return static_cast<int>(r);
  }

  char letter_ = 'A';
  int rank_ = 1;
  std::vector<std::vector<int>> form_;
  std::vector<LatticeVector> positive_roots_;
  std::vector<LatticeVector> all_roots_;
  std::map<LatticeVector, int> root_lookup_;
  WeylPerm w0_;
};

inline RootDatum build_root_datum(char letter, int rank) { return RootDatum::build(letter, rank); }

inline RootDatum build_root_datum(const std::string& type) {
  if (type.size() < 2) throw Error("build_root_datum: bad type string '" + type + "'");
  return RootDatum::build(type[0], std::stoi(type.substr(1)));
}

inline bool word_is_reduced(const RootDatum& d, const ReducedWord& w) {
  return d.perm_length(d.word_perm(w)) == w.size();
}

// Enumeration lambda_k = s_{i_1} ... s_{i_{k-1}}(alpha_{i_k}) induced by a
// reduced word for w0; validates reducedness, the target element and the
// bijection onto the positive roots.
inline std::vector<LatticeVector> positive_roots_from_word(const RootDatum& d,
                                                           const ReducedWord& w) {
  if (!word_is_reduced(d, w)) throw Error("positive_roots_from_word: word is not reduced");
  if (d.word_perm(w) != d.longest_perm())
    throw Error("positive_roots_from_word: word does not evaluate to w0");
  std::vector<LatticeVector> out;
  out.reserve(w.letters.size());
  for (size_t k = 0; k < w.letters.size(); ++k) {
    LatticeVector v = d.alpha(w.letters[k]);
    for (size_t t = k; t-- > 0;) v = d.simple_reflection(w.letters[t], v);
    out.push_back(v);
  }
  std::set<LatticeVector> uniq(out.begin(), out.end());
  if (static_cast<int>(uniq.size()) != d.num_positive_roots())
    throw Error("positive_roots_from_word: enumeration has repeats");
  return out;
}

// The fixed default word for w0: the standard nested word in type A (so the
// x_{i,j} interval labels come out right), the alternating word in B2/G2
// starting from the short root, and a greedy descent word otherwise.
inline ReducedWord canonical_w0_word(const RootDatum& d) {
  ReducedWord w;
  if (d.letter() == 'A') {
    for (int block = d.rank(); block >= 1; --block)
      for (int i = 0; i < block; ++i) w.letters.push_back(i);
    return w;
  }
  if (d.letter() == 'G' || (d.letter() == 'B' && d.rank() == 2) ||
      (d.letter() == 'C' && d.rank() == 2)) {
    int len = d.num_positive_roots();
    int short_first = d.form(0, 0) == 2 ? 0 : 1;
    for (int k = 0; k < len; ++k) w.letters.push_back((k % 2 == 0) ? short_first : 1 - short_first);
    return w;
  }
  // Greedy: peel descents from w0 on the right, smallest index first.
  RootDatum::WeylPerm v = d.longest_perm();
  int len = d.perm_length(v);
  std::vector<int> rev;
  while (len > 0) {
    bool moved = false;
    for (int i = 0; i < d.rank() && !moved; ++i) {
      // length(v s_i) < length(v) iff v(alpha_i) < 0
      int img = v[static_cast<size_t>(d.root_index(d.alpha(i)))];
      if (!d.all_roots()[static_cast<size_t>(img)].nonneg()) {
        v = RootDatum::compose(v, d.simple_perm(i));
        rev.push_back(i);
        --len;
        moved = true;
      }
    }
    if (!moved) throw Error("canonical_w0_word: descent search stuck");
  }
  w.letters.assign(rev.rbegin(), rev.rend());
  return w;
}

// Order of s_a s_b in the Weyl group, from the Cartan integers.
inline int braid_order(const RootDatum& d, int a, int b) {
  int m = d.cartan(a, b) * d.cartan(b, a);
  switch (m) {
    case 0:
      return 2;
    case 1:
      return 3;
    case 2:
      return 4;
    case 3:
      return 6;
    default:
      throw Error("braid_order: not a finite rank-2 system");
  }
}

// Replace the length-m braid segment (a,b,a,...) at `position` by
// (b,a,b,...).  The result is a reduced word for the same Weyl element.
inline ReducedWord apply_braid_move(const RootDatum& d, const ReducedWord& w, int position) {
  if (position < 0 || position >= w.size() - 1)
    throw Error("apply_braid_move: position out of range");
  int a = w.letters[static_cast<size_t>(position)];
  int b = w.letters[static_cast<size_t>(position) + 1];
  if (a == b) throw Error("apply_braid_move: equal adjacent letters");
  int m = braid_order(d, a, b);
  if (position + m > w.size()) throw Error("apply_braid_move: braid relation does not fit");
  for (int t = 0; t < m; ++t) {
    int expect = (t % 2 == 0) ? a : b;
    if (w.letters[static_cast<size_t>(position + t)] != expect)
      throw Error("apply_braid_move: segment is not an alternating braid segment");
  }
  ReducedWord out = w;
  for (int t = 0; t < m; ++t) out.letters[static_cast<size_t>(position + t)] = (t % 2 == 0) ? b : a;
  return out;
}

struct BraidMove {
  int position = 0;
  int order = 0;  // 2, 3, 4 or 6
};

// Breadth-first chain of braid moves from `a` to `b` (both reduced words for
// the same element).  Returns nullopt if the cap is exhausted.
inline std::optional<std::vector<BraidMove>> find_move_chain(const RootDatum& d,
                                                             const ReducedWord& a,
                                                             const ReducedWord& b,
                                                             size_t cap = 200000) {
  if (a == b) return std::vector<BraidMove>{};
  std::map<ReducedWord, std::pair<ReducedWord, BraidMove>> parent;
  std::vector<ReducedWord> queue{a};
  parent[a] = {a, BraidMove{-1, 0}};
  for (size_t h = 0; h < queue.size() && parent.size() < cap; ++h) {
    ReducedWord cur = queue[h];
    for (int p = 0; p + 1 < cur.size(); ++p) {
      ReducedWord nxt;
      int aa = cur.letters[static_cast<size_t>(p)];
      int bb = cur.letters[static_cast<size_t>(p) + 1];
      if (aa == bb) continue;
      int m = braid_order(d, aa, bb);
      try {
        nxt = apply_braid_move(d, cur, p);
      } catch (const Error&) {
        continue;
      }
      if (parent.count(nxt)) continue;
      parent[nxt] = {cur, BraidMove{p, m}};
      if (nxt == b) {
        std::vector<BraidMove> chain;
        ReducedWord t = b;
        while (!(t == a)) {
          chain.push_back(parent[t].second);
          t = parent[t].first;
        }
        std::reverse(chain.begin(), chain.end());
        return chain;
      }
      queue.push_back(nxt);
    }
  }
  return std::nullopt;
}

// Interval (i,j), 0-based, with root = alpha_i + ... + alpha_j (type A).
inline std::pair<int, int> type_a_interval(const RootDatum& d, const LatticeVector& root) {
  if (d.letter() != 'A') throw Error("type_a_interval: datum is not of type A");
  int i = -1, j = -1;
  for (int t = 0; t < d.rank(); ++t) {
    int c = root.c[static_cast<size_t>(t)];
    if (c == 1) {
      if (i < 0) i = t;
      j = t;
    } else if (c != 0) {
      throw Error("type_a_interval: not an interval root");
    }
  }
  if (i < 0) throw Error("type_a_interval: zero vector");
  for (int t = i; t <= j; ++t)
    if (root.c[static_cast<size_t>(t)] != 1) throw Error("type_a_interval: gap in support");
  return {i, j};
}

}  // namespace qboson
