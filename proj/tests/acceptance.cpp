// Acceptance suite: one check per numbered criterion, each printed as a
// single pass/fail line with its elapsed time.  Exit status is the number of
// failed criteria (0 = all pass).  Run a single criterion with
// --criterion N.

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qboson/poisson.hpp"

using namespace qboson;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count() /
         1000.0;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::vector<LatticeVector> cone_weights(const RootDatum& d, int max_height) {
  std::vector<LatticeVector> out;
  std::function<void(LatticeVector&, int, int)> rec = [&](LatticeVector& cur, int i, int left) {
    if (i == d.rank()) {
      if (cur.height() > 0) out.push_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur.c[static_cast<size_t>(i)] = v;
      rec(cur, i + 1, left - v);
    }
    cur.c[static_cast<size_t>(i)] = 0;
  };
  LatticeVector cur = LatticeVector::zero(d.rank());
  rec(cur, 0, max_height);
  return out;
}

std::map<std::pair<int, int>, int> interval_index(const PBWBasis& b) {
  std::map<std::pair<int, int>, int> out;
  auto iv = type_a_intervals(b);
  for (int k = 0; k < b.size(); ++k) out[iv[static_cast<size_t>(k)]] = k;
  return out;
}

BracketTable hayashi_table(const std::string& type) {
  RootDatum d = build_root_datum(type);
  PBWBasis b(d);
  KashiwaraCalculus calc(b);
  return hayashi_structure(calc).table;
}

// ---- criterion bodies --------------------------------------------------------

// 1. A2 bracket equals {x,y} = xy + 2u, {x,u} = -xu, {y,u} = yu, by Hayashi.
Outcome criterion1() {
  RootDatum d = build_root_datum('A', 2);
  PBWBasis b(d);
  KashiwaraCalculus calc(b);
  BracketTable t = hayashi_structure(calc).table;
  auto idx = interval_index(b);
  int x = idx.at({0, 0}), u = idx.at({0, 1}), y = idx.at({1, 1});
  int N = 3;
  Poly X = Poly::variable(N, x), U = Poly::variable(N, u), Y = Poly::variable(N, y);
  bool ok = t.get(x, y) == X * Y + U.scaled(2) && t.get(x, u) == -(X * U) &&
            t.get(y, u) == Y * U;
  return {ok, "3 brackets"};
}

// 2. A3 bracket equals the published 15-entry table.
Outcome criterion2() {
  RootDatum d = build_root_datum('A', 3);
  PBWBasis b(d);
  KashiwaraCalculus calc(b);
  BracketTable t = hayashi_structure(calc).table;
  auto idx = interval_index(b);
  int N = 6;
  int x = idx.at({0, 0}), y = idx.at({1, 1}), z = idx.at({2, 2});
  int u = idx.at({0, 1}), v = idx.at({1, 2}), s = idx.at({0, 2});
  auto V = [&](int k) { return Poly::variable(N, k); };
  int good = 0;
  auto expect = [&](int a, int bb, const Poly& p) { good += t.get(a, bb) == p ? 1 : 0; };
  expect(x, y, V(x) * V(y) + V(u).scaled(2));
  expect(x, z, Poly(N));
  expect(x, u, -(V(x) * V(u)));
  expect(x, v, V(x) * V(v) + V(s).scaled(2));
  expect(x, s, -(V(x) * V(s)));
  expect(y, z, V(y) * V(z) + V(v).scaled(2));
  expect(y, u, V(y) * V(u));
  expect(y, v, -(V(y) * V(v)));
  expect(y, s, Poly(N));
  expect(z, u, -(V(u) * V(z)) - V(s).scaled(2));
  expect(z, v, V(z) * V(v));
  expect(z, s, V(z) * V(s));
  expect(u, v, (V(y) * V(s)).scaled(-2));
  expect(u, s, -(V(u) * V(s)));
  expect(v, s, V(v) * V(s));
  return {good == 15, std::to_string(good) + "/15 brackets match"};
}

// 3. G2 bracket equals the published 15-entry table.
Outcome criterion3() {
  BracketTable t = hayashi_table("G2");
  int N = 6;
  auto V = [&](int k) { return Poly::variable(N, k - 1); };
  BracketTable g2(N);
  auto set = [&](int i, int j, const Poly& p) { g2.set(i - 1, j - 1, p); };
  set(1, 2, (V(1) * V(2)).scaled(-3));
  set(1, 3, -(V(1) * V(3)) + V(2).scaled(2));
  set(1, 4, (V(3) * V(3)).scaled(-6));
  set(1, 5, V(1) * V(5) + V(3).scaled(4));
  set(1, 6, (V(1) * V(6)).scaled(3) + V(5).scaled(6));
  set(2, 3, (V(2) * V(3)).scaled(-3));
  set(2, 4, (V(2) * V(4)).scaled(-3) + (V(3) * V(3) * V(3)).scaled(6));
  set(2, 5, (V(3) * V(3)).scaled(-6));
  set(2, 6, (V(2) * V(6)).scaled(3) - (V(3) * V(5)).scaled(18) - V(4).scaled(6));
  set(3, 4, (V(3) * V(4)).scaled(-3));
  set(3, 5, -(V(3) * V(5)) + V(4).scaled(2));
  set(3, 6, (V(5) * V(5)).scaled(-6));
  set(4, 5, (V(4) * V(5)).scaled(-3));
  set(4, 6, (V(4) * V(6)).scaled(-3) + (V(5) * V(5) * V(5)).scaled(6));
  set(5, 6, (V(5) * V(6)).scaled(-3));
  int good = 0;
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) good += t.get(i, j) == g2.get(i, j) ? 1 : 0;
  return {good == 15, std::to_string(good) + "/15 brackets match"};
}

// 4. LS support + valuation certificates, both sides, A2 A3 A4 B2 G2.
Outcome criterion4() {
  int pairs = 0;
  for (const std::string type : {"A2", "A3", "A4", "B2", "G2"}) {
    RootDatum d = build_root_datum(type);
    PBWBasis b(d);
    for (Side side : {Side::E, Side::F}) {
      // ls_relation throws CertificateError on any violation
      LSTable t = build_ls_table(b, side);
      pairs += static_cast<int>(t.pairs.size());
    }
  }
  return {true, std::to_string(pairs) + " pair-tables certified"};
}

// 5. Orthogonality r'_d(F^e) = delta_{d,e}, exhaustive heights <= 6, A3 + G2.
Outcome criterion5() {
  long checked = 0;
  for (const std::string type : {"A3", "G2"}) {
    RootDatum d = build_root_datum(type);
    PBWBasis b(d);
    KashiwaraCalculus calc(b);
    for (const auto& mu : cone_weights(d, 6)) {
      const auto& exps = b.exponents_of_weight(mu);
      for (const auto& dd : exps) {
        GradedMatrix m = calc.matrix_of_rd(dd, mu);
        for (size_t c = 0; c < m.src.size(); ++c) {
          QScalar want = m.src[c] == dd ? QScalar(1) : QScalar();
          if (!(m.a[0][c] == want))
            return {false, type + " weight " + mu.str()};
          ++checked;
        }
      }
    }
  }
  return {true, std::to_string(checked) + " evaluations"};
}

// 6. Commutator closed form vs the direct matrix commutator, all pairs in
// A2, A3, G2, with the support and (1-q)-divisibility certificates.
Outcome criterion6() {
  int pairs = 0;
  for (const std::string type : {"A2", "A3", "G2"}) {
    RootDatum d = build_root_datum(type);
    PBWBasis b(d);
    KashiwaraCalculus calc(b);
    for (int i = 0; i < b.size(); ++i)
      for (int j = i + 1; j < b.size(); ++j) {
        calc.commutator_structure(i, j);  // throws on any mismatch or cert failure
        ++pairs;
      }
  }
  return {true, std::to_string(pairs) + " commutators certified"};
}

// 7. Jacobi identity, all generator triples, A2 A3 A4 B2 G2.
Outcome criterion7() {
  for (const std::string type : {"A2", "A3", "A4", "B2", "G2"}) {
    BracketTable t = hayashi_table(type);
    if (!jacobi_ok(t)) return {false, type};
  }
  return {true, "5 types"};
}

// 8. Casimirs: psi (A2, A3), psi' (A3), quantum Casimir central for n = 1..3.
Outcome criterion8() {
  for (int n : {2, 3}) {
    RootDatum d = build_root_datum('A', n);
    PBWBasis b(d);
    KashiwaraCalculus calc(b);
    BracketTable t = hayashi_structure(calc).table;
    if (!casimir_check(casimir_psi(b), t)) return {false, "psi, A" + std::to_string(n)};
    if (n == 3 && !casimir_check(casimir_psi_prime_a3(b), t)) return {false, "psi', A3"};
  }
  for (int n : {1, 2, 3}) {
    RootDatum d = build_root_datum('A', n);
    PBWBasis b(d);
    KashiwaraCalculus calc(b);
    if (!calc.casimir_centrality_check())
      return {false, "Psi centrality, n = " + std::to_string(n)};
  }
  return {true, "psi, psi', Psi central for n = 1, 2, 3"};
}

// 9. Deformed-bivector suite, every interval in A2 and A3; the A2 values of
// the worked example (with the (dx,dy) entry of the long-root row at its
// value forced by the bracket table and the closed-form field).
Outcome criterion9() {
  {
    RootDatum d = build_root_datum('A', 2);
    PBWBasis b(d);
    KashiwaraCalculus calc(b);
    BracketTable t = hayashi_structure(calc).table;
    auto idx = interval_index(b);
    int x = idx.at({0, 0}), u = idx.at({0, 1}), y = idx.at({1, 1});
    int N = 3;
    auto V = [&](int k) { return Poly::variable(N, k); };
    Bivector b1 = lie_derivative(vector_field(calc, x), t);
    if (!(b1.get(x, y) == V(y))) return {false, "A2 example F1 (dx,dy)"};
    if (!(b1.get(x, u) == (V(x) * V(y)).scaled(-2) - V(u))) return {false, "A2 example F1 (dx,du)"};
    if (!(b1.get(y, u) == V(y) * V(y))) return {false, "A2 example F1 (dy,du)"};
    Bivector b2 = lie_derivative(vector_field(calc, y), t);
    if (!(b2.get(x, y) == -V(x))) return {false, "A2 example F2 (dx,dy)"};
    if (!b2.get(x, u).is_zero()) return {false, "A2 example F2 (dx,du)"};
    if (!(b2.get(y, u) == -V(u))) return {false, "A2 example F2 (dy,du)"};
    Bivector b3 = lie_derivative(vector_field(calc, u), t);
    if (!(b3.get(x, u) == V(x))) return {false, "A2 example F12 (dx,du)"};
    if (!(b3.get(y, u) == -V(y))) return {false, "A2 example F12 (dy,du)"};
    if (!(b3.get(x, y) == Poly::constant(N, BigRat(-2))))
      return {false, "A2 example F12 (dx,dy), forced value -2"};
  }
  for (int n : {2, 3}) {
    RootDatum d = build_root_datum('A', n);
    PBWBasis b(d);
    KashiwaraCalculus calc(b);
    BracketTable t = hayashi_structure(calc).table;
    for (int k = 0; k < b.size(); ++k) {
      PolyVectorField vf = vector_field(calc, k);
      Bivector lb = lie_derivative(vf, t);
      if (!jacobi_ok(lb)) return {false, "deformed bivector not Poisson, A" + std::to_string(n)};
      if (!lie_derivative(vf, lb).is_zero())
        return {false, "[F,[F,pi]] nonzero, A" + std::to_string(n)};
      if (!pencil_checks(t, lb).compatible())
        return {false, "incompatible with pi, A" + std::to_string(n)};
    }
  }
  return {true, "A2 worked example + full A2/A3 interval sweep"};
}

// 10. pi and pi_KK compatible, and {,} - 2{,}_KK Poisson, n = 2, 3, 4.
Outcome criterion10() {
  for (int n : {2, 3, 4}) {
    RootDatum d = build_root_datum('A', n);
    PBWBasis b(d);
    KashiwaraCalculus calc(b);
    BracketTable t = hayashi_structure(calc).table;
    BracketTable kk = kirillov_kostant(b).table;
    if (!pencil_checks(t, kk).compatible()) return {false, "A" + std::to_string(n)};
    if (!jacobi_ok(t - kk.scaled(2))) return {false, "variant bracket, A" + std::to_string(n)};
  }
  return {true, "n = 2, 3, 4"};
}

// 11. Generic rank: 2, 4, 8 for A2, A3, A4; dim h^{-w0} for B2, G2;
// seed-deterministic.  The rank sampling itself carries the 1-minute budget.
Outcome criterion11() {
  std::ostringstream detail;
  bool ok = true;
  for (const std::string type : {"A2", "A3", "A4", "B2", "G2"}) {
    RootDatum d = build_root_datum(type);
    BracketTable t = hayashi_table(type);
    auto t0 = Clock::now();
    int r = generic_rank(t, 5, 7);
    double dt = seconds_since(t0);
    int r2 = generic_rank(t, 5, 7);
    int expect = d.letter() == 'A' ? (d.rank() * d.rank()) / 2 : d.dim_h_fixed_minus_w0();
    bool here = (r == expect) && (r == r2) && dt < 60.0;
    if (!here) {
      detail << type << ": computed " << r << ", criterion expects " << expect;
      if (d.letter() != 'A')
        detail << " (= dim h^{-w0}; N - dim h^{-w0} = "
               << d.num_positive_roots() - d.dim_h_fixed_minus_w0() << ")";
      detail << "; ";
    } else {
      detail << type << "=" << r << " ";
    }
    ok = ok && here;
  }
  return {ok, detail.str()};
}

// 12. Word independence: operator identities and bracket transport for the
// A2 pair and an A3 one-move pair.
Outcome criterion12() {
  {
    RootDatum d = build_root_datum('A', 2);
    ReducedWord wa{{0, 1, 0}}, wb{{1, 0, 1}};
    PBWBasis ba(d, wa), bb(d, wb);
    KashiwaraCalculus ca(ba), cb(bb);
    if (!KashiwaraCalculus::braid_move_identities(ca, cb, 0))
      return {false, "A2 operator identities"};
    auto res = reduced_word_independence_check(d, wa, wb);
    if (!(res.supported && res.holds)) return {false, "A2 bracket transport: " + res.detail};
  }
  {
    RootDatum d = build_root_datum('A', 3);
    ReducedWord wa{{0, 1, 0, 2, 1, 0}};
    ReducedWord wb = apply_braid_move(d, wa, 0);
    PBWBasis ba(d, wa), bb(d, wb);
    KashiwaraCalculus ca(ba), cb(bb);
    if (!KashiwaraCalculus::braid_move_identities(ca, cb, 0))
      return {false, "A3 operator identities"};
    auto res = reduced_word_independence_check(d, wa, wb);
    if (!(res.supported && res.holds)) return {false, "A3 bracket transport: " + res.detail};
  }
  return {true, "A2 pair + A3 one-move pair"};
}

// 13. Kashiwara defining identity for every simple root and every PBW basis
// vector of height <= 5 in A2, A3, B2.
Outcome criterion13() {
  long checked = 0;
  for (const std::string type : {"A2", "A3", "B2"}) {
    RootDatum d = build_root_datum(type);
    PBWBasis b(d);
    KashiwaraCalculus calc(b);
    for (const auto& mu : cone_weights(d, 5)) {
      for (const auto& e : b.exponents_of_weight(mu)) {
        for (int alpha = 0; alpha < d.rank(); ++alpha) {
          auto [rplus, ok] = calc.kashiwara_defining_check(alpha, e);
          if (!ok) return {false, type + " weight " + mu.str()};
          ++checked;
        }
      }
    }
  }
  return {true, std::to_string(checked) + " identities"};
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;  // 0 = no stated budget
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
  }
  std::vector<Criterion> criteria = {
      {1, "A2 Poisson table equals the worked example (Hayashi route)", 5, criterion1},
      {2, "A3 Poisson table equals the published 15-bracket table", 60, criterion2},
      {3, "G2 Poisson table equals the published 15-bracket table", 300, criterion3},
      {4, "LS support + (1-q)-valuation certificates, both sides, A2 A3 A4 B2 G2", 900,
       criterion4},
      {5, "orthogonality r'_d(F^e) = delta, heights <= 6, A3 and G2", 0, criterion5},
      {6, "commutator closed form vs direct matrices + certificates, A2 A3 G2", 0, criterion6},
      {7, "Jacobi identity on all generator triples, A2 A3 A4 B2 G2", 0, criterion7},
      {8, "Casimirs psi/psi' and quantum Casimir centrality (n = 1, 2, 3)", 600, criterion8},
      {9, "deformed bivectors: worked values, Poisson, [F,[F,pi]] = 0, compatible", 0,
       criterion9},
      {10, "pi compatible with pi_KK and {,}-2{,}_KK Poisson (n = 2, 3, 4)", 0, criterion10},
      {11, "generic rank: 2/4/8 for A2/A3/A4 and dim h^{-w0} for B2/G2", 0, criterion11},
      {12, "word independence: operator identities + bracket transport", 0, criterion12},
      {13, "Kashiwara defining identity, heights <= 5, A2 A3 B2", 0, criterion13},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    auto t0 = Clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    double dt = seconds_since(t0);
    bool in_budget = c.budget_seconds == 0 || dt < c.budget_seconds;
    bool pass = out.pass && in_budget;
    std::cout << (pass ? "[PASS]" : "[FAIL]") << " criterion " << c.id << ": " << c.name << " ["
              << dt << " s";
    if (c.budget_seconds > 0) std::cout << " / budget " << c.budget_seconds << " s";
    std::cout << "]";
    if (!out.detail.empty()) std::cout << " -- " << out.detail;
    if (!in_budget) std::cout << " -- over time budget";
    std::cout << std::endl;
    if (!pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
