#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qboson/boson.hpp"

using namespace qboson;

namespace {

QScalar qp(int e) { return QScalar::q_power(e); }
ExpVec ev(std::vector<int> v) { return v; }

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

}  // namespace

TEST_CASE("orthogonality r'_d(F^e) = delta on small pieces of A2") {
  RootDatum a2 = build_root_datum('A', 2);
  PBWBasis b(a2);
  KashiwaraCalculus calc(b);
  for (const auto& mu : cone_weights(a2, 4)) {
    const auto& exps = b.exponents_of_weight(mu);
    for (const auto& d : exps) {
      GradedMatrix m = calc.matrix_of_rd(d, mu);
      REQUIRE(m.dst.size() == 1);  // weight-0 target
      for (size_t c = 0; c < m.src.size(); ++c) {
        QScalar expect = m.src[c] == d ? QScalar(1) : QScalar();
        CHECK(m.a[0][c] == expect);
      }
    }
  }
}

TEST_CASE("single Kashiwara operator values in A2") {
  RootDatum a2 = build_root_datum('A', 2);
  PBWBasis b(a2);
  KashiwaraCalculus calc(b);

  // r'_1 on the weight-alpha_2 piece: target alpha_2 - alpha_1 leaves the
  // cone, so the matrix has no rows
  const GradedMatrix& dead = calc.single(0, a2.alpha(1));
  CHECK(dead.dst.empty());

  // r'_3(F_2) = (q^{-1} - q) F_1 where F_2 is the root vector of
  // alpha_1 + alpha_2 and r'_3 belongs to alpha_2
  UElement image = calc.apply_rprime(2, b.f_root_vector(1));
  UElement expect = b.f_monomial(ev({1, 0, 0})).scaled(qp(-1) - qp(1));
  CHECK(image == expect);
}

TEST_CASE("mix identity: r'_d vs scaled composition") {
  RootDatum a2 = build_root_datum('A', 2);
  PBWBasis b(a2);
  KashiwaraCalculus calc(b);
  // trivial single-index case
  CHECK(calc.mix_identity_check(ev({0, 1, 0}), a2.alpha(0) + a2.alpha(1)));
  // d = (1,0,1) on mu = alpha_1 + alpha_2
  CHECK(calc.mix_identity_check(ev({1, 0, 1}), a2.alpha(0) + a2.alpha(1)));
  // a bigger piece
  CHECK(calc.mix_identity_check(ev({1, 1, 0}),
                                a2.alpha(0).scaled(2) + a2.alpha(1).scaled(2)));

  RootDatum g2 = build_root_datum('G', 2);
  PBWBasis bg(g2);
  KashiwaraCalculus cg(bg);
  // d = (0,1,0,0,0,1), mu = lambda_2 + lambda_6
  CHECK(cg.mix_identity_check(ev({0, 1, 0, 0, 0, 1}), bg.root(1) + bg.root(5)));
}

TEST_CASE("operator PBW round trip") {
  RootDatum a2 = build_root_datum('A', 2);
  PBWBasis b(a2);
  KashiwaraCalculus calc(b);

  // unit vector on (r'_1)^m
  for (int m : {1, 2, 3}) {
    ExpVec d = ev({m, 0, 0});
    OperatorElement op = calc.to_operator_pbw(calc.monomial_matrix(d, b.weight_of(d)));
    REQUIRE(op.a.size() == 1);
    CHECK(op.a.at(d) == QScalar(1));
  }

  // random homogeneous operators round trip through the matrix realization
  std::mt19937 rng(607);
  for (const auto& mu : cone_weights(a2, 4)) {
    OperatorElement op;
    for (const auto& d : b.exponents_of_weight(mu))
      if (rng() % 2) op.add(d, qp(static_cast<int>(rng() % 5) - 2) * QScalar(1 + static_cast<int>(rng() % 2)));
    if (op.is_zero()) continue;
    OperatorElement back = calc.to_operator_pbw(calc.operator_matrix(op, mu));
    CHECK(back == op);
  }
}

TEST_CASE("commutator structure constants") {
  RootDatum a2 = build_root_datum('A', 2);
  PBWBasis b(a2);
  KashiwaraCalculus calc(b);

  OperatorElement h = calc.commutator_structure(0, 2);
  CHECK(h.a.at(ev({1, 0, 1})) == qp(-1) - QScalar(1));
  CHECK(h.a.at(ev({0, 1, 0})) == -(qp(1) - qp(-1)));
  CHECK(h.a.size() == 2);

  // commuting pair in A3
  RootDatum a3 = build_root_datum('A', 3);
  PBWBasis b3(a3);
  KashiwaraCalculus c3(b3);
  for (int i = 0; i < b3.size(); ++i)
    for (int j = i + 1; j < b3.size(); ++j)
      if (a3.pair(b3.root(i), b3.root(j)) == 0 && (b3.root(i) + b3.root(j)).height() == 2) {
        CHECK(c3.commutator_structure(i, j).is_zero());
      }

  // G2 (1,2): after division by 1-q at q=1, coefficient of x_1 x_2 is -3
  RootDatum g2 = build_root_datum('G', 2);
  PBWBasis bg(g2);
  KashiwaraCalculus cg(bg);
  OperatorElement hg = cg.commutator_structure(0, 1);
  QScalar c12 = hg.a.at(ev({1, 1, 0, 0, 0, 0}));
  QScalar one_minus_q = QScalar(1) - qp(1);
  CHECK((c12 / one_minus_q).eval_at_one() == BigRat(-3));
}

TEST_CASE("Kashiwara defining identity") {
  RootDatum a2 = build_root_datum('A', 2);
  PBWBasis b(a2);
  KashiwaraCalculus calc(b);

  // y = F_beta with beta != alpha: no K blocks at all, r'_alpha(y) = 0
  int idx_beta = -1;
  for (int k = 0; k < b.size(); ++k)
    if (b.root(k) == a2.alpha(1)) idx_beta = k;
  REQUIRE(idx_beta >= 0);
  ExpVec e_beta(3, 0);
  e_beta[static_cast<size_t>(idx_beta)] = 1;
  auto [rplus, ok] = calc.kashiwara_defining_check(0, e_beta);
  CHECK(ok);
  CHECK(rplus.is_zero());

  // y = F_alpha: r'_alpha(F_alpha) = 1 is recovered
  ExpVec e_alpha(3, 0);
  e_alpha[0] = 1;  // lambda_1 = alpha_1
  auto [rp2, ok2] = calc.kashiwara_defining_check(0, e_alpha);
  CHECK(ok2);

  // the root-vector example: y = F^{e_2} (the alpha_1+alpha_2 vector), alpha = alpha_2
  auto [rp3, ok3] = calc.kashiwara_defining_check(1, ev({0, 1, 0}));
  CHECK(ok3);

  // sweep all basis vectors of height <= 4
  for (const auto& mu : cone_weights(a2, 4))
    for (const auto& e : b.exponents_of_weight(mu))
      for (int alpha = 0; alpha < 2; ++alpha) {
        auto [rp, okk] = calc.kashiwara_defining_check(alpha, e);
        CHECK(okk);
      }
}

TEST_CASE("Leibniz rule") {
  RootDatum a2 = build_root_datum('A', 2);
  PBWBasis b(a2);
  KashiwaraCalculus calc(b);
  // y = 1 reduces to the identity
  CHECK(calc.leibniz_check(1, ev({0, 0, 0}), ev({0, 1, 0})));
  // lambda = lambda_2, y = F^{e_1}, y' = F^{e_3}
  CHECK(calc.leibniz_check(1, ev({1, 0, 0}), ev({0, 0, 1})));
  // sweep small pairs in A3
  RootDatum a3 = build_root_datum('A', 3);
  PBWBasis b3(a3);
  KashiwaraCalculus c3(b3);
  std::mt19937 rng(11);
  std::vector<std::pair<ExpVec, ExpVec>> samples;
  for (const auto& mu : cone_weights(a3, 2))
    for (const auto& dy : b3.exponents_of_weight(mu))
      for (const auto& mu2 : cone_weights(a3, 2))
        for (const auto& dyp : b3.exponents_of_weight(mu2)) samples.push_back({dy, dyp});
  // thin out deterministically
  for (size_t t = 0; t < samples.size(); t += 7) {
    int lam = static_cast<int>(rng() % 6);
    CHECK(c3.leibniz_check(lam, samples[t].first, samples[t].second));
  }
}

TEST_CASE("c coefficients") {
  RootDatum a2 = build_root_datum('A', 2);
  PBWBasis b(a2);
  KashiwaraCalculus calc(b);
  ExpVec zero(3, 0);

  // d = e_j: c at f = 0 equals 1
  for (int j = 0; j < 3; ++j) {
    ExpVec d(3, 0);
    d[static_cast<size_t>(j)] = 1;
    auto cs = calc.c_coefficients(d, j);
    REQUIRE(cs.count(zero) == 1);
    CHECK(cs.at(zero).c == QScalar(1));
  }

  // d != e_j with lambda_d = lambda_j: c at f = 0 vanishes
  auto cs = calc.c_coefficients(ev({1, 0, 1}), 1);
  if (cs.count(zero)) CHECK(cs.at(zero).c == QScalar());
  // valuation certificates hold on everything computed here
  for (const auto& [f, cc] : cs) {
    CHECK(cc.in_A);
    CHECK(cc.valuation_ok);
  }
}

TEST_CASE("divided matrices are integral") {
  RootDatum b2 = build_root_datum('B', 2);
  PBWBasis b(b2);
  KashiwaraCalculus calc(b);
  for (const auto& mu : cone_weights(b2, 4)) {
    for (const auto& d : b.exponents_of_weight(mu)) {
      CHECK(calc.divided_integrality_check(d, mu));
      // also from a strictly larger source piece
      CHECK(calc.divided_integrality_check(d, mu + b2.alpha(0)));
    }
  }
}

TEST_CASE("quantum Casimir") {
  // n = 1: Psi = (r'_1)^2, trivially central
  RootDatum a1 = build_root_datum('A', 1);
  PBWBasis b1(a1);
  KashiwaraCalculus c1(b1);
  OperatorElement psi1 = c1.quantum_casimir();
  REQUIRE(psi1.a.size() == 1);
  CHECK(psi1.a.at(ev({2})) == QScalar(1));
  CHECK(c1.casimir_centrality_check());

  // n = 2: the Hayashi limit is (x y + u) u -> coefficient 1 on x1 x2 x3 and
  // on x2^2 in the interval ordering x = x_{1,1}, u = x_{1,2}, y = x_{2,2}
  RootDatum a2 = build_root_datum('A', 2);
  PBWBasis b2(a2);
  KashiwaraCalculus c2(b2);
  OperatorElement psi2 = c2.quantum_casimir();
  QScalar c111 = psi2.a.count(ev({1, 1, 1})) ? psi2.a.at(ev({1, 1, 1})) : QScalar();
  QScalar c020 = psi2.a.count(ev({0, 2, 0})) ? psi2.a.at(ev({0, 2, 0})) : QScalar();
  CHECK(c111.eval_at_one() == 1);
  CHECK(c020.eval_at_one() == 1);
  for (const auto& [d, c] : psi2.a)
    if (!(d == ev({1, 1, 1})) && !(d == ev({0, 2, 0}))) CHECK(c.eval_at_one() == 0);
  CHECK(c2.casimir_centrality_check());
}

TEST_CASE("braid move operator identities") {
  RootDatum a2 = build_root_datum('A', 2);
  PBWBasis ba(a2, ReducedWord{{0, 1, 0}});
  PBWBasis bb(a2, ReducedWord{{1, 0, 1}});
  KashiwaraCalculus ca(ba), cb(bb);
  CHECK(KashiwaraCalculus::braid_move_identities(ca, cb, 0));

  // commuting swap inside A3
  RootDatum a3 = build_root_datum('A', 3);
  ReducedWord w{{0, 2, 1, 0, 2, 1}};
  REQUIRE(word_is_reduced(a3, w));
  REQUIRE(a3.word_perm(w) == a3.longest_perm());
  PBWBasis b3a(a3, w);
  PBWBasis b3b(a3, apply_braid_move(a3, w, 0));
  KashiwaraCalculus c3a(b3a), c3b(b3b);
  CHECK(KashiwaraCalculus::braid_move_identities(c3a, c3b, 0));

  // A2-type move at the start of the canonical A3 word
  ReducedWord wc{{0, 1, 0, 2, 1, 0}};
  REQUIRE(a3.word_perm(wc) == a3.longest_perm());
  PBWBasis b3c(a3, wc);
  PBWBasis b3d(a3, apply_braid_move(a3, wc, 0));
  KashiwaraCalculus c3c(b3c), c3d(b3d);
  CHECK(KashiwaraCalculus::braid_move_identities(c3c, c3d, 0));
}
