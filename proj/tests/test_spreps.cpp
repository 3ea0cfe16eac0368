#include <doctest.h>

#include <random>

#include "jtrace/free_lie.hpp"
#include "jtrace/spreps.hpp"

using namespace jt;

TEST_CASE("partition parsing") {
  CHECK(Partition::parse("1^5").parts == std::vector<uint32_t>{1, 1, 1, 1, 1});
  CHECK(Partition::parse("[3,1^5]").parts == std::vector<uint32_t>({3, 1, 1, 1, 1, 1}));
  CHECK(Partition::parse("(2,1,1)").parts == std::vector<uint32_t>({2, 1, 1}));
  CHECK(Partition::parse("3,1^5").size() == 8);
  CHECK_THROWS_AS(Partition({1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Partition({1, 0}), std::invalid_argument);
}

TEST_CASE("weights") {
  WordShape s8(8, 8);
  PackedWord w = s8.pack({1, 2, 3, 4, 5, 6, 1, 1});
  CHECK(word_weight(s8, w, WeightContext::GL, 0) ==
        WeightVector({3, 1, 1, 1, 1, 1, 0, 0}));

  SymplecticContext g6(6);
  SparseTensor t = tensor_product(wedge(12, {1, 2, 3, 4, 5, 6}),
                                  tensor_product(SparseTensor(12, 0), SparseTensor(12, 0)));
  // Build wedge (x) e1 (x) e1 directly.
  SparseTensor e1(12, 1);
  e1.add_term(Letters{1}, Scalar(1));
  SparseTensor v = tensor_product(wedge(12, {1, 2, 3, 4, 5, 6}), tensor_product(e1, e1));
  CHECK(tensor_weight(v, WeightContext::Sp, 6) == WeightVector({3, 1, 1, 1, 1, 1}));

  // omega mixes GL weights.
  CHECK_THROWS_AS(tensor_weight(omega(g6), WeightContext::GL, 0), std::invalid_argument);
  // ... but is Sp-weight zero.
  CHECK(tensor_weight(omega(g6), WeightContext::Sp, 6) == WeightVector(6, 0));
}

TEST_CASE("omega") {
  SymplecticContext g1(1);
  SparseTensor om = omega(g1);
  CHECK(om.term_count() == 2);
  CHECK(om.coeff(Letters{1, 2}) == Scalar(1));
  CHECK(om.coeff(Letters{2, 1}) == Scalar(-1));
  for (uint32_t g = 1; g <= 4; ++g) CHECK(omega(SymplecticContext(g)).term_count() == 2 * g);
}

TEST_CASE("wedge") {
  SparseTensor w2 = wedge(3, {1, 2});
  CHECK(w2.coeff(Letters{1, 2}) == Scalar(1));
  CHECK(w2.coeff(Letters{2, 1}) == Scalar(-1));

  SparseTensor w6 = wedge(6, {1, 2, 3, 4, 5, 6});
  CHECK(w6.term_count() == 720);
  for (const auto& [w, c] : w6.terms())
    CHECK((c == Scalar(1) || c == Scalar(-1)));

  CHECK(wedge(3, {1, 1}).is_zero());
}

TEST_CASE("dsw idempotent: toy case and the commutator-tail oracle") {
  // Degree 3: theta = (1 - s_2); e1 (x) e2 (x) e3 -> e1 (x) (e2 e3 - e3 e2).
  SparseTensor t(3, 3);
  t.add_term(Letters{1, 2, 3}, Scalar(1));
  SparseTensor d = dsw_theta_right(t);
  CHECK(d.coeff(Letters{1, 2, 3}) == Scalar(1));
  CHECK(d.coeff(Letters{1, 3, 2}) == Scalar(-1));
  CHECK(d.term_count() == 2);

  // On any word, w*theta = w_1 (x) [w_2,...,w_m]; linear extension on random
  // tensors, degrees 2..7, plus serial/parallel agreement.
  std::mt19937_64 rng(606);
  for (int iter = 0; iter < 60; ++iter) {
    uint32_t m = 2 + rng() % 6;
    uint32_t n = 2 + rng() % 3;
    SparseTensor u(n, m);
    SparseTensor expect(n, m);
    for (int j = 0; j < 5; ++j) {
      Letters w(m);
      for (auto& v : w) v = static_cast<uint8_t>(1 + rng() % n);
      int64_t c = static_cast<int64_t>(rng() % 5) - 2;
      if (c == 0) continue;
      u.add_term(w, Scalar(c));
      SparseTensor head(n, 1);
      head.add_term(Letters{w[0]}, Scalar(1));
      Letters tail(w.begin() + 1, w.end());
      expect = add(expect, scale(tensor_product(head, expand_commutator(n, tail)), Scalar(c)));
    }
    REQUIRE(dsw_theta_right(u) == expect);
    REQUIRE(dsw_theta_right_serial(u) == expect);
  }
}

TEST_CASE("expansion operators") {
  SymplecticContext g2(2);
  SparseTensor e3(4, 1);
  e3.add_term(Letters{3}, Scalar(1));
  // D_{12}(t) = omega (x) t.
  CHECK(expansion_D(g2, e3, 1, 2) == tensor_product(omega(g2), e3));
  // Term count multiplies by 2g.
  CHECK(expansion_D(g2, e3, 1, 3).term_count() == 4);
  // v_{[3,1^5]} = D_{12}(wedge (x) e1 (x) e1).
  SymplecticContext g4(4);
  SparseTensor e1(8, 1);
  e1.add_term(Letters{1}, Scalar(1));
  SparseTensor seed = tensor_product(wedge(8, {1, 2, 3, 4, 5, 6}), tensor_product(e1, e1));
  CHECK(expansion_D(g4, seed, 1, 2) == hook_base_vector(g4));
  CHECK_THROWS_AS(expansion_D(g2, e3, 2, 2), std::invalid_argument);
}

TEST_CASE("lambda elements") {
  SymplecticContext g4(4);
  SparseTensor l12 = lambda_ab(g4, 1, 2);
  CHECK(l12.term_count() == 720);
  // Every word starts with e_1 (x) e_1.
  for (const auto& [w, c] : l12.terms()) {
    Letters ls = l12.shape().unpack(w);
    CHECK(ls[0] == 1);
    CHECK(ls[1] == 1);
    CHECK((c == Scalar(1) || c == Scalar(-1)));
  }
  SparseTensor l47 = lambda_ab(g4, 4, 7);
  CHECK(l47.term_count() == 720);
  CHECK(tensor_weight(l47, WeightContext::GL, 0)[0] == 3);
}

TEST_CASE("raising operators") {
  // GL: E_{12} kills e_1 and sends e_2 to e_1.
  auto gl = gl_raising_operators(3);
  REQUIRE(gl.size() == 2);
  SparseTensor e1(3, 1), e2(3, 1);
  e1.add_term(Letters{1}, Scalar(1));
  e2.add_term(Letters{2}, Scalar(1));
  CHECK(apply_raising(gl[0], e1).is_zero());
  CHECK(apply_raising(gl[0], e2) == e1);

  // Sp: every raising operator annihilates omega, g <= 4 (the calibration).
  for (uint32_t g = 1; g <= 4; ++g) {
    SymplecticContext sym(g);
    SparseTensor om = omega(sym);
    for (const auto& op : sp_raising_operators(sym)) {
      CHECK(apply_raising(op, om).is_zero());
      CHECK(apply_raising_serial(op, om).is_zero());
    }
  }

  // Raising preserves degree and raises the Sp weight by a simple root.
  SymplecticContext g3(3);
  auto ops = sp_raising_operators(g3);
  REQUIRE(ops.size() == 3);
  SparseTensor w(6, 3);
  w.add_term(Letters{2, 4, 6}, Scalar(1));
  SparseTensor img = apply_raising(ops[0], w);  // X_1
  REQUIRE(!img.is_zero());
  WeightVector before = tensor_weight(w, WeightContext::Sp, 3);
  for (const auto& [pw, c] : img.terms()) {
    WeightVector after = word_weight(img.shape(), pw, WeightContext::Sp, 3);
    CHECK(after[0] == before[0] + 1);
    CHECK(after[1] == before[1] - 1);
    CHECK(after[2] == before[2]);
  }
}

TEST_CASE("hwv multiplicities: small Lemma-4.2 values") {
  CHECK(hwv_multiplicity_cyclic(3, 3, Partition::parse("1^3"), WeightContext::GL) == 1);
  CHECK(hwv_multiplicity_cyclic(4, 4, Partition::parse("1^4"), WeightContext::GL) == 0);
  CHECK(hwv_multiplicity_cyclic(2, 2, Partition::parse("1^2"), WeightContext::GL) == 0);
  // Stability in n.
  CHECK(hwv_multiplicity_cyclic(4, 3, Partition::parse("1^3"), WeightContext::GL) == 1);
  CHECK(hwv_multiplicity_cyclic(5, 4, Partition::parse("1^4"), WeightContext::GL) == 0);
  // A split target.
  CHECK(hwv_multiplicity_bicyclic(5, 2, 3, Partition::parse("1^5"), WeightContext::GL) == 0);
  // Exploratory control: (1^3) in C(1) (x) C(2). Hand elimination on the
  // three weight-(1,1,1) pairs shows both raising operators force zero.
  CHECK(hwv_multiplicity_bicyclic(3, 1, 2, Partition::parse("1^3"), WeightContext::GL) == 0);
}

TEST_CASE("hwv multiplicities on explicit spans") {
  // span{wedge(i,j)} inside H (x) H at n=3: (1,1) appears once.
  std::vector<SparseTensor> basis{wedge(3, {1, 2}), wedge(3, {1, 3}), wedge(3, {2, 3})};
  CHECK(hwv_multiplicity_span(basis, Partition::parse("1,1"), WeightContext::GL) == 1);

  // The trivial Sp representation spanned by omega at g = 2.
  SymplecticContext g2(2);
  std::vector<SparseTensor> ob{omega(g2)};
  CHECK(hwv_multiplicity_span(ob, Partition(), WeightContext::Sp, 2) == 1);

  // A dependent basis list must not overcount.
  std::vector<SparseTensor> dep{wedge(3, {1, 2}), scale(wedge(3, {1, 2}), Scalar(2))};
  CHECK(hwv_multiplicity_span(dep, Partition::parse("1,1"), WeightContext::GL) == 1);
}

TEST_CASE("lambda decomposition round trip") {
  SymplecticContext g4(4);
  SparseTensor combo = add(scale(lambda_ab(g4, 1, 8), Scalar(2)),
                           add(scale(lambda_ab(g4, 2, 3), Scalar(-5)),
                               scale(lambda_ab(g4, 4, 7), Scalar(7, 3))));
  auto dec = lambda_decompose(g4, combo);
  REQUIRE(dec.has_value());
  CHECK(dec->size() == 3);
  CHECK(dec->at({1, 8}) == Scalar(2));
  CHECK(dec->at({2, 3}) == Scalar(-5));
  CHECK(dec->at({4, 7}) == Scalar(7, 3));

  // Something outside the span has no decomposition.
  SparseTensor junk(8, 8);
  junk.add_term(Letters{1, 1, 1, 1, 1, 1, 1, 1}, Scalar(1));
  CHECK(!lambda_decompose(g4, junk).has_value());
}
