#include <doctest.h>

#include <random>

#include "jtrace/symplectic.hpp"
#include "jtrace/tensor.hpp"

using namespace jt;

namespace {

SparseTensor basis_word(uint32_t rank, const Letters& ls, int64_t c = 1) {
  SparseTensor t(rank, static_cast<uint32_t>(ls.size()));
  t.add_term(ls, Scalar(c));
  return t;
}

SparseTensor random_tensor(std::mt19937_64& rng, uint32_t rank, uint32_t degree, int terms) {
  SparseTensor t(rank, degree);
  std::uniform_int_distribution<uint32_t> letter(1, rank);
  std::uniform_int_distribution<int64_t> coeff(-3, 3);
  for (int i = 0; i < terms; ++i) {
    Letters ls(degree);
    for (auto& v : ls) v = static_cast<uint8_t>(letter(rng));
    int64_t c = coeff(rng);
    if (c != 0) t.add_term(ls, Scalar(c));
  }
  return t;
}

std::vector<uint32_t> random_permutation(std::mt19937_64& rng, uint32_t k) {
  std::vector<uint32_t> s(k);
  for (uint32_t i = 0; i < k; ++i) s[i] = i + 1;
  std::shuffle(s.begin(), s.end(), rng);
  return s;
}

std::vector<uint32_t> compose(const std::vector<uint32_t>& s, const std::vector<uint32_t>& t) {
  // (s . t)(j) = s(t(j))
  std::vector<uint32_t> r(s.size());
  for (size_t j = 0; j < s.size(); ++j) r[j] = s[t[j] - 1];
  return r;
}

}  // namespace

TEST_CASE("word packing is lexicographic and invertible") {
  WordShape shape(18, 10);
  CHECK(shape.bits == 5);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<uint32_t> letter(1, 18);
  for (int i = 0; i < 500; ++i) {
    Letters a(10), b(10);
    for (auto& v : a) v = static_cast<uint8_t>(letter(rng));
    for (auto& v : b) v = static_cast<uint8_t>(letter(rng));
    CHECK(shape.unpack(shape.pack(a)) == a);
    CHECK((shape.pack(a) < shape.pack(b)) == (a < b));
  }
  CHECK_THROWS_AS(WordShape(18, 13), std::invalid_argument);  // 65 bits
}

TEST_CASE("add: cancellation, identity, disjoint support") {
  SparseTensor e1 = basis_word(2, {1});
  CHECK(add(e1, basis_word(2, {1}, -1)).is_zero());

  SparseTensor t = basis_word(4, {1, 2}, 2);
  CHECK(add(t, SparseTensor(4, 2)) == t);

  SparseTensor sum = add(basis_word(4, {1, 2}, 2), basis_word(4, {2, 1}, 3));
  CHECK(sum.term_count() == 2);
  CHECK(sum.coeff(Letters{1, 2}) == Scalar(2));
  CHECK(sum.coeff(Letters{2, 1}) == Scalar(3));

  CHECK_THROWS_AS(add(basis_word(2, {1}), basis_word(3, {1})), std::invalid_argument);
  CHECK_THROWS_AS(add(basis_word(2, {1}), basis_word(2, {1, 1})), std::invalid_argument);
}

TEST_CASE("tensor product: words concatenate, coefficients multiply") {
  SparseTensor p = tensor_product(basis_word(4, {1}), basis_word(4, {2}));
  CHECK(p.term_count() == 1);
  CHECK(p.coeff(Letters{1, 2}) == Scalar(1));

  SparseTensor diff = add(basis_word(4, {1}), basis_word(4, {2}, -1));
  SparseTensor bil = tensor_product(diff, basis_word(4, {1}));
  CHECK(bil.coeff(Letters{1, 1}) == Scalar(1));
  CHECK(bil.coeff(Letters{2, 1}) == Scalar(-1));

  CHECK(tensor_product(SparseTensor(4, 1), basis_word(4, {3})).is_zero());
}

TEST_CASE("right permutation action") {
  SparseTensor t = basis_word(4, {1, 2});
  SparseTensor swapped = apply_permutation_right(t, {2, 1});
  CHECK(swapped.coeff(Letters{2, 1}) == Scalar(1));

  SparseTensor t3 = basis_word(4, {1, 2, 3});
  CHECK(apply_permutation_right(t3, {1, 2, 3}) == t3);
  // zeta: a_1 (x) a_2 (x) a_3 -> a_2 (x) a_3 (x) a_1
  SparseTensor cyc = apply_permutation_right(t3, {2, 3, 1});
  CHECK(cyc.coeff(Letters{2, 3, 1}) == Scalar(1));
  CHECK(rotate(t3, 1) == cyc);

  CHECK_THROWS_AS(apply_permutation_right(t3, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(apply_permutation_right(t3, {1, 1, 2}), std::invalid_argument);
}

TEST_CASE("permutation right action composes: t*(st) = (t*s)*t") {
  std::mt19937_64 rng(2024);
  for (int iter = 0; iter < 100; ++iter) {
    SparseTensor t = random_tensor(rng, 3, 5, 6);
    auto s = random_permutation(rng, 5);
    auto u = random_permutation(rng, 5);
    CHECK(apply_permutation_right(t, compose(s, u)) ==
          apply_permutation_right(apply_permutation_right(t, s), u));
  }
}

TEST_CASE("cyclic symmetrizer") {
  SparseTensor z2 = cyclic_symmetrizer(basis_word(4, {1, 2}));
  CHECK(z2.coeff(Letters{1, 2}) == Scalar(1));
  CHECK(z2.coeff(Letters{2, 1}) == Scalar(1));

  SparseTensor z3 = cyclic_symmetrizer(basis_word(4, {1, 1, 1}));
  CHECK(z3.term_count() == 1);
  CHECK(z3.coeff(Letters{1, 1, 1}) == Scalar(3));

  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 50; ++iter) {
    SparseTensor t = random_tensor(rng, 3, 4, 5);
    SparseTensor sym = cyclic_symmetrizer(t);
    CHECK(is_zeta_invariant(sym));
    CHECK(rotate(sym, 1) == sym);
  }

  SparseTensor scalar_tensor(3, 0);
  scalar_tensor.add_term(Letters{}, Scalar(5));
  CHECK(cyclic_symmetrizer(scalar_tensor) == scalar_tensor);
}

TEST_CASE("serialization round trip") {
  std::mt19937_64 rng(31);
  for (int iter = 0; iter < 30; ++iter) {
    SparseTensor t = random_tensor(rng, 6, 4, 10);
    CHECK(parse_tensor(serialize_tensor(t)) == t);
  }
  // Deterministic output: lexicographic word order.
  SparseTensor t(2, 2);
  t.add_term(Letters{2, 1}, Scalar(1));
  t.add_term(Letters{1, 2}, Scalar(1, 2));
  CHECK(serialize_tensor(t) ==
        "{\"degree\":2,\"rank\":2}\n"
        "{\"coeff\":\"1/2\",\"word\":[1,2]}\n"
        "{\"coeff\":\"1\",\"word\":[2,1]}\n");
}

TEST_CASE("symplectic pairing table") {
  SymplecticContext g2(2);
  CHECK(g2.pairing(1, 4) == 1);
  CHECK(g2.pairing(4, 1) == -1);
  CHECK(g2.pairing(1, 2) == 0);
  CHECK(g2.pairing(2, 3) == 1);
  CHECK(g2.pairing(3, 2) == -1);

  SymplecticContext g3(3);
  CHECK(g3.dual_index(1) == std::pair<uint32_t, int>(6, +1));
  CHECK(g3.dual_index(5) == std::pair<uint32_t, int>(2, -1));
  // <e_i, e_i^*> = 1 for all i, exhaustively at g = 3.
  for (uint32_t i = 1; i <= 6; ++i) {
    auto [d, s] = g3.dual_index(i);
    CHECK(g3.pairing(i, d) * s == 1);
  }
  // The dual map squares to -1 (antisymmetry), exhaustively for g <= 4.
  for (uint32_t g = 1; g <= 4; ++g) {
    SymplecticContext ctx(g);
    for (uint32_t i = 1; i <= 2 * g; ++i) {
      auto [d, s1] = ctx.dual_index(i);
      auto [dd, s2] = ctx.dual_index(d);
      CHECK(dd == i);
      CHECK(s1 * s2 == -1);
    }
  }
  CHECK_THROWS_AS(g2.pairing(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(g2.pairing(1, 5), std::invalid_argument);
}
