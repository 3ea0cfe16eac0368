#include <doctest.h>

#include <random>
#include <set>
#include <sstream>

#include "jtrace/cyclic.hpp"
#include "jtrace/free_lie.hpp"

using namespace jt;

namespace {

Letters rotate_letters(const Letters& w, size_t r) {
  Letters out(w.size());
  for (size_t j = 0; j < w.size(); ++j) out[j] = w[(r + j) % w.size()];
  return out;
}

// Oracle: least rotation by full enumeration.
Letters least_rotation_naive(const Letters& w) {
  Letters best = w;
  for (size_t r = 1; r < w.size(); ++r) best = std::min(best, rotate_letters(w, r));
  return best;
}

}  // namespace

TEST_CASE("canonical rotation") {
  CHECK(canonical_rotation_letters({2, 1, 3}) == Letters{1, 3, 2});
  CHECK(canonical_rotation_letters({1, 1, 1}) == Letters{1, 1, 1});
  CHECK(canonical_rotation_letters({3, 1, 2, 1}) == Letters{1, 2, 1, 3});

  // Booth, packed scan, and brute enumeration agree.
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 2000; ++iter) {
    uint32_t k = 1 + rng() % 10;
    uint32_t n = 1 + rng() % 6;
    WordShape shape(n, k);
    Letters w(k);
    for (auto& v : w) v = static_cast<uint8_t>(1 + rng() % n);
    Letters expect = least_rotation_naive(w);
    CHECK(canonical_rotation_letters(w) == expect);
    CHECK(shape.unpack(shape.canonical_rotation(shape.pack(w))) == expect);
  }
}

TEST_CASE("pi_k projection") {
  SparseTensor t(2, 2);
  t.add_term(Letters{1, 2}, Scalar(1));
  t.add_term(Letters{2, 1}, Scalar(-1));
  CHECK(pi_k(t).is_zero());

  SparseTensor e1(2, 1);
  e1.add_term(Letters{1}, Scalar(1));
  CyclicTensor p1 = pi_k(e1);
  CHECK(p1.term_count() == 1);

  // pi_2 of [e_1,e_2] is zero; higher-degree commutators are checked below.
  CHECK(pi_k(expand_commutator(2, {1, 2})).is_zero());

  // pi_k(w) = pi_k(rotation of w), exhaustively for n=3, k=4.
  WordShape shape(3, 4);
  for (uint32_t code = 0; code < 81; ++code) {
    Letters w(4);
    uint32_t c = code;
    for (auto& v : w) {
      v = static_cast<uint8_t>(1 + c % 3);
      c /= 3;
    }
    SparseTensor a(3, 4), b(3, 4);
    a.add_term(w, Scalar(1));
    b.add_term(rotate_letters(w, 1 + code % 3), Scalar(1));
    CHECK(pi_k(a) == pi_k(b));
  }
}

TEST_CASE("pi_k annihilates simple commutators, k <= 6, n <= 4") {
  for (uint32_t n = 2; n <= 4; ++n) {
    for (uint32_t k = 2; k <= 6; ++k) {
      uint64_t total = 1;
      for (uint32_t t = 0; t < k; ++t) total *= n;
      for (uint64_t code = 0; code < total; ++code) {
        Letters ix(k);
        uint64_t c = code;
        for (auto& v : ix) {
          v = static_cast<uint8_t>(1 + c % n);
          c /= n;
        }
        REQUIRE(pi_k(expand_commutator(n, ix)).is_zero());
      }
    }
  }
}

TEST_CASE("cyclic and lie dimensions") {
  CHECK(cyclic_dimension(2, 2) == 3);
  CHECK(cyclic_dimension(4, 2) == 10);
  CHECK(cyclic_dimension(1, 5) == 1);
  CHECK(lie_dimension(2, 3) == 2);
  CHECK(lie_dimension(2, 1) == 2);
  CHECK(lie_dimension(4, 3) == 20);

  // Necklace-count oracle: distinct canonical rotations over all words.
  for (uint32_t n = 1; n <= 4; ++n) {
    for (uint32_t k = 1; k <= 6; ++k) {
      WordShape shape(n, k);
      std::set<PackedWord> classes;
      uint64_t total = 1;
      for (uint32_t t = 0; t < k; ++t) total *= n;
      for (uint64_t code = 0; code < total; ++code) {
        Letters w(k);
        uint64_t c = code;
        for (auto& v : w) {
          v = static_cast<uint8_t>(1 + c % n);
          c /= n;
        }
        classes.insert(shape.canonical_rotation(shape.pack(w)));
      }
      CHECK(classes.size() == cyclic_dimension(n, k));
    }
  }
}

TEST_CASE("varpi_ell splits and projects") {
  SparseTensor t(4, 3);
  t.add_term(Letters{1, 2, 3}, Scalar(1));

  BiCyclicTensor b1 = varpi_ell(t, 1);
  CHECK(b1.left_degree() == 0);
  CHECK(b1.right_degree() == 3);
  CHECK(b1.term_count() == 1);

  BiCyclicTensor b2 = varpi_ell(t, 2);
  CHECK(b2.left_degree() == 1);
  CHECK(b2.right_degree() == 2);
  auto [l, r] = b2.split_key(b2.sorted_terms()[0].first);
  CHECK(b2.left_shape().unpack(l) == Letters{1});
  CHECK(b2.right_shape().unpack(r) == Letters{2, 3});

  SparseTensor u(4, 4);
  u.add_term(Letters{1, 2, 3, 4}, Scalar(1));
  u.add_term(Letters{2, 1, 3, 4}, Scalar(-1));
  CHECK(varpi_ell(u, 3).is_zero());

  CHECK_THROWS_AS(varpi_ell(t, 0), std::invalid_argument);
  CHECK_THROWS_AS(varpi_ell(t, 5), std::invalid_argument);
}

TEST_CASE("varpi is rotation-invariant within each half") {
  std::mt19937_64 rng(23);
  for (int iter = 0; iter < 200; ++iter) {
    uint32_t k = 4 + rng() % 3;
    uint32_t ell = 2 + rng() % (k - 2);  // both halves nonempty
    Letters w(k);
    for (auto& v : w) v = static_cast<uint8_t>(1 + rng() % 3);
    uint32_t p = ell - 1, q = k - ell + 1;
    Letters left(w.begin(), w.begin() + p), right(w.begin() + p, w.end());
    Letters lrot = rotate_letters(left, 1 + rng() % p);
    Letters rrot = rotate_letters(right, 1 + rng() % q);
    Letters w2 = lrot;
    w2.insert(w2.end(), rrot.begin(), rrot.end());
    SparseTensor a(3, k), b(3, k);
    a.add_term(w, Scalar(1));
    b.add_term(w2, Scalar(1));
    CHECK(varpi_ell(a, ell) == varpi_ell(b, ell));
  }
}

TEST_CASE("symmetric projection") {
  WordShape shape(3, 4);
  CyclicTensor ct(3, 4);
  ct.add_word(shape.pack({1, 2, 1, 3}), Scalar(1));
  SymmetricTensor st = symmetric_project(ct);
  CHECK(st.terms().count(shape.pack({1, 1, 2, 3})) == 1);

  // Already zero in C stays zero.
  SparseTensor t(3, 3);
  t.add_term(Letters{1, 2, 3}, Scalar(1));
  t.add_term(Letters{2, 3, 1}, Scalar(-1));
  CHECK(symmetric_project(pi_k(t)).is_zero());

  // Distinct necklaces with equal content merge: (1,1,2,2) and (1,2,1,2).
  WordShape s4(2, 4);
  CHECK(s4.canonical_rotation(s4.pack({1, 1, 2, 2})) !=
        s4.canonical_rotation(s4.pack({1, 2, 1, 2})));
  CyclicTensor pair(2, 4);
  pair.add_word(s4.pack({1, 1, 2, 2}), Scalar(1));
  pair.add_word(s4.pack({1, 2, 1, 2}), Scalar(2));
  SymmetricTensor merged = symmetric_project(pair);
  CHECK(merged.terms().size() == 1);
  CHECK(merged.terms().at(s4.pack({1, 1, 2, 2})) == Scalar(3));
}

TEST_CASE("bicyclic serialization round trip") {
  std::mt19937_64 rng(77);
  BiCyclicTensor b(4, 2, 3);
  for (int i = 0; i < 10; ++i) {
    Letters l(2), r(3);
    for (auto& v : l) v = static_cast<uint8_t>(1 + rng() % 4);
    for (auto& v : r) v = static_cast<uint8_t>(1 + rng() % 4);
    b.add_pair(b.left_shape().pack(l), b.right_shape().pack(r), Scalar(1 + int64_t(rng() % 5)));
  }
  std::istringstream is(serialize_bicyclic(b));
  CHECK(read_bicyclic(is) == b);
}
