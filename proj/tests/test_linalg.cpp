#include <doctest.h>

#include <random>

#include "jtrace/linalg.hpp"

using namespace jt;

namespace {

SparseIntegerMatrix random_matrix(std::mt19937_64& rng, uint32_t rows, uint32_t cols,
                                  int density_pct) {
  SparseIntegerMatrix m;
  m.rows = rows;
  std::uniform_int_distribution<int> val(-4, 4);
  for (uint32_t j = 0; j < cols; ++j) {
    m.start_column();
    for (uint32_t r = 0; r < rows; ++r)
      if (static_cast<int>(rng() % 100) < density_pct) {
        int v = val(rng);
        if (v != 0) m.add_entry(r, mpz_class(v));
      }
  }
  return m;
}

// Dense rational Gaussian elimination, the independent rank oracle.
uint64_t dense_rank_oracle(const SparseIntegerMatrix& m) {
  std::vector<std::vector<Scalar>> a(m.rows, std::vector<Scalar>(m.cols()));
  for (size_t j = 0; j < m.cols(); ++j)
    for (const auto& [r, v] : m.columns[j]) a[r][j] = Scalar::parse(v.get_str());
  uint64_t rank = 0;
  size_t row = 0;
  for (size_t col = 0; col < m.cols() && row < m.rows; ++col) {
    size_t pivot = row;
    while (pivot < m.rows && a[pivot][col].is_zero()) ++pivot;
    if (pivot == m.rows) continue;
    std::swap(a[pivot], a[row]);
    for (size_t r = 0; r < m.rows; ++r) {
      if (r == row || a[r][col].is_zero()) continue;
      Scalar f = a[r][col] / a[row][col];
      for (size_t c = col; c < m.cols(); ++c) a[r][c] -= f * a[row][c];
    }
    ++row;
    ++rank;
  }
  return rank;
}

SparseIntegerMatrix transpose(const SparseIntegerMatrix& m) {
  SparseIntegerMatrix t;
  t.rows = m.cols();
  std::vector<std::vector<std::pair<uint32_t, mpz_class>>> cols(m.rows);
  for (size_t j = 0; j < m.cols(); ++j)
    for (const auto& [r, v] : m.columns[j]) cols[r].emplace_back(static_cast<uint32_t>(j), v);
  t.columns = std::move(cols);
  return t;
}

}  // namespace

TEST_CASE("rank of zero and identity matrices") {
  SparseIntegerMatrix zero;
  zero.rows = 4;
  for (int j = 0; j < 3; ++j) zero.start_column();
  EliminationResult r = rank_and_kernel(zero, true);
  CHECK(r.rank == 0);
  CHECK(r.kernel.size() == 3);

  SparseIntegerMatrix id;
  for (uint32_t j = 0; j < 3; ++j) {
    id.start_column();
    id.add_entry(j, mpz_class(1));
  }
  CHECK(rank_and_kernel(id, false).rank == 3);
  CHECK(checked_rank(id) == 3);
}

TEST_CASE("fraction-free rank agrees with dense and modular oracles") {
  std::mt19937_64 rng(555);
  for (int iter = 0; iter < 60; ++iter) {
    SparseIntegerMatrix m = random_matrix(rng, 4 + rng() % 8, 4 + rng() % 8, 40);
    uint64_t exact = rank_and_kernel(m, false).rank;
    CHECK(exact == dense_rank_oracle(m));
    CHECK(exact == modular_rank(m, kRankPrimes[0]));
    CHECK(exact == modular_rank(m, kRankPrimes[1]));
    CHECK(exact == rank_and_kernel(transpose(m), false).rank);
  }
}

TEST_CASE("kernel basis is exact and complete") {
  std::mt19937_64 rng(777);
  for (int iter = 0; iter < 40; ++iter) {
    SparseIntegerMatrix m = random_matrix(rng, 5 + rng() % 5, 5 + rng() % 7, 35);
    EliminationResult r = rank_and_kernel(m, true);  // verifies M v = 0 internally
    CHECK(r.rank + r.kernel.size() == m.cols());
  }
  // A matrix with an obvious dependency.
  SparseIntegerMatrix dep;
  dep.rows = 2;
  dep.start_column();
  dep.add_entry(0, mpz_class(1));
  dep.add_entry(1, mpz_class(1));
  dep.start_column();
  dep.add_entry(0, mpz_class(2));
  dep.add_entry(1, mpz_class(2));
  EliminationResult r = rank_and_kernel(dep, true);
  CHECK(r.rank == 1);
  REQUIRE(r.kernel.size() == 1);
  CHECK(r.kernel[0][0] == 2);
  CHECK(r.kernel[0][1] == -1);
}

TEST_CASE("membership and span solving") {
  // M = [[1,0],[0,1],[1,1]] columns c0,c1.
  SparseIntegerMatrix m;
  m.rows = 3;
  m.start_column();
  m.add_entry(0, mpz_class(1));
  m.add_entry(2, mpz_class(1));
  m.start_column();
  m.add_entry(1, mpz_class(1));
  m.add_entry(2, mpz_class(1));

  CHECK(solve_membership(m, {{0, mpz_class(1)}, {2, mpz_class(1)}}));   // first column
  CHECK(!solve_membership(m, {{0, mpz_class(1)}}));                     // outside the span

  auto x = solve_in_span(m, {{0, mpz_class(2)}, {1, mpz_class(3)}, {2, mpz_class(5)}});
  REQUIRE(x.has_value());
  CHECK((*x)[0] == Scalar(2));
  CHECK((*x)[1] == Scalar(3));

  // Random consistency: v = M x must solve back to something with M x' = v.
  std::mt19937_64 rng(31337);
  for (int iter = 0; iter < 25; ++iter) {
    SparseIntegerMatrix r = random_matrix(rng, 8, 5, 50);
    std::vector<mpz_class> coeff(5);
    for (auto& c : coeff) c = static_cast<long>(rng() % 7) - 3;
    std::vector<mpz_class> v(8, mpz_class(0));
    for (size_t j = 0; j < 5; ++j)
      for (const auto& [row, val] : r.columns[j]) v[row] += coeff[j] * val;
    std::vector<std::pair<uint32_t, mpz_class>> vs;
    for (uint32_t row = 0; row < 8; ++row)
      if (v[row] != 0) vs.emplace_back(row, v[row]);
    auto sol = solve_in_span(r, vs);
    REQUIRE(sol.has_value());
    // Verify M * sol = v exactly, in rationals.
    for (uint32_t row = 0; row < 8; ++row) {
      Scalar acc;
      for (size_t j = 0; j < 5; ++j)
        for (const auto& [rr, val] : r.columns[j])
          if (rr == row) acc += (*sol)[j] * Scalar::parse(val.get_str());
      CHECK(acc == Scalar::parse(v[row].get_str()));
    }
  }
}
