#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <absl/container/flat_hash_map.h>
#include <gmpxx.h>

#include "jtrace/scalar.hpp"

namespace jt {

// Integer scalar as an exact GMP integer; throws when not an integer.
inline mpz_class scalar_to_mpz(const Scalar& s) {
  if (!s.is_integer()) throw std::invalid_argument("expected an integer scalar");
  return mpz_class(s.str());
}

// Assigns dense row ids to arbitrary 64-bit row keys (packed words, necklace
// pairs, ...) in order of first appearance.
class RowIndexer {
 public:
  uint32_t id(uint64_t key) {
    auto [it, inserted] = ids_.try_emplace(key, static_cast<uint32_t>(ids_.size()));
    return it->second;
  }
  size_t size() const { return ids_.size(); }

 private:
  absl::flat_hash_map<uint64_t, uint32_t> ids_;
};

// Column-major sparse matrix with exact integer entries.
struct SparseIntegerMatrix {
  size_t rows = 0;
  std::vector<std::vector<std::pair<uint32_t, mpz_class>>> columns;

  size_t cols() const { return columns.size(); }
  // Starts a new column; entries are added to the last started column.
  void start_column() { columns.emplace_back(); }
  void add_entry(uint32_t row, mpz_class value) {
    if (value != 0) {
      columns.back().emplace_back(row, std::move(value));
      if (row + 1 > rows) rows = row + 1;
    }
  }
  size_t nonzeros() const {
    size_t n = 0;
    for (const auto& c : columns) n += c.size();
    return n;
  }
};

struct EliminationResult {
  uint64_t rank = 0;
  // Kernel basis as integer vectors of length cols(); content-stripped and
  // verified to satisfy M*v = 0 exactly.
  std::vector<std::vector<mpz_class>> kernel;
};

// Exact rank over Q by fraction-free column elimination with content
// stripping; kernel basis extracted from column companions when requested.
EliminationResult rank_and_kernel(const SparseIntegerMatrix& m, bool want_kernel);

// Rank of the matrix over Z/p for a 62/63-bit prime p.
uint64_t modular_rank(const SparseIntegerMatrix& m, uint64_t prime);

// The two fixed large primes used for cross-checking exact ranks.
inline constexpr uint64_t kRankPrimes[2] = {2305843009213693951ull,   // 2^61 - 1
                                            9223372036854775783ull};  // largest prime < 2^63

// Exact rank with the two modular ranks computed as well; throws
// std::runtime_error if a modular rank disagrees with the exact rank.
uint64_t checked_rank(const SparseIntegerMatrix& m);

// True iff v lies in the column span of m (rank test on the augmentation).
bool solve_membership(const SparseIntegerMatrix& m, const std::vector<std::pair<uint32_t, mpz_class>>& v);

// Exact rational solution x of M x = v, if one exists.
std::optional<std::vector<Scalar>> solve_in_span(const SparseIntegerMatrix& m,
                                                 const std::vector<std::pair<uint32_t, mpz_class>>& v);

}  // namespace jt
