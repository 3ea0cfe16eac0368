#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "jtrace/tensor.hpp"

namespace jt {

// Lexicographically least rotation of an unpacked word via Booth's algorithm.
// The packed scan in WordShape::canonical_rotation must agree with this; the
// two are cross-checked in tests.
Letters canonical_rotation_letters(const Letters& w);

// Number of cyclic words: (1/k) sum_{d|k} phi(d) n^{k/d}.
uint64_t cyclic_dimension(uint32_t n, uint32_t k);

// Dimension of the degree-k part of the free Lie algebra on n generators
// (Witt): (1/k) sum_{d|k} mu(d) n^{k/d}.
uint64_t lie_dimension(uint32_t n, uint32_t k);

// Element of C_n(k), the quotient of H^{otimes k} by cyclic rotation of
// tensor factors. Keys are canonical (lexicographically least) rotations.
class CyclicTensor {
 public:
  CyclicTensor() = default;
  CyclicTensor(uint32_t rank, uint32_t degree) : shape_(rank, degree) {}

  uint32_t rank() const { return shape_.rank; }
  uint32_t degree() const { return shape_.degree; }
  const WordShape& shape() const { return shape_; }
  const TermMap& terms() const { return terms_; }
  size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  // Accumulates onto the canonical rotation of w.
  void add_word(PackedWord w, const Scalar& c) {
    accumulate_term(terms_, shape_.canonical_rotation(w), c);
  }

  bool operator==(const CyclicTensor& o) const {
    if (shape_ != o.shape_ || terms_.size() != o.terms_.size()) return false;
    for (const auto& [w, c] : terms_) {
      auto it = o.terms_.find(w);
      if (it == o.terms_.end() || !(it->second == c)) return false;
    }
    return true;
  }

  std::vector<std::pair<PackedWord, Scalar>> sorted_terms() const {
    std::vector<std::pair<PackedWord, Scalar>> v(terms_.begin(), terms_.end());
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  }

 private:
  WordShape shape_;
  TermMap terms_;
};

// Element of C_n(p) tensor C_n(q): finite map from pairs of canonical cyclic
// words to scalars. The pair is packed into one key as (left << bits*q) | right.
class BiCyclicTensor {
 public:
  BiCyclicTensor() = default;
  BiCyclicTensor(uint32_t rank, uint32_t p, uint32_t q)
      : left_(rank, p), right_(rank, q), combined_(rank, p + q) {}

  uint32_t rank() const { return combined_.rank; }
  uint32_t left_degree() const { return left_.degree; }
  uint32_t right_degree() const { return right_.degree; }
  const TermMap& terms() const { return terms_; }
  size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  PackedWord key(PackedWord canon_left, PackedWord canon_right) const {
    uint32_t rbits = right_.bits * right_.degree;
    if (rbits >= 64) return canon_right;  // empty left factor
    return (canon_left << rbits) | canon_right;
  }
  std::pair<PackedWord, PackedWord> split_key(PackedWord k) const {
    uint32_t rbits = right_.bits * right_.degree;
    if (rbits >= 64) return {0, k};
    PackedWord rmask = (PackedWord(1) << rbits) - 1;
    return {k >> rbits, k & rmask};
  }

  // Accumulates onto (canonical(left), canonical(right)).
  void add_pair(PackedWord left, PackedWord right, const Scalar& c) {
    accumulate_term(terms_, key(left_.canonical_rotation(left), right_.canonical_rotation(right)), c);
  }
  // For callers that canonicalize themselves.
  void add_canonical_key(PackedWord k, const Scalar& c) { accumulate_term(terms_, k, c); }

  const WordShape& left_shape() const { return left_; }
  const WordShape& right_shape() const { return right_; }

  void merge(BiCyclicTensor&& o) { merge_terms(terms_, std::move(o.terms_)); }

  bool operator==(const BiCyclicTensor& o) const {
    if (left_ != o.left_ || right_ != o.right_ || terms_.size() != o.terms_.size()) return false;
    for (const auto& [w, c] : terms_) {
      auto it = o.terms_.find(w);
      if (it == o.terms_.end() || !(it->second == c)) return false;
    }
    return true;
  }

  std::vector<std::pair<PackedWord, Scalar>> sorted_terms() const {
    std::vector<std::pair<PackedWord, Scalar>> v(terms_.begin(), terms_.end());
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  }

 private:
  WordShape left_, right_, combined_;
  TermMap terms_;
};

// Natural projection pi_k: H^{otimes k} -> C_n(k).
CyclicTensor pi_k(const SparseTensor& t);

// varpi_ell: split a degree-k tensor before position ell and project both
// halves, giving an element of C_n(ell-1) tensor C_n(k-ell+1); 1 <= ell <= k+1.
BiCyclicTensor varpi_ell(const SparseTensor& t, uint32_t ell);

// Further quotient of C_n(k) by full symmetrization: words as sorted
// multisets. Target of the Morita trace.
class SymmetricTensor {
 public:
  SymmetricTensor() = default;
  SymmetricTensor(uint32_t rank, uint32_t degree) : shape_(rank, degree) {}

  const WordShape& shape() const { return shape_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_word(PackedWord w, const Scalar& c);

  bool operator==(const SymmetricTensor& o) const {
    if (shape_ != o.shape_ || terms_.size() != o.terms_.size()) return false;
    for (const auto& [w, c] : terms_) {
      auto it = o.terms_.find(w);
      if (it == o.terms_.end() || !(it->second == c)) return false;
    }
    return true;
  }

 private:
  WordShape shape_;
  TermMap terms_;
};

SymmetricTensor symmetric_project(const CyclicTensor& t);

// JSON-lines form: header {"rank":n,"left_degree":p,"right_degree":q}, then
// one {"coeff":"...","left":[...],"right":[...]} line per term.
void write_bicyclic(std::ostream& os, const BiCyclicTensor& t);
std::string serialize_bicyclic(const BiCyclicTensor& t);
BiCyclicTensor read_bicyclic(std::istream& is);

}  // namespace jt
