#pragma once

#include <algorithm>
#include <iosfwd>
#include <string>
#include <vector>

#include <absl/container/flat_hash_map.h>

#include "jtrace/scalar.hpp"
#include "jtrace/word.hpp"

namespace jt {

using TermMap = absl::flat_hash_map<PackedWord, Scalar>;

// Accumulate c onto key w and drop the entry if it cancels to zero.
inline void accumulate_term(TermMap& m, PackedWord w, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = m.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) m.erase(it);
  }
}

inline void merge_terms(TermMap& dst, TermMap&& src) {
  if (dst.empty()) {
    dst = std::move(src);
    return;
  }
  for (auto& [w, c] : src) accumulate_term(dst, w, c);
  src.clear();
}

// Element of H^{otimes k} over the free Z-module H with basis e_1..e_n:
// a finite map from degree-k words to nonzero exact rationals.
class SparseTensor {
 public:
  SparseTensor() = default;
  SparseTensor(uint32_t rank, uint32_t degree) : shape_(rank, degree) {}
  SparseTensor(WordShape shape, TermMap terms) : shape_(shape), terms_(std::move(terms)) {}

  uint32_t rank() const { return shape_.rank; }
  uint32_t degree() const { return shape_.degree; }
  const WordShape& shape() const { return shape_; }
  const TermMap& terms() const { return terms_; }
  TermMap& mutable_terms() { return terms_; }
  size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  void add_term(PackedWord w, const Scalar& c) { accumulate_term(terms_, w, c); }
  void add_term(const Letters& ls, const Scalar& c) { add_term(shape_.pack(ls), c); }

  Scalar coeff(PackedWord w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Scalar() : it->second;
  }
  Scalar coeff(const Letters& ls) const { return coeff(shape_.pack(ls)); }

  bool operator==(const SparseTensor& o) const {
    if (shape_ != o.shape_ || terms_.size() != o.terms_.size()) return false;
    for (const auto& [w, c] : terms_) {
      auto it = o.terms_.find(w);
      if (it == o.terms_.end() || !(it->second == c)) return false;
    }
    return true;
  }

  // Terms sorted lexicographically by word; the deterministic view.
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

// Coefficientwise sum. Ranks and degrees must agree.
SparseTensor add(const SparseTensor& a, const SparseTensor& b);

SparseTensor scale(const SparseTensor& t, const Scalar& c);

// Concatenation of words, product of coefficients. Ranks must agree.
SparseTensor tensor_product(const SparseTensor& a, const SparseTensor& b);

// Right action of a permutation of {1..k} on tensor positions:
// output position j holds the letter at position sigma(j).
SparseTensor apply_permutation_right(const SparseTensor& t, const std::vector<uint32_t>& sigma);

// Rotation action t * zeta^r with zeta = (1 2 ... k) as position shift,
// i.e. word (w_1..w_k) goes to (w_{1+r},...,w_k,w_1,...,w_r).
SparseTensor rotate(const SparseTensor& t, uint32_t r);

// zeta_m = sum of all m rotations; degree-0 input is returned unchanged.
SparseTensor cyclic_symmetrizer(const SparseTensor& t);

bool is_zeta_invariant(const SparseTensor& t);

// JSON-lines serialization: a header {"rank":n,"degree":k} followed by one
// {"coeff":"...","word":[...]} line per term in lexicographic word order.
std::string serialize_tensor(const SparseTensor& t);
SparseTensor parse_tensor(const std::string& text);
void write_tensor(std::ostream& os, const SparseTensor& t);
SparseTensor read_tensor(std::istream& is);

}  // namespace jt
