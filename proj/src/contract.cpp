#include "jtrace/contract.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace jt {

namespace {

// Packed-word geometry of a single contraction slot on degree-m input.
struct ContractionSlots {
  uint32_t bits;
  uint32_t m;     // input degree k+2
  uint32_t k;     // output degree
  uint32_t ell;   // contraction slot, 1..k+1
  uint32_t tail_bits;     // bits of positions 2..m
  PackedWord tail_mask;
  uint32_t b_shift;       // shift of letter ell+1
  uint32_t low_bits;      // bits of tail letters after position ell
  PackedWord low_mask;

  ContractionSlots(const WordShape& shape, uint32_t ell_) {
    bits = shape.bits;
    m = shape.degree;
    if (m < 2) throw std::invalid_argument("contraction needs degree >= 2");
    k = m - 2;
    ell = ell_;
    if (ell < 1 || ell > k + 1) throw std::invalid_argument("contraction slot out of range");
    tail_bits = bits * (m - 1);
    tail_mask = (PackedWord(1) << tail_bits) - 1;
    b_shift = bits * (m - 1 - ell);
    low_bits = bits * (m - 1 - ell);
    low_mask = low_bits >= 64 ? ~PackedWord(0) : (PackedWord(1) << low_bits) - 1;
  }

  uint8_t head(PackedWord w) const { return static_cast<uint8_t>(w >> tail_bits); }
  uint8_t slot_letter(PackedWord w) const {
    return static_cast<uint8_t>((w >> b_shift) & ((PackedWord(1) << bits) - 1));
  }
  // Degree-k word left after deleting positions 1 and ell+1.
  PackedWord contracted(PackedWord w) const {
    PackedWord tail = w & tail_mask;
    return ((tail >> (low_bits + bits)) << low_bits) | (tail & low_mask);
  }
};

struct SplitSlots {
  uint32_t right_bits;
  PackedWord right_mask;
  SplitSlots(uint32_t bits, uint32_t q) {
    right_bits = bits * q;
    right_mask = right_bits >= 64 ? ~PackedWord(0) : (PackedWord(1) << right_bits) - 1;
  }
};

}  // namespace

SparseTensor phi(const ContractionContext& ctx, const SparseTensor& t, uint32_t ell) {
  if (t.rank() != ctx.rank()) throw std::invalid_argument("phi: rank mismatch");
  ContractionSlots cs(t.shape(), ell);
  SparseTensor out(t.rank(), cs.k);
  for (const auto& [w, c] : t.terms()) {
    int s = ctx.eval(cs.head(w), cs.slot_letter(w));
    if (s == 0) continue;
    out.add_term(cs.contracted(w), s > 0 ? c : -c);
  }
  return out;
}

BiCyclicTensor theta_ell(const ContractionContext& ctx, const SparseTensor& t, uint32_t ell) {
  return varpi_ell(phi(ctx, t, ell), ell);
}

namespace {

// Core of Theta_ell over a fixed set of rotations of t.
void theta_rotation_scan(const ContractionContext& ctx, const SparseTensor& t,
                         const ContractionSlots& cs, uint32_t rot_begin, uint32_t rot_end,
                         BiCyclicTensor& out, uint64_t& scanned, uint64_t& hits) {
  const WordShape& shape = t.shape();
  const WordShape& lshape = out.left_shape();
  const WordShape& rshape = out.right_shape();
  SplitSlots sp(cs.bits, cs.k - cs.ell + 1);
  for (uint32_t r = rot_begin; r < rot_end; ++r) {
    for (const auto& [w0, c] : t.terms()) {
      ++scanned;
      PackedWord w = shape.rotate(w0, r);
      int s = ctx.eval(cs.head(w), cs.slot_letter(w));
      if (s == 0) continue;
      ++hits;
      PackedWord v = cs.contracted(w);
      PackedWord left = lshape.canonical_rotation(v >> sp.right_bits);
      PackedWord right = rshape.canonical_rotation(v & sp.right_mask);
      out.add_canonical_key(out.key(left, right), s > 0 ? c : -c);
    }
  }
}

}  // namespace

namespace {
void require_ctx_rank(const ContractionContext& ctx, const SparseTensor& t) {
  if (t.rank() != ctx.rank()) throw std::invalid_argument("contraction: rank mismatch");
}
}  // namespace

BiCyclicTensor theta_symmetrized_serial(const ContractionContext& ctx, const SparseTensor& t,
                                        uint32_t ell, uint64_t* scanned, uint64_t* hits) {
  require_ctx_rank(ctx, t);
  ContractionSlots cs(t.shape(), ell);
  BiCyclicTensor out(t.rank(), ell - 1, cs.k - ell + 1);
  uint64_t sc = 0, ht = 0;
  theta_rotation_scan(ctx, t, cs, 0, t.degree(), out, sc, ht);
  if (scanned) *scanned += sc;
  if (hits) *hits += ht;
  return out;
}

BiCyclicTensor theta_symmetrized(const ContractionContext& ctx, const SparseTensor& t,
                                 uint32_t ell, uint64_t* scanned, uint64_t* hits) {
  require_ctx_rank(ctx, t);
#ifndef _OPENMP
  return theta_symmetrized_serial(ctx, t, ell, scanned, hits);
#else
  ContractionSlots cs(t.shape(), ell);
  BiCyclicTensor out(t.rank(), ell - 1, cs.k - ell + 1);
  uint64_t sc = 0, ht = 0;
  uint32_t m = t.degree();
#pragma omp parallel reduction(+ : sc, ht)
  {
    BiCyclicTensor local(t.rank(), ell - 1, cs.k - ell + 1);
#pragma omp for schedule(dynamic, 1) nowait
    for (int r = 0; r < static_cast<int>(m); ++r)
      theta_rotation_scan(ctx, t, cs, r, r + 1, local, sc, ht);
#pragma omp critical(jt_theta_merge)
    out.merge(std::move(local));
  }
  if (scanned) *scanned += sc;
  if (hits) *hits += ht;
  return out;
#endif
}

SparseTensor phi_symmetrized(const ContractionContext& ctx, const SparseTensor& t, uint32_t ell) {
  require_ctx_rank(ctx, t);
  ContractionSlots cs(t.shape(), ell);
  const WordShape& shape = t.shape();
  SparseTensor out(t.rank(), cs.k);
  for (uint32_t r = 0; r < t.degree(); ++r) {
    for (const auto& [w0, c] : t.terms()) {
      PackedWord w = shape.rotate(w0, r);
      int s = ctx.eval(cs.head(w), cs.slot_letter(w));
      if (s == 0) continue;
      out.add_term(cs.contracted(w), s > 0 ? c : -c);
    }
  }
  return out;
}

CyclicTensor trace_c(const ContractionContext& ctx, const SparseTensor& t) {
  require_ctx_rank(ctx, t);
  ContractionSlots cs(t.shape(), 1);
  CyclicTensor out(t.rank(), cs.k);
  for (const auto& [w, c] : t.terms()) {
    int s = ctx.eval(cs.head(w), cs.slot_letter(w));
    if (s == 0) continue;
    out.add_word(cs.contracted(w), s > 0 ? c : -c);
  }
  return out;
}

CyclicTensor trace_c_symmetrized(const ContractionContext& ctx, const SparseTensor& t) {
  require_ctx_rank(ctx, t);
  ContractionSlots cs(t.shape(), 1);
  const WordShape& shape = t.shape();
  CyclicTensor out(t.rank(), cs.k);
  for (uint32_t r = 0; r < t.degree(); ++r) {
    for (const auto& [w0, c] : t.terms()) {
      PackedWord w = shape.rotate(w0, r);
      int s = ctx.eval(cs.head(w), cs.slot_letter(w));
      if (s == 0) continue;
      out.add_word(cs.contracted(w), s > 0 ? c : -c);
    }
  }
  return out;
}

SymmetricTensor morita_trace(const ContractionContext& ctx, const SparseTensor& t) {
  return symmetric_project(trace_c(ctx, t));
}

BiCyclicTensor& CobracketResult::component(uint32_t rank, uint32_t p, uint32_t q) {
  auto it = components.find({p, q});
  if (it == components.end())
    it = components.emplace(std::make_pair(p, q), BiCyclicTensor(rank, p, q)).first;
  return it->second;
}

void CobracketResult::prune() {
  for (auto it = components.begin(); it != components.end();)
    it = it->second.is_zero() ? components.erase(it) : std::next(it);
}

bool CobracketResult::operator==(const CobracketResult& o) const {
  for (const auto& [pq, b] : components) {
    auto it = o.components.find(pq);
    if (it == o.components.end()) {
      if (!b.is_zero()) return false;
    } else if (!(b == it->second)) {
      return false;
    }
  }
  for (const auto& [pq, b] : o.components)
    if (!components.count(pq) && !b.is_zero()) return false;
  return true;
}

namespace {

CobracketResult delta_double_sum(const SymplecticContext& sym, const SparseTensor& t,
                                 bool framed) {
  if (t.rank() != sym.rank()) throw std::invalid_argument("cobracket: rank mismatch");
  uint32_t m = t.degree();
  if (m < 2) throw std::invalid_argument("cobracket: degree must be >= 2");
  uint32_t k = m - 2;
  const WordShape& shape = t.shape();
  CobracketResult out;
  Letters x, y;
  for (const auto& [w, c] : t.terms()) {
    Letters ls = shape.unpack(w);
    for (uint32_t i = 1; i < m; ++i) {
      for (uint32_t j = i + 1; j <= m; ++j) {
        uint32_t gap = j - i;
        bool boundary = (gap == 1 || gap == k + 1);
        if (boundary && !framed) continue;
        if (gap > k + 1) continue;
        int s = sym.pairing(ls[i - 1], ls[j - 1]);
        if (s == 0) continue;
        x.assign(ls.begin() + i, ls.begin() + (j - 1));        // a_{i+1}..a_{j-1}
        y.clear();                                             // a_{j+1}..a_{k+2},a_1..a_{i-1}
        y.insert(y.end(), ls.begin() + j, ls.end());
        y.insert(y.end(), ls.begin(), ls.begin() + (i - 1));
        uint32_t p = static_cast<uint32_t>(x.size());
        uint32_t q = static_cast<uint32_t>(y.size());
        Scalar sc = s > 0 ? c : -c;
        PackedWord px = WordShape(t.rank(), p).pack(x);
        PackedWord py = WordShape(t.rank(), q).pack(y);
        out.component(t.rank(), p, q).add_pair(px, py, sc);
        out.component(t.rank(), q, p).add_pair(py, px, -sc);
      }
    }
  }
  out.prune();
  return out;
}

}  // namespace

CobracketResult delta_alg_full(const SymplecticContext& sym, const SparseTensor& t) {
  return delta_double_sum(sym, t, false);
}

CobracketResult delta_alg_framed(const SymplecticContext& sym, const SparseTensor& t) {
  return delta_double_sum(sym, t, true);
}

CobracketResult delta_alg_reduced(const SymplecticContext& sym, const SparseTensor& t) {
  if (t.rank() != sym.rank()) throw std::invalid_argument("cobracket: rank mismatch");
  uint32_t m = t.degree();
  if (m < 2) throw std::invalid_argument("cobracket: degree must be >= 2");
  uint32_t k = m - 2;
  ContractionContext ctx = ContractionContext::symplectic(sym);
  CobracketResult out;
  for (uint32_t ell = 2; ell <= k; ++ell) {
    BiCyclicTensor b = theta_symmetrized(ctx, t, ell);
    if (!b.is_zero()) out.components.emplace(std::make_pair(ell - 1, k - ell + 1), std::move(b));
  }
  return out;
}

}  // namespace jt
