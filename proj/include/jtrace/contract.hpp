#pragma once

#include <cstdint>
#include <map>
#include <utility>

#include "jtrace/cyclic.hpp"
#include "jtrace/symplectic.hpp"
#include "jtrace/tensor.hpp"

namespace jt {

// Fixes how the first tensor slot acts as a functional on H inside the
// contraction maps. In the free-group setting the slot carries a literal
// dual-basis index i (f = e_i^*, f(e_j) = delta_ij); in the symplectic
// setting the slot holds an element a of H acting by <a, .>. One code path
// serves both, which keeps the sign conventions of the two settings aligned.
class ContractionContext {
 public:
  static ContractionContext dual_basis(uint32_t rank) {
    return ContractionContext(rank, 0);
  }
  static ContractionContext symplectic(const SymplecticContext& sym) {
    return ContractionContext(sym.rank(), sym.genus);
  }

  bool is_symplectic() const { return genus_ > 0; }
  uint32_t rank() const { return rank_; }

  // Value of the slot-1 functional for letter a evaluated on letter b.
  int eval(uint8_t a, uint8_t b) const {
    if (genus_ == 0) return a == b ? 1 : 0;
    // <e_a, e_b>: nonzero only on dual pairs.
    if (b == rank_ - a + 1) return a <= genus_ ? 1 : -1;
    return 0;
  }

 private:
  ContractionContext(uint32_t rank, uint32_t genus) : rank_(rank), genus_(genus) {}
  uint32_t rank_;
  uint32_t genus_;
};

// Contraction Phi_{1,ell+1} on a degree-(k+2) tensor viewed as
// (functional slot) (x) a_1 (x) ... (x) a_{k+1}: evaluates the slot-1
// functional on a_ell and deletes both factors, leaving degree k.
// Requires 1 <= ell <= k+1.
SparseTensor phi(const ContractionContext& ctx, const SparseTensor& t, uint32_t ell);

// Theta_ell = varpi_ell . Phi_{1,ell+1}: contraction followed by the split
// cyclic projection; lands in C_n(ell-1) (x) C_n(k-ell+1).
BiCyclicTensor theta_ell(const ContractionContext& ctx, const SparseTensor& t, uint32_t ell);

// The same maps applied to t * zeta_m (m = degree of t), streaming over the
// m rotations without materializing them. These are the hook-scale kernels;
// the _serial forms are the reference implementations, the plain forms run
// the rotation grid under OpenMP. `scanned`/`hits` telemetry counts word
// instances visited and nonzero contractions accumulated.
BiCyclicTensor theta_symmetrized_serial(const ContractionContext& ctx, const SparseTensor& t,
                                        uint32_t ell, uint64_t* scanned = nullptr,
                                        uint64_t* hits = nullptr);
BiCyclicTensor theta_symmetrized(const ContractionContext& ctx, const SparseTensor& t,
                                 uint32_t ell, uint64_t* scanned = nullptr,
                                 uint64_t* hits = nullptr);
SparseTensor phi_symmetrized(const ContractionContext& ctx, const SparseTensor& t, uint32_t ell);

// Trace map c_k: Theta_1 with the trivial left factor C_n(0) dropped.
CyclicTensor trace_c(const ContractionContext& ctx, const SparseTensor& t);
CyclicTensor trace_c_symmetrized(const ContractionContext& ctx, const SparseTensor& t);

// Morita trace: the symmetric-power quotient of the trace map.
SymmetricTensor morita_trace(const ContractionContext& ctx, const SparseTensor& t);

// Value of a degree-(-2) cobracket: one bi-cyclic tensor per bidegree (p,q).
// Components are stored only when nonzero; absent means zero.
struct CobracketResult {
  std::map<std::pair<uint32_t, uint32_t>, BiCyclicTensor> components;

  BiCyclicTensor& component(uint32_t rank, uint32_t p, uint32_t q);
  bool is_zero() const { return components.empty(); }
  void prune();
  bool operator==(const CobracketResult& o) const;
};

// Graded Turaev cobracket on H^{otimes (k+2)}, evaluated directly from the
// displayed double sum over chord pairs (i,j), 1 < j-i < k+1:
//   <a_i,a_j> { pi(a_{i+1}..a_{j-1}) (x) pi(a_{j+1}..a_{i-1})
//             - pi(a_{j+1}..a_{i-1}) (x) pi(a_{i+1}..a_{j-1}) }.
CobracketResult delta_alg_full(const SymplecticContext& sym, const SparseTensor& t);

// The same map computed as (Theta_2 + ... + Theta_k) zeta_{k+2}. Implemented
// independently of delta_alg_full; the two are mutual oracles and their
// agreement is asserted by tests rather than assumed.
CobracketResult delta_alg_reduced(const SymplecticContext& sym, const SparseTensor& t);

// Framed refinement: the same double sum with j-i = 1 and j-i = k+1 allowed,
// so bidegrees (0,k) and (k,0) appear. The boundary components reproduce the
// trace map, which is what makes this a cross-check of c_k.
CobracketResult delta_alg_framed(const SymplecticContext& sym, const SparseTensor& t);

}  // namespace jt
