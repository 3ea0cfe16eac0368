#pragma once

#include <iosfwd>
#include <string>

#include "jtrace/tensor.hpp"

namespace jt {

// The left-normed simple commutator [e_{i_1},...,e_{i_k}], meaning
// [...[[e_{i_1},e_{i_2}],e_{i_3}],...,e_{i_k}].
struct SimpleCommutator {
  uint32_t rank = 0;
  Letters indices;  // k >= 1, each in {1..rank}

  SimpleCommutator(uint32_t n, Letters ix);
};

// Expansion of a simple commutator into H^{otimes k} via [u,v] = uv - vu.
SparseTensor expand_commutator(const SimpleCommutator& c);
SparseTensor expand_commutator(uint32_t rank, const Letters& indices);

// Ordered-subset expansion of [y, e_{i_1}, ..., e_{i_k}]: the sum over all
// ordered subsets S of the tail of (-1)^{|S|} e_{<-S} (x) y (x) e_{->S^c},
// where e_{<-S} lists S reversed and e_{->S^c} the complement in order.
// Must agree with expand_commutator([y, tail]); the two are mutual oracles.
SparseTensor expand_simple_subset_formula(uint32_t rank, uint8_t y, const Letters& tail);

// Left-normed bracketing of each word, extended linearly:
// w_1...w_m |-> [e_{w_1},...,e_{w_m}] expanded in H^{otimes m}.
SparseTensor dynkin_map_serial(const SparseTensor& t);
SparseTensor dynkin_map(const SparseTensor& t);

// Dynkin-Specht-Wever criterion: t lies in L_n(m) iff dynkin_map(t) = m*t.
bool is_lie_element(const SparseTensor& t);

// Whether every first-letter slice of t (positions 2..m) is a Lie element,
// i.e. t lies in H (x) L_n(m-1) inside H^{otimes m}.
bool tail_is_lie(const SparseTensor& t);

// Left bracketing H (x) L(k+1) -> L(k+2): X (x) u |-> [X,u] = Xu - uX, which
// on words is t - t*zeta. Requires the tail of t to be a Lie element.
SparseTensor bracket_map(const SparseTensor& t);

// Membership in h_{g,1}(k) viewed inside H^{otimes (k+2)}: the tail is Lie
// and the left bracketing vanishes (equivalently t is zeta-invariant).
bool is_h_element(const SparseTensor& t);

// {"rank":n,"commutator":[i_1,...,i_k]} serialization.
std::string serialize_commutator(const SimpleCommutator& c);
SimpleCommutator parse_commutator(const std::string& line);

}  // namespace jt
