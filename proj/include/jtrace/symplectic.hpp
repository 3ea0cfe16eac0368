#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>

namespace jt {

// Symplectic basis conventions on H of rank 2g: the partner of i is
// i' = 2g-i+1, the form satisfies <e_i,e_j> = 0 = <e_i',e_j'> and
// <e_i,e_j'> = delta_ij = -<e_j',e_i> for 1 <= i,j <= g. The dual element
// e_i^* (the element of H with <e_i, e_j^*> = delta_ij) is e_i' for i <= g
// and -e_i' for i > g.
//
// Note: e_i^* is used in two roles. In the free-group setting it is the
// dual-basis functional on H (contractions evaluate it as f(e_j) = delta_ij);
// here it is an element of H via Poincare duality v |-> <v,.>. Contraction
// code takes an explicit context so both meanings coexist without ambiguity.
struct SymplecticContext {
  uint32_t genus = 0;

  explicit SymplecticContext(uint32_t g) : genus(g) {
    if (g < 1) throw std::invalid_argument("genus must be >= 1");
  }

  uint32_t rank() const { return 2 * genus; }

  void check_index(uint32_t i) const {
    if (i < 1 || i > rank()) throw std::invalid_argument("basis index out of range");
  }

  uint32_t partner(uint32_t i) const {
    check_index(i);
    return rank() - i + 1;
  }

  // e_i^* = sign * e_{partner}: (i', +1) for i <= g, (i', -1) for i > g.
  std::pair<uint32_t, int> dual_index(uint32_t i) const {
    check_index(i);
    return {rank() - i + 1, i <= genus ? +1 : -1};
  }

  // <e_i, e_j> in {-1, 0, 1}.
  int pairing(uint32_t i, uint32_t j) const {
    check_index(i);
    check_index(j);
    if (j == rank() - i + 1) return i <= genus ? +1 : -1;
    return 0;
  }
};

}  // namespace jt
