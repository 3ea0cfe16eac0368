#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jtrace/contract.hpp"
#include "jtrace/free_lie.hpp"
#include "jtrace/linalg.hpp"
#include "jtrace/tensor.hpp"

namespace jt {

enum class Family : uint8_t { K1, K2, K3, K4 };

const char* family_name(Family f);

// Index data for one generator of the Johnson image in H^* (x) L_n(k+1).
// The slot-1 letter of the built tensor is the dual-basis index.
//   K1: e_i^* (x) [e_{i_1},...,e_{i_{k+1}}],          i not in tail (k+1 letters)
//   K2: e_i^* (x) [e_{i_1},...,e_{i_k}, e_i],         i not in tail (k letters)
//   K3: e_i^* (x) [e_i, tail] - e_j^* (x) [e_j, rot], i,j not in tail (k letters),
//       rot = (i_k, i_1, ..., i_{k-1}); i = j allowed
//   K4: e_i^* (x) [tail] - sum_j delta_{i,i_j} e_m^* (x) [tail with i_j := m],
//       i present in the k+1-letter tail, m absent from it
struct GeneratorSpec {
  Family family;
  uint32_t n = 0;
  uint32_t k = 0;
  uint8_t i = 0;
  uint8_t j = 0;  // K3 only
  uint8_t m = 0;  // K4 only
  Letters tail;

  void validate() const;  // throws std::invalid_argument on constraint violation
};

// The exact tensor in H^* (x) L_n(k+1), degree k+2, with slot 1 the dual index.
SparseTensor build_generator(const GeneratorSpec& spec);

// Every spec over the stated index ranges, each exactly once as a spec.
// Distinct specs may still produce equal tensors; rank computations do not
// care and raw stream counts are reported separately.
std::vector<GeneratorSpec> enumerate_generators(uint32_t n, uint32_t k);

struct KernelChainReport {
  uint32_t n = 0;
  uint32_t k = 0;
  bool stable_range = true;  // n >= k+2
  uint64_t family_counts[4] = {0, 0, 0, 0};
  std::vector<uint64_t> theta_pass;      // per ell = 1..k+1
  uint64_t phi_nonzero_theta_zero = 0;   // K2 boundary cases exercised
  bool all_pass = true;
  std::string first_failure;             // offending spec + ell, when any

  std::string to_json() const;
};

// Checks Theta_ell(generator) = 0 for every enumerated generator and every
// 1 <= ell <= k+1, in the dual-basis contraction context.
KernelChainReport verify_kernel_chain(uint32_t n, uint32_t k);

struct DimsReport {
  uint32_t n = 0, k = 0;
  uint64_t lie_dim_k1 = 0;        // dim L_n(k+1)
  uint64_t cyclic_dim = 0;        // dim C_n(k)
  uint64_t theta1_rank = 0;       // rank of pi_k . Phi_12 on H^* (x) L_n(k+1)
  uint64_t kernel_dim = 0;        // n*lie_dim_k1 - theta1_rank
  uint64_t span_rank = 0;         // rank of the K1..K4 span
  bool modular_checked = false;

  std::string to_json() const;
};

// The numeric skeleton: surjectivity rank, kernel dimension, generator span
// rank; exact ranks cross-checked against two modular ranks.
DimsReport compute_dims(uint32_t n, uint32_t k);

}  // namespace jt
