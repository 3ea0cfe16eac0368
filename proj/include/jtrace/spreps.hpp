#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jtrace/contract.hpp"
#include "jtrace/linalg.hpp"
#include "jtrace/symplectic.hpp"
#include "jtrace/tensor.hpp"

namespace jt {

struct Partition {
  std::vector<uint32_t> parts;  // weakly decreasing, positive

  Partition() = default;
  explicit Partition(std::vector<uint32_t> p);

  uint32_t size() const;    // sum of parts
  uint32_t length() const { return static_cast<uint32_t>(parts.size()); }

  // Accepts "1^5", "3,1^5", "[3,1^5]", "(2,1,1)".
  static Partition parse(const std::string& s);
  std::string str() const;
};

enum class WeightContext { GL, Sp };
using WeightVector = std::vector<int32_t>;

// GL weight: multiplicity of each letter 1..n. Sp weight: multiplicity of
// e_i minus multiplicity of e_{i'}, per i = 1..g.
WeightVector word_weight(const WordShape& shape, PackedWord w, WeightContext ctx, uint32_t genus);

// Weight of a weight-homogeneous tensor; throws std::invalid_argument when
// terms carry different weights (e.g. omega in the GL context).
WeightVector tensor_weight(const SparseTensor& t, WeightContext ctx, uint32_t genus);

// omega = sum_i e_i (x) e_i^*, the invariant symplectic 2-tensor.
SparseTensor omega(const SymplecticContext& sym);

// Antisymmetrizer sum_sigma sgn(sigma) e_{j_sigma(1)} (x) ... (x) e_{j_sigma(m)}.
// A repeated index gives the zero tensor.
SparseTensor wedge(uint32_t rank, const Letters& indices);

// Right action of the degree-m Dynkin-Specht-Wever idempotent
// theta = (1 - s_2)(1 - s_3 s_2)...(1 - s_{m-1}...s_2), s_i = (i i+1).
// The factors move positions 2..m only; on a word, w * theta equals
// w_1 (x) [e_{w_2},...,e_{w_m}], which is the test oracle.
SparseTensor dsw_theta_right_serial(const SparseTensor& t);
SparseTensor dsw_theta_right(const SparseTensor& t);

// (i,j)-expansion operator: insert e_r at position i and e_r^* at position j
// of each word, summed over r = 1..2g; D_{12}(t) = omega (x) t.
SparseTensor expansion_D(const SymplecticContext& sym, const SparseTensor& t,
                         uint32_t i, uint32_t j);

// Lambda_{a,b}: e_1 inserted at positions a < b <= 8 into the antisymmetrized
// e_1 ^ ... ^ e_6; 720 terms of degree 8 with coefficients +-1.
SparseTensor lambda_ab(const SymplecticContext& sym, uint32_t a, uint32_t b);

// A Chevalley raising operator on H, extended to tensors as a derivation.
struct RaisingOperator {
  struct Move {
    uint8_t from;
    uint8_t to;
    int8_t sign;
  };
  std::string name;
  std::vector<Move> moves;  // letters not listed are sent to zero
};

// GL(n): E_{i,i+1} with e_{i+1} |-> e_i, for 1 <= i < n.
std::vector<RaisingOperator> gl_raising_operators(uint32_t n);

// Sp(2g): for i < g, e_{i+1} |-> e_i and e_{i'} |-> -e_{(i+1)'}; for i = g,
// e_{g'} |-> e_g. The signs are calibrated by the requirement that every
// operator annihilate omega, which tests enforce.
std::vector<RaisingOperator> sp_raising_operators(const SymplecticContext& sym);

SparseTensor apply_raising_serial(const RaisingOperator& op, const SparseTensor& t);
SparseTensor apply_raising(const RaisingOperator& op, const SparseTensor& t);

// Multiplicity of the irreducible labelled by lambda: the dimension of the
// space of weight-lambda vectors killed by every raising operator, computed
// by exact kernel dimensions (modular ranks cross-check the exact ones).
uint64_t hwv_multiplicity_cyclic(uint32_t n, uint32_t k, const Partition& lambda,
                                 WeightContext ctx, uint32_t genus = 0);
uint64_t hwv_multiplicity_bicyclic(uint32_t n, uint32_t p, uint32_t q, const Partition& lambda,
                                   WeightContext ctx, uint32_t genus = 0);
uint64_t hwv_multiplicity_span(const std::vector<SparseTensor>& basis, const Partition& lambda,
                               WeightContext ctx, uint32_t genus = 0);

// ---------------------------------------------------------------------------
// Hook-component verification at degree 8.

using LambdaKey = std::pair<uint32_t, uint32_t>;          // (a,b), a < b <= 8
using LambdaCombo = std::map<LambdaKey, Scalar>;          // integer coefficients
using LambdaPoly = std::map<LambdaKey, std::pair<Scalar, Scalar>>;  // constant, slope in g

// Exact decomposition of a degree-8 tensor over the 28 Lambda_{a,b}, when one
// exists (they are linearly independent, which is asserted).
std::optional<LambdaCombo> lambda_decompose(const SymplecticContext& sym, const SparseTensor& t);

// v_{[3,1^5]} = omega (x) (e_1 ^ ... ^ e_6) (x) e_1 (x) e_1.
SparseTensor hook_base_vector(const SymplecticContext& sym);

struct HookCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct HookReport {
  uint32_t g = 0;
  bool all_pass = false;
  std::vector<HookCheck> checks;
  uint64_t base_terms = 0;     // |v|
  uint64_t w_terms = 0;        // |v*theta|
  uint64_t big_terms = 0;      // |v*theta*zeta_10|
  uint64_t theta_scanned = 0;  // word instances pushed through Theta_ell
  uint64_t theta_hits = 0;     // nonzero contractions accumulated
  // Lambda decomposition of Phi_{1,ell+1}(v theta zeta_10) per ell = 2..5.
  std::map<uint32_t, LambdaCombo> phi_decomposition;
  // Exact degree-1 polynomials in g recovered by interpolation (when run).
  std::map<uint32_t, LambdaPoly> phi_g_polynomials;

  std::string to_json() const;
};

// Full verification battery for the maximal vector V = v theta zeta_10:
//  - v*theta equals its three-term D-operator expansion,
//  - the displayed Phi_{13} values of v_1, v_2, v_3 and the displayed
//    Phi_{13..16} values of V hold exactly at this g,
//  - Theta_ell(V) = 0 for all ell = 2..8 and c_8(V) != 0,
//  - the Morita trace of V vanishes,
//  - V is an h-element (zeta-invariant with Lie tails),
//  - every Sp raising operator kills V and V has Sp weight (3,1,1,1,1,1),
//  - with interpolate: g-coefficients recovered from runs at g, g+1, g+2
//    fit degree-1 polynomials exactly and match the expected ones.
// Requires g >= 9.
HookReport verify_hook(uint32_t g, bool interpolate);

struct AntiMoritaReport {
  uint32_t k = 0, n = 0;
  uint64_t cyclic_multiplicity = 0;  // (1^k) in C_n(k)
  std::map<std::pair<uint32_t, uint32_t>, uint64_t> split_multiplicities;
  bool all_pass = false;
  std::string to_json() const;
};

// Checks the multiplicity of (1^k): 1 in C_n(k) (k odd), and 0 in every
// C_n(p) (x) C_n(q) with p+q = k, p,q >= 1.
AntiMoritaReport verify_anti_morita(uint32_t k, uint32_t n);

struct ExploreReport {
  uint32_t g = 0;
  uint32_t k = 0;
  bool ran = false;
  std::string note;
  uint64_t w_terms = 0;
  bool trace_nonzero = false;
  std::map<uint32_t, uint64_t> theta_term_counts;  // ell -> |Theta_ell(V)|
  std::string to_json() const;
};

// Exploratory degree-9 analogue of the hook computation (candidate for a
// [4,1^5] component): reports trace/Theta values, asserts nothing.
ExploreReport explore_k9(uint32_t g);

}  // namespace jt
