#include "jtrace/genset.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include <nlohmann/json.hpp>

#include "jtrace/cyclic.hpp"

namespace jt {

const char* family_name(Family f) {
  switch (f) {
    case Family::K1: return "K1";
    case Family::K2: return "K2";
    case Family::K3: return "K3";
    case Family::K4: return "K4";
  }
  return "?";
}

namespace {

bool contains(const Letters& v, uint8_t x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

void check_letter(uint32_t n, uint8_t x, const char* what) {
  if (x < 1 || x > n) throw std::invalid_argument(std::string(what) + " out of range");
}

}  // namespace

void GeneratorSpec::validate() const {
  if (k < 1) throw std::invalid_argument("generator: k must be >= 1");
  check_letter(n, i, "index i");
  for (uint8_t v : tail) check_letter(n, v, "tail index");
  switch (family) {
    case Family::K1:
      if (tail.size() != k + 1) throw std::invalid_argument("K1 tail must have k+1 letters");
      if (contains(tail, i)) throw std::invalid_argument("K1 requires i not in tail");
      break;
    case Family::K2:
      if (tail.size() != k) throw std::invalid_argument("K2 tail must have k letters");
      if (contains(tail, i)) throw std::invalid_argument("K2 requires i not in tail");
      break;
    case Family::K3:
      check_letter(n, j, "index j");
      if (tail.size() != k) throw std::invalid_argument("K3 tail must have k letters");
      if (contains(tail, i) || contains(tail, j))
        throw std::invalid_argument("K3 requires i,j not in tail");
      break;
    case Family::K4:
      check_letter(n, m, "index m");
      if (tail.size() != k + 1) throw std::invalid_argument("K4 tail must have k+1 letters");
      if (!contains(tail, i)) throw std::invalid_argument("K4 requires i in tail");
      if (contains(tail, m)) throw std::invalid_argument("K4 requires m not in tail");
      break;
  }
}

namespace {

// e_x (x) expand([letters]) as a degree-(k+2) tensor with slot 1 = x.
SparseTensor dual_times_commutator(uint32_t n, uint8_t x, const Letters& bracket) {
  SparseTensor head(n, 1);
  head.add_term(Letters{x}, Scalar(1));
  return tensor_product(head, expand_commutator(n, bracket));
}

}  // namespace

SparseTensor build_generator(const GeneratorSpec& spec) {
  spec.validate();
  uint32_t n = spec.n;
  switch (spec.family) {
    case Family::K1:
      return dual_times_commutator(n, spec.i, spec.tail);
    case Family::K2: {
      Letters b = spec.tail;
      b.push_back(spec.i);
      return dual_times_commutator(n, spec.i, b);
    }
    case Family::K3: {
      Letters b1;
      b1.push_back(spec.i);
      b1.insert(b1.end(), spec.tail.begin(), spec.tail.end());
      Letters b2;
      b2.push_back(spec.j);
      b2.push_back(spec.tail.back());
      b2.insert(b2.end(), spec.tail.begin(), spec.tail.end() - 1);
      return add(dual_times_commutator(n, spec.i, b1),
                 scale(dual_times_commutator(n, spec.j, b2), Scalar(-1)));
    }
    case Family::K4: {
      SparseTensor out = dual_times_commutator(n, spec.i, spec.tail);
      for (size_t pos = 0; pos < spec.tail.size(); ++pos) {
        if (spec.tail[pos] != spec.i) continue;
        Letters b = spec.tail;
        b[pos] = spec.m;
        out = add(out, scale(dual_times_commutator(n, spec.m, b), Scalar(-1)));
      }
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

namespace {

// Enumerates all length-len tuples with letters drawn from `alphabet`.
template <class Fn>
void for_each_tuple(const Letters& alphabet, uint32_t len, Fn&& fn) {
  Letters cur(len);
  uint64_t total = 1;
  for (uint32_t t = 0; t < len; ++t) total *= alphabet.size();
  for (uint64_t code = 0; code < total; ++code) {
    uint64_t c = code;
    for (uint32_t t = 0; t < len; ++t) {
      cur[len - 1 - t] = alphabet[c % alphabet.size()];
      c /= alphabet.size();
    }
    fn(cur);
  }
}

Letters alphabet_without(uint32_t n, std::initializer_list<uint8_t> excluded) {
  Letters a;
  for (uint32_t v = 1; v <= n; ++v)
    if (std::find(excluded.begin(), excluded.end(), v) == excluded.end())
      a.push_back(static_cast<uint8_t>(v));
  return a;
}

}  // namespace

std::vector<GeneratorSpec> enumerate_generators(uint32_t n, uint32_t k) {
  if (k < 1) throw std::invalid_argument("enumerate_generators: k must be >= 1");
  if (n < 2) throw std::invalid_argument("enumerate_generators: n must be >= 2");
  std::vector<GeneratorSpec> out;
  for (uint32_t iu = 1; iu <= n; ++iu) {
    uint8_t i = static_cast<uint8_t>(iu);
    Letters rest = alphabet_without(n, {i});
    // K1 and K2: tails avoiding i.
    for_each_tuple(rest, k + 1, [&](const Letters& tail) {
      out.push_back({Family::K1, n, k, i, 0, 0, tail});
    });
    for_each_tuple(rest, k, [&](const Letters& tail) {
      out.push_back({Family::K2, n, k, i, 0, 0, tail});
    });
    // K3: second index j, tail avoiding both (i = j allowed).
    for (uint32_t ju = 1; ju <= n; ++ju) {
      uint8_t j = static_cast<uint8_t>(ju);
      Letters both = alphabet_without(n, {i, j});
      for_each_tuple(both, k, [&](const Letters& tail) {
        out.push_back({Family::K3, n, k, i, j, 0, tail});
      });
    }
  }
  // K4: (k+1)-tuples with a repeated-candidate index i present and m absent.
  Letters full = alphabet_without(n, {});
  for_each_tuple(full, k + 1, [&](const Letters& tail) {
    Letters distinct;
    for (uint8_t v : tail)
      if (!contains(distinct, v)) distinct.push_back(v);
    for (uint8_t i : distinct)
      for (uint32_t mu = 1; mu <= n; ++mu)
        if (!contains(tail, static_cast<uint8_t>(mu)))
          out.push_back({Family::K4, n, k, i, 0, static_cast<uint8_t>(mu), tail});
  });
  return out;
}

KernelChainReport verify_kernel_chain(uint32_t n, uint32_t k) {
  if (k < 2) throw std::invalid_argument("verify_kernel_chain: k must be >= 2");
  KernelChainReport report;
  report.n = n;
  report.k = k;
  report.stable_range = n >= k + 2;
  report.theta_pass.assign(k + 1, 0);

  std::vector<GeneratorSpec> specs = enumerate_generators(n, k);
  for (const auto& s : specs) ++report.family_counts[static_cast<int>(s.family)];

  ContractionContext ctx = ContractionContext::dual_basis(n);
  std::vector<uint64_t> pass(k + 1, 0);
  uint64_t boundary_cases = 0;
  bool failed = false;
  std::string failure;

#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    std::vector<uint64_t> local_pass(k + 1, 0);
    uint64_t local_boundary = 0;
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 64) nowait
#endif
    for (ptrdiff_t s = 0; s < static_cast<ptrdiff_t>(specs.size()); ++s) {
      SparseTensor gen = build_generator(specs[s]);
      for (uint32_t ell = 1; ell <= k + 1; ++ell) {
        SparseTensor contracted = phi(ctx, gen, ell);
        BiCyclicTensor th = varpi_ell(contracted, ell);
        if (th.is_zero()) {
          ++local_pass[ell - 1];
          if (!contracted.is_zero()) ++local_boundary;
        } else {
#ifdef _OPENMP
#pragma omp critical(jt_chain_fail)
#endif
          {
            failed = true;
            if (failure.empty()) {
              std::ostringstream os;
              os << family_name(specs[s].family) << " i=" << int(specs[s].i);
              if (specs[s].family == Family::K3) os << " j=" << int(specs[s].j);
              if (specs[s].family == Family::K4) os << " m=" << int(specs[s].m);
              os << " tail=[";
              for (size_t t = 0; t < specs[s].tail.size(); ++t)
                os << (t ? "," : "") << int(specs[s].tail[t]);
              os << "] ell=" << ell;
              failure = os.str();
            }
          }
        }
      }
    }
#ifdef _OPENMP
#pragma omp critical(jt_chain_merge)
#endif
    {
      for (uint32_t e = 0; e <= k; ++e) pass[e] += local_pass[e];
      boundary_cases += local_boundary;
    }
  }

  report.theta_pass = pass;
  report.phi_nonzero_theta_zero = boundary_cases;
  report.all_pass = !failed;
  report.first_failure = failure;
  return report;
}

std::string KernelChainReport::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["k"] = k;
  j["stable_range"] = stable_range;
  j["family_counts"] = {{"K1", family_counts[0]},
                        {"K2", family_counts[1]},
                        {"K3", family_counts[2]},
                        {"K4", family_counts[3]}};
  nlohmann::json checks;
  for (uint32_t ell = 1; ell <= theta_pass.size(); ++ell) {
    uint64_t total = family_counts[0] + family_counts[1] + family_counts[2] + family_counts[3];
    checks["theta_" + std::to_string(ell)] =
        (theta_pass[ell - 1] == total) ? "pass" : "fail";
  }
  j["theta_checks"] = checks;
  j["phi_nonzero_theta_zero_cases"] = phi_nonzero_theta_zero;
  j["all_pass"] = all_pass;
  if (!first_failure.empty()) j["first_failure"] = first_failure;
  return j.dump(2);
}

namespace {

// Columns of the Theta_1 matrix: e_i^* (x) expand([tuple]) traced into C_n(k),
// over all i and all (k+1)-tuples. Simple commutators span L_n(k+1), so the
// column span is the full image.
SparseIntegerMatrix theta1_matrix(uint32_t n, uint32_t k) {
  SparseIntegerMatrix M;
  RowIndexer rows;
  ContractionContext ctx = ContractionContext::dual_basis(n);
  Letters full;
  for (uint32_t v = 1; v <= n; ++v) full.push_back(static_cast<uint8_t>(v));
  for (uint32_t i = 1; i <= n; ++i) {
    for_each_tuple(full, k + 1, [&](const Letters& tuple) {
      SparseTensor gen = dual_times_commutator(n, static_cast<uint8_t>(i), tuple);
      CyclicTensor tr = trace_c(ctx, gen);
      M.start_column();
      for (const auto& [w, c] : tr.sorted_terms()) {
        // Coefficients here are small integers by construction.
        M.add_entry(rows.id(w), scalar_to_mpz(c));
      }
    });
  }
  M.rows = rows.size();
  return M;
}

SparseIntegerMatrix generator_matrix(uint32_t n, uint32_t k) {
  SparseIntegerMatrix M;
  RowIndexer rows;
  for (const auto& spec : enumerate_generators(n, k)) {
    SparseTensor gen = build_generator(spec);
    M.start_column();
    for (const auto& [w, c] : gen.sorted_terms()) M.add_entry(rows.id(w), scalar_to_mpz(c));
  }
  M.rows = rows.size();
  return M;
}

}  // namespace

DimsReport compute_dims(uint32_t n, uint32_t k) {
  DimsReport r;
  r.n = n;
  r.k = k;
  r.lie_dim_k1 = lie_dimension(n, k + 1);
  r.cyclic_dim = cyclic_dimension(n, k);
  r.theta1_rank = checked_rank(theta1_matrix(n, k));
  r.kernel_dim = static_cast<uint64_t>(n) * r.lie_dim_k1 - r.theta1_rank;
  r.span_rank = checked_rank(generator_matrix(n, k));
  r.modular_checked = true;
  return r;
}

std::string DimsReport::to_json() const {
  nlohmann::json j;
  j["n"] = n;
  j["k"] = k;
  j["lie_dimension_k_plus_1"] = lie_dim_k1;
  j["cyclic_dimension"] = cyclic_dim;
  j["theta1_rank"] = theta1_rank;
  j["kernel_dimension"] = kernel_dim;
  j["generator_span_rank"] = span_rank;
  j["modular_cross_check"] = modular_checked ? "pass" : "skipped";
  return j.dump(2);
}

}  // namespace jt
