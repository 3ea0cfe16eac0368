#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "jtrace/cyclic.hpp"
#include "jtrace/free_lie.hpp"
#include "jtrace/spreps.hpp"

namespace jt {

namespace {

std::string lambda_name(const LambdaKey& k) {
  return "Lambda[" + std::to_string(k.first) + "," + std::to_string(k.second) + "]";
}

std::vector<LambdaKey> all_lambda_keys() {
  std::vector<LambdaKey> keys;
  for (uint32_t a = 1; a <= 8; ++a)
    for (uint32_t b = a + 1; b <= 8; ++b) keys.push_back({a, b});
  return keys;
}

// Evaluate a (constant, slope) table at a concrete g.
LambdaCombo eval_poly(const LambdaPoly& poly, uint32_t g) {
  LambdaCombo combo;
  for (const auto& [key, cs] : poly) {
    Scalar v = cs.first + cs.second * Scalar(static_cast<int64_t>(g));
    if (!v.is_zero()) combo[key] = v;
  }
  return combo;
}

// ---- Expected values (constant, slope) per Lambda_{a,b}. -------------------

LambdaPoly expected_phi13_v1() {
  return {{{1, 8}, {Scalar(2), Scalar(0)}},
          {{6, 7}, {Scalar(2), Scalar(0)}},
          {{2, 3}, {Scalar(-2), Scalar(0)}},
          {{1, 4}, {Scalar(3), Scalar(0)}},
          {{1, 6}, {Scalar(-3), Scalar(0)}}};
}

LambdaPoly expected_phi13_v2() {
  return {{{1, 8}, {Scalar(-2), Scalar(-4)}},
          {{1, 2}, {Scalar(-2), Scalar(-4)}},
          {{6, 8}, {Scalar(-4), Scalar(0)}},
          {{2, 4}, {Scalar(4), Scalar(0)}}};
}

LambdaPoly expected_phi13_v3() {
  return {{{1, 2}, {Scalar(2), Scalar(0)}},
          {{3, 4}, {Scalar(-2), Scalar(0)}},
          {{7, 8}, {Scalar(2), Scalar(0)}},
          {{1, 4}, {Scalar(-3), Scalar(0)}},
          {{1, 6}, {Scalar(3), Scalar(0)}}};
}

// Displayed Phi_{1,ell+1}(v theta zeta_10) for ell = 2..5.
LambdaPoly expected_phi_big(uint32_t ell) {
  switch (ell) {
    case 2:
      return {{{1, 2}, {Scalar(0), Scalar(-4)}}, {{1, 8}, {Scalar(0), Scalar(-4)}},
              {{6, 7}, {Scalar(2), Scalar(0)}},  {{2, 3}, {Scalar(-2), Scalar(0)}},
              {{2, 4}, {Scalar(4), Scalar(0)}},  {{6, 8}, {Scalar(-4), Scalar(0)}},
              {{7, 8}, {Scalar(2), Scalar(0)}},  {{3, 4}, {Scalar(-2), Scalar(0)}}};
    case 3:
      return {{{1, 2}, {Scalar(0), Scalar(4)}},  {{3, 4}, {Scalar(1), Scalar(-6)}},
              {{7, 8}, {Scalar(1), Scalar(-6)}}, {{3, 5}, {Scalar(-2), Scalar(0)}},
              {{4, 5}, {Scalar(-2), Scalar(0)}}, {{4, 6}, {Scalar(6), Scalar(0)}},
              {{5, 6}, {Scalar(-6), Scalar(0)}}, {{5, 7}, {Scalar(6), Scalar(0)}},
              {{6, 7}, {Scalar(-2), Scalar(0)}}, {{6, 8}, {Scalar(-2), Scalar(0)}}};
    case 4:
      return {{{1, 8}, {Scalar(0), Scalar(12)}}, {{3, 4}, {Scalar(0), Scalar(12)}},
              {{4, 5}, {Scalar(4), Scalar(0)}},  {{7, 8}, {Scalar(-4), Scalar(0)}},
              {{5, 6}, {Scalar(4), Scalar(0)}},  {{6, 7}, {Scalar(-4), Scalar(0)}},
              {{6, 8}, {Scalar(8), Scalar(0)}},  {{4, 6}, {Scalar(-8), Scalar(0)}}};
    case 5:
      return {{{1, 2}, {Scalar(-1), Scalar(-6)}}, {{3, 4}, {Scalar(-1), Scalar(-6)}},
              {{5, 6}, {Scalar(1), Scalar(6)}},   {{7, 8}, {Scalar(1), Scalar(6)}},
              {{6, 7}, {Scalar(2), Scalar(0)}},   {{2, 3}, {Scalar(-2), Scalar(0)}},
              {{2, 4}, {Scalar(2), Scalar(0)}},   {{6, 8}, {Scalar(-2), Scalar(0)}},
              {{1, 3}, {Scalar(2), Scalar(0)}},   {{5, 7}, {Scalar(-2), Scalar(0)}}};
    default:
      throw std::invalid_argument("no displayed value for this slot");
  }
}

}  // namespace

std::optional<LambdaCombo> lambda_decompose(const SymplecticContext& sym, const SparseTensor& t) {
  if (t.degree() != 8) throw std::invalid_argument("lambda_decompose: degree must be 8");
  std::vector<LambdaKey> keys = all_lambda_keys();
  SparseIntegerMatrix M;
  RowIndexer rows;
  for (const auto& [a, b] : keys) {
    SparseTensor lam = lambda_ab(sym, a, b);
    M.start_column();
    for (const auto& [w, c] : lam.sorted_terms()) M.add_entry(rows.id(w), scalar_to_mpz(c));
  }
  // Clear denominators of the target so the solve stays over Z.
  mpz_class lcm(1);
  mpq_t q;
  mpq_init(q);
  for (const auto& [w, c] : t.terms()) {
    c.to_mpq(q);
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), mpq_denref(q));
  }
  std::vector<std::pair<uint32_t, mpz_class>> target;
  for (const auto& [w, c] : t.sorted_terms()) {
    c.to_mpq(q);
    mpz_class num(mpq_numref(q)), den(mpq_denref(q));
    target.emplace_back(rows.id(w), num * (lcm / den));
  }
  mpq_clear(q);
  M.rows = rows.size();
  if (rank_and_kernel(M, false).rank != keys.size())
    throw std::runtime_error("Lambda_{a,b} are unexpectedly dependent");
  auto x = solve_in_span(M, target);
  if (!x) return std::nullopt;
  Scalar scale_back = Scalar::parse(lcm.get_str());
  LambdaCombo combo;
  for (size_t i = 0; i < keys.size(); ++i) {
    if ((*x)[i].is_zero()) continue;
    combo[keys[i]] = (*x)[i] / scale_back;
  }
  return combo;
}

SparseTensor hook_base_vector(const SymplecticContext& sym) {
  if (sym.genus < 3) throw std::invalid_argument("hook vector needs 2g >= 6");
  SparseTensor e1(sym.rank(), 1);
  e1.add_term(Letters{1}, Scalar(1));
  SparseTensor w6 = wedge(sym.rank(), Letters{1, 2, 3, 4, 5, 6});
  return tensor_product(tensor_product(omega(sym), w6), tensor_product(e1, e1));
}

namespace {

struct PerGenus {
  SparseTensor w;                          // v * theta
  std::map<uint32_t, LambdaCombo> phi_big; // ell -> decomposition of Phi(v theta zeta_10)
  LambdaCombo phi13_v1, phi13_v2, phi13_v3;
  uint64_t base_terms = 0;
};

// The three-term D-operator expansion of v*theta: the seeds are the wedge
// block with the two extra e_1 factors in each of the three possible
// positions, expanded by the displayed D-combinations.
SparseTensor d_expansion_v(const SymplecticContext& sym, int which) {
  SparseTensor e1(sym.rank(), 1);
  e1.add_term(Letters{1}, Scalar(1));
  SparseTensor w6 = wedge(sym.rank(), Letters{1, 2, 3, 4, 5, 6});
  SparseTensor seed(sym.rank(), 8);
  std::vector<std::pair<uint32_t, int64_t>> combo;
  switch (which) {
    case 1:
      seed = tensor_product(w6, tensor_product(e1, e1));
      combo = {{2, 1}, {4, -3}, {6, 3}, {8, -1}};
      break;
    case 2:
      seed = tensor_product(e1, tensor_product(w6, e1));
      combo = {{3, -2}, {5, 6}, {7, -6}, {9, 2}};
      break;
    case 3:
      seed = tensor_product(tensor_product(e1, e1), w6);
      combo = {{4, 1}, {6, -3}, {8, 3}, {10, -1}};
      break;
    default:
      throw std::logic_error("bad seed index");
  }
  SparseTensor out(sym.rank(), 10);
  for (auto [j, c] : combo) out = add(out, scale(expansion_D(sym, seed, 1, j), Scalar(c)));
  return out;
}

PerGenus compute_per_genus(uint32_t g, bool want_phi) {
  SymplecticContext sym(g);
  ContractionContext ctx = ContractionContext::symplectic(sym);
  PerGenus r;
  SparseTensor v = hook_base_vector(sym);
  r.base_terms = v.term_count();
  r.w = dsw_theta_right(v);
  if (want_phi) {
    for (uint32_t ell = 2; ell <= 5; ++ell) {
      SparseTensor ph = phi_symmetrized(ctx, r.w, ell);
      auto dec = lambda_decompose(sym, ph);
      if (!dec) throw std::runtime_error("Phi value is not a Lambda combination");
      r.phi_big[ell] = *dec;
    }
    auto d1 = lambda_decompose(sym, phi(ctx, d_expansion_v(sym, 1), 2));
    auto d2 = lambda_decompose(sym, phi(ctx, d_expansion_v(sym, 2), 2));
    auto d3 = lambda_decompose(sym, phi(ctx, d_expansion_v(sym, 3), 2));
    if (!d1 || !d2 || !d3) throw std::runtime_error("Phi_13(v_i) not a Lambda combination");
    r.phi13_v1 = *d1;
    r.phi13_v2 = *d2;
    r.phi13_v3 = *d3;
  }
  return r;
}

bool combos_equal(const LambdaCombo& a, const LambdaCombo& b) {
  if (a.size() != b.size()) return false;
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    if (it == b.end() || !(it->second == v)) return false;
  }
  return true;
}

std::string combo_str(const LambdaCombo& c) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : c) {
    os << (first ? "" : " + ") << v.str() << "*" << lambda_name(k);
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

// Fit an exact degree-1 polynomial in g through three sampled combos.
// Returns nullopt if any coefficient fails to lie on a line.
std::optional<LambdaPoly> fit_g_line(const LambdaCombo& c1, uint32_t g1, const LambdaCombo& c2,
                                     const LambdaCombo& c3) {
  LambdaPoly poly;
  std::map<LambdaKey, char> keys;
  for (const auto& [k, v] : c1) keys[k] = 1;
  for (const auto& [k, v] : c2) keys[k] = 1;
  for (const auto& [k, v] : c3) keys[k] = 1;
  auto at = [](const LambdaCombo& c, const LambdaKey& k) {
    auto it = c.find(k);
    return it == c.end() ? Scalar(0) : it->second;
  };
  for (const auto& [k, onev] : keys) {
    Scalar y1 = at(c1, k), y2 = at(c2, k), y3 = at(c3, k);
    Scalar slope = y2 - y1;
    if (!(y3 - y2 == slope)) return std::nullopt;  // three points over-determine the line
    Scalar constant = y1 - slope * Scalar(static_cast<int64_t>(g1));
    if (!constant.is_zero() || !slope.is_zero()) poly[k] = {constant, slope};
  }
  return poly;
}

bool polys_equal(const LambdaPoly& a, const LambdaPoly& b) {
  if (a.size() != b.size()) return false;
  for (const auto& [k, v] : a) {
    auto it = b.find(k);
    if (it == b.end() || !(it->second.first == v.first) || !(it->second.second == v.second))
      return false;
  }
  return true;
}

}  // namespace

HookReport verify_hook(uint32_t g, bool interpolate) {
  if (g < 9) throw std::invalid_argument("hook verification requires g >= 9");
  SymplecticContext sym(g);
  ContractionContext ctx = ContractionContext::symplectic(sym);
  HookReport rep;
  rep.g = g;

  auto check = [&](const std::string& name, bool pass, std::string detail = "") {
    rep.checks.push_back({name, pass, std::move(detail)});
  };

  SparseTensor v = hook_base_vector(sym);
  rep.base_terms = v.term_count();
  SparseTensor w = dsw_theta_right(v);
  rep.w_terms = w.term_count();

  // Convention anchor: v*theta equals the three-term D-operator expansion.
  SparseTensor dsum =
      add(add(d_expansion_v(sym, 1), d_expansion_v(sym, 2)), d_expansion_v(sym, 3));
  check("dsw_equals_D_expansion", w == dsum);

  // Displayed Phi_13 values of the three pieces.
  {
    auto run = [&](int which, const LambdaPoly& expect) {
      SparseTensor ph = phi(ctx, d_expansion_v(sym, which), 2);
      LambdaCombo want = eval_poly(expect, g);
      auto got = lambda_decompose(sym, ph);
      bool ok = got.has_value() && combos_equal(*got, want);
      check("phi13_v" + std::to_string(which), ok,
            ok ? "" : "computed " + (got ? combo_str(*got) : std::string("<not in Lambda span>")));
    };
    run(1, expected_phi13_v1());
    run(2, expected_phi13_v2());
    run(3, expected_phi13_v3());
  }

  // Displayed Phi values of V = v theta zeta_10 for slots 2..5, plus their
  // Lambda decompositions for the report.
  for (uint32_t ell = 2; ell <= 5; ++ell) {
    SparseTensor ph = phi_symmetrized(ctx, w, ell);
    LambdaCombo want = eval_poly(expected_phi_big(ell), g);
    auto got = lambda_decompose(sym, ph);
    bool ok = got.has_value() && combos_equal(*got, want);
    check("phi_1" + std::to_string(ell + 1) + "_of_V", ok,
          ok ? "" : "computed " + (got ? combo_str(*got) : std::string("<not in Lambda span>")));
    if (got) rep.phi_decomposition[ell] = *got;
  }

  // Theta_ell(V) = 0 for every ell = 2..8.
  for (uint32_t ell = 2; ell <= 8; ++ell) {
    BiCyclicTensor th = theta_symmetrized(ctx, w, ell, &rep.theta_scanned, &rep.theta_hits);
    check("theta_" + std::to_string(ell) + "_vanishes", th.is_zero(),
          th.is_zero() ? "" : std::to_string(th.term_count()) + " residual terms");
  }

  // c_8(V) != 0, and its Morita trace vanishes.
  CyclicTensor c8 = trace_c_symmetrized(ctx, w);
  check("c8_nonzero", !c8.is_zero(),
        "trace support " + std::to_string(c8.term_count()) + " cyclic words");
  check("morita_trace_zero", symmetric_project(c8).is_zero());

  // h-element certification of V, and of the DSW image itself.
  check("dsw_tail_is_lie", tail_is_lie(w));
  SparseTensor V = cyclic_symmetrizer(w);
  rep.big_terms = V.term_count();
  check("V_is_h_element", is_h_element(V));

  // Sp-maximal vector: killed by all raising operators, weight (3,1^5).
  bool killed = true;
  std::string survivor;
  for (const auto& op : sp_raising_operators(sym)) {
    if (!apply_raising(op, V).is_zero()) {
      killed = false;
      survivor = op.name;
      break;
    }
  }
  check("sp_raising_kill_V", killed, survivor);
  {
    WeightVector expect(g, 0);
    expect[0] = 3;
    for (int i = 1; i <= 5; ++i) expect[i] = 1;
    bool ok = false;
    std::string detail;
    try {
      ok = tensor_weight(V, WeightContext::Sp, g) == expect;
    } catch (const std::exception& e) {
      detail = e.what();
    }
    check("V_weight_is_3_1_1_1_1_1", ok, detail);
  }

  if (interpolate) {
    PerGenus p1 = compute_per_genus(g, true);
    PerGenus p2 = compute_per_genus(g + 1, true);
    PerGenus p3 = compute_per_genus(g + 2, true);
    auto fit_and_check = [&](const std::string& name, const LambdaCombo& a, const LambdaCombo& b,
                             const LambdaCombo& c, const LambdaPoly& expect,
                             uint32_t record_ell = 0) {
      auto poly = fit_g_line(a, g, b, c);
      bool ok = poly.has_value() && polys_equal(*poly, expect);
      check(name, ok, poly ? "" : "coefficients do not fit a line in g");
      if (ok && record_ell) rep.phi_g_polynomials[record_ell] = *poly;
    };
    fit_and_check("gpoly_phi13_v1", p1.phi13_v1, p2.phi13_v1, p3.phi13_v1, expected_phi13_v1());
    fit_and_check("gpoly_phi13_v2", p1.phi13_v2, p2.phi13_v2, p3.phi13_v2, expected_phi13_v2());
    fit_and_check("gpoly_phi13_v3", p1.phi13_v3, p2.phi13_v3, p3.phi13_v3, expected_phi13_v3());
    for (uint32_t ell = 2; ell <= 5; ++ell)
      fit_and_check("gpoly_phi_1" + std::to_string(ell + 1), p1.phi_big[ell], p2.phi_big[ell],
                    p3.phi_big[ell], expected_phi_big(ell), ell);
  }

  rep.all_pass = true;
  for (const auto& c : rep.checks) rep.all_pass = rep.all_pass && c.pass;
  return rep;
}

std::string HookReport::to_json() const {
  nlohmann::json j;
  j["g"] = g;
  j["all_pass"] = all_pass;
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : this->checks) {
    nlohmann::json jc = {{"name", c.name}, {"pass", c.pass}};
    if (!c.detail.empty()) jc["detail"] = c.detail;
    checks.push_back(jc);
  }
  j["checks"] = checks;
  j["term_counts"] = {{"v", base_terms}, {"v_theta", w_terms}, {"v_theta_zeta", big_terms}};
  j["theta_telemetry"] = {{"scanned", theta_scanned}, {"hits", theta_hits}};
  for (const auto& [ell, combo] : phi_decomposition) {
    nlohmann::json jd;
    for (const auto& [k, val] : combo) jd[lambda_name(k)] = val.str();
    auto pit = phi_g_polynomials.find(ell);
    if (pit != phi_g_polynomials.end()) {
      nlohmann::json gp;
      for (const auto& [k, cs] : pit->second)
        gp[lambda_name(k)] = {cs.first.str(), cs.second.str()};
      jd["g_poly"] = gp;
    }
    j["phi_1" + std::to_string(ell + 1)] = jd;
  }
  return j.dump(2);
}

AntiMoritaReport verify_anti_morita(uint32_t k, uint32_t n) {
  if (k < 2) throw std::invalid_argument("verify_anti_morita: k must be >= 2");
  AntiMoritaReport r;
  r.k = k;
  r.n = n;
  Partition ones(std::vector<uint32_t>(k, 1));
  r.cyclic_multiplicity = hwv_multiplicity_cyclic(n, k, ones, WeightContext::GL);
  bool pass = r.cyclic_multiplicity == (k % 2 == 1 ? 1u : 0u);
  for (uint32_t p = 1; p < k; ++p) {
    uint64_t m = hwv_multiplicity_bicyclic(n, p, k - p, ones, WeightContext::GL);
    r.split_multiplicities[{p, k - p}] = m;
    pass = pass && (m == 0);
  }
  r.all_pass = pass;
  return r;
}

std::string AntiMoritaReport::to_json() const {
  nlohmann::json j;
  j["k"] = k;
  j["n"] = n;
  j["cyclic_multiplicity"] = cyclic_multiplicity;
  nlohmann::json splits;
  for (const auto& [pq, m] : split_multiplicities)
    splits["C(" + std::to_string(pq.first) + ")xC(" + std::to_string(pq.second) + ")"] = m;
  j["split_multiplicities"] = splits;
  j["all_pass"] = all_pass;
  return j.dump(2);
}

ExploreReport explore_k9(uint32_t g) {
  ExploreReport r;
  r.g = g;
  r.k = 9;
  if (g < 6) {
    r.note = "needs 2g >= 12 so the wedge letters stay isotropic";
    return r;
  }
  SymplecticContext sym(g);
  ContractionContext ctx = ContractionContext::symplectic(sym);
  SparseTensor e1(sym.rank(), 1);
  e1.add_term(Letters{1}, Scalar(1));
  SparseTensor seed = tensor_product(
      tensor_product(omega(sym), wedge(sym.rank(), Letters{1, 2, 3, 4, 5, 6})),
      tensor_product(tensor_product(e1, e1), e1));
  SparseTensor w = dsw_theta_right(seed);
  r.w_terms = w.term_count();
  r.trace_nonzero = !trace_c_symmetrized(ctx, w).is_zero();
  for (uint32_t ell = 2; ell <= 9; ++ell)
    r.theta_term_counts[ell] = theta_symmetrized(ctx, w, ell).term_count();
  r.ran = true;
  return r;
}

std::string ExploreReport::to_json() const {
  nlohmann::json j;
  j["g"] = g;
  j["k"] = k;
  j["ran"] = ran;
  if (!note.empty()) j["note"] = note;
  if (ran) {
    j["w_terms"] = w_terms;
    j["trace_c9_nonzero"] = trace_nonzero;
    nlohmann::json th;
    for (const auto& [ell, cnt] : theta_term_counts)
      th["theta_" + std::to_string(ell)] = cnt;
    j["theta_residual_terms"] = th;
  }
  return j.dump(2);
}

}  // namespace jt
