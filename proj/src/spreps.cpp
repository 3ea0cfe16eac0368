#include "jtrace/spreps.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "jtrace/cyclic.hpp"
#include "jtrace/parallel.hpp"

namespace jt {

Partition::Partition(std::vector<uint32_t> p) : parts(std::move(p)) {
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] == 0) throw std::invalid_argument("partition parts must be positive");
    if (i > 0 && parts[i] > parts[i - 1])
      throw std::invalid_argument("partition parts must be weakly decreasing");
  }
}

uint32_t Partition::size() const {
  return std::accumulate(parts.begin(), parts.end(), uint32_t(0));
}

Partition Partition::parse(const std::string& s) {
  std::string body = s;
  if (!body.empty() && (body.front() == '[' || body.front() == '(')) body = body.substr(1);
  if (!body.empty() && (body.back() == ']' || body.back() == ')')) body.pop_back();
  std::vector<uint32_t> parts;
  std::istringstream is(body);
  std::string piece;
  while (std::getline(is, piece, ',')) {
    if (piece.empty()) continue;
    size_t caret = piece.find('^');
    if (caret == std::string::npos) {
      parts.push_back(static_cast<uint32_t>(std::stoul(piece)));
    } else {
      uint32_t part = static_cast<uint32_t>(std::stoul(piece.substr(0, caret)));
      uint32_t rep = static_cast<uint32_t>(std::stoul(piece.substr(caret + 1)));
      for (uint32_t r = 0; r < rep; ++r) parts.push_back(part);
    }
  }
  return Partition(std::move(parts));
}

std::string Partition::str() const {
  std::ostringstream os;
  os << '[';
  for (size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i];
  os << ']';
  return os.str();
}

WeightVector word_weight(const WordShape& shape, PackedWord w, WeightContext ctx,
                         uint32_t genus) {
  if (ctx == WeightContext::Sp && (genus < 1 || shape.rank != 2 * genus))
    throw std::invalid_argument("Sp weight needs rank = 2*genus");
  WeightVector wt(ctx == WeightContext::GL ? shape.rank : genus, 0);
  for (uint32_t j = 1; j <= shape.degree; ++j) {
    uint8_t v = shape.letter(w, j);
    if (ctx == WeightContext::GL) {
      ++wt[v - 1];
    } else {
      if (v <= genus)
        ++wt[v - 1];
      else
        --wt[shape.rank - v];  // v = i' lowers coordinate i = 2g-v+1
    }
  }
  return wt;
}

WeightVector tensor_weight(const SparseTensor& t, WeightContext ctx, uint32_t genus) {
  if (t.is_zero()) throw std::invalid_argument("tensor_weight: zero tensor has no weight");
  bool first = true;
  WeightVector wt;
  for (const auto& [w, c] : t.terms()) {
    WeightVector cur = word_weight(t.shape(), w, ctx, genus);
    if (first) {
      wt = std::move(cur);
      first = false;
    } else if (cur != wt) {
      throw std::invalid_argument("tensor is not weight-homogeneous");
    }
  }
  return wt;
}

SparseTensor omega(const SymplecticContext& sym) {
  SparseTensor t(sym.rank(), 2);
  for (uint32_t i = 1; i <= sym.rank(); ++i) {
    auto [dual, sign] = sym.dual_index(i);
    t.add_term(Letters{static_cast<uint8_t>(i), static_cast<uint8_t>(dual)}, Scalar(sign));
  }
  return t;
}

SparseTensor wedge(uint32_t rank, const Letters& indices) {
  uint32_t m = static_cast<uint32_t>(indices.size());
  SparseTensor t(rank, m);
  {
    Letters sorted = indices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      return t;  // alternating: repeated index gives zero
  }
  // Run over permutations in lexicographic order, tracking the parity of each
  // arrangement relative to the given order by inversion count.
  std::vector<uint32_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  Letters word(m);
  do {
    int inversions = 0;
    for (uint32_t a = 0; a < m; ++a)
      for (uint32_t b = a + 1; b < m; ++b)
        if (perm[a] > perm[b]) ++inversions;
    for (uint32_t a = 0; a < m; ++a) word[a] = indices[perm[a]];
    t.add_term(word, Scalar(inversions % 2 == 0 ? 1 : -1));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return t;
}

namespace {

// One DSW factor (1 - s_j s_{j-1} ... s_2) acting on the right: the moved
// word rotates positions 2..j+1 right by one step (letter j+1 moves to
// position 2). Returns the moved word.
PackedWord dsw_factor_move(const WordShape& shape, PackedWord w, uint32_t j) {
  uint32_t bits = shape.bits;
  uint32_t m = shape.degree;
  uint32_t base = bits * (m - j - 1);          // shift of letter j+1
  PackedWord lm = (PackedWord(1) << bits) - 1;
  PackedWord mover = (w >> base) & lm;         // letter at position j+1
  uint32_t mid_bits = bits * (j - 1);          // letters 2..j
  PackedWord mid = (w >> (base + bits)) & ((PackedWord(1) << mid_bits) - 1);
  PackedWord seg = (mover << mid_bits) | mid;  // new letters 2..j+1
  uint32_t seg_bits = bits * j;
  PackedWord seg_mask = ((PackedWord(1) << seg_bits) - 1) << base;
  return (w & ~seg_mask) | (seg << base);
}

template <bool Parallel>
SparseTensor dsw_theta_right_impl(const SparseTensor& t) {
  uint32_t m = t.degree();
  if (m < 2) throw std::invalid_argument("dsw idempotent needs degree >= 2");
  const WordShape& shape = t.shape();
  TermMap cur = t.terms();
  for (uint32_t j = 2; j <= m - 1; ++j) {
    auto step = [&](PackedWord w, const Scalar& c, TermMap& out) {
      accumulate_term(out, w, c);
      accumulate_term(out, dsw_factor_move(shape, w, j), -c);
    };
    cur = Parallel ? parallel_map_accumulate(cur, step) : serial_map_accumulate(cur, step);
  }
  return SparseTensor(shape, std::move(cur));
}

}  // namespace

SparseTensor dsw_theta_right_serial(const SparseTensor& t) {
  return dsw_theta_right_impl<false>(t);
}

SparseTensor dsw_theta_right(const SparseTensor& t) {
  return dsw_theta_right_impl<true>(t);
}

SparseTensor expansion_D(const SymplecticContext& sym, const SparseTensor& t,
                         uint32_t i, uint32_t j) {
  uint32_t k = t.degree();
  if (i < 1 || i >= j || j > k + 2) throw std::invalid_argument("expansion_D: need 1 <= i < j <= k+2");
  if (t.rank() != sym.rank()) throw std::invalid_argument("expansion_D: rank mismatch");
  SparseTensor out(sym.rank(), k + 2);
  Letters word(k + 2);
  for (const auto& [w, c] : t.terms()) {
    Letters ls = t.shape().unpack(w);
    for (uint32_t r = 1; r <= sym.rank(); ++r) {
      auto [dual, sign] = sym.dual_index(r);
      uint32_t src = 0;
      for (uint32_t pos = 1; pos <= k + 2; ++pos) {
        if (pos == i)
          word[pos - 1] = static_cast<uint8_t>(r);
        else if (pos == j)
          word[pos - 1] = static_cast<uint8_t>(dual);
        else
          word[pos - 1] = ls[src++];
      }
      out.add_term(word, sign > 0 ? c : -c);
    }
  }
  return out;
}

SparseTensor lambda_ab(const SymplecticContext& sym, uint32_t a, uint32_t b) {
  if (a < 1 || a >= b || b > 8) throw std::invalid_argument("lambda_ab: need 1 <= a < b <= 8");
  if (sym.rank() < 6) throw std::invalid_argument("lambda_ab: needs rank >= 6");
  SparseTensor base = wedge(sym.rank(), Letters{1, 2, 3, 4, 5, 6});
  SparseTensor out(sym.rank(), 8);
  Letters word(8);
  for (const auto& [w, c] : base.terms()) {
    Letters ls = base.shape().unpack(w);
    uint32_t src = 0;
    for (uint32_t pos = 1; pos <= 8; ++pos) {
      if (pos == a || pos == b)
        word[pos - 1] = 1;
      else
        word[pos - 1] = ls[src++];
    }
    out.add_term(word, c);
  }
  return out;
}

std::vector<RaisingOperator> gl_raising_operators(uint32_t n) {
  std::vector<RaisingOperator> ops;
  for (uint32_t i = 1; i < n; ++i) {
    RaisingOperator op;
    op.name = "E_" + std::to_string(i) + std::to_string(i + 1);
    op.moves.push_back({static_cast<uint8_t>(i + 1), static_cast<uint8_t>(i), +1});
    ops.push_back(std::move(op));
  }
  return ops;
}

std::vector<RaisingOperator> sp_raising_operators(const SymplecticContext& sym) {
  uint32_t g = sym.genus;
  std::vector<RaisingOperator> ops;
  for (uint32_t i = 1; i < g; ++i) {
    RaisingOperator op;
    op.name = "X_" + std::to_string(i);
    op.moves.push_back({static_cast<uint8_t>(i + 1), static_cast<uint8_t>(i), +1});
    op.moves.push_back({static_cast<uint8_t>(sym.partner(i)),
                        static_cast<uint8_t>(sym.partner(i + 1)), -1});
    ops.push_back(std::move(op));
  }
  RaisingOperator top;
  top.name = "X_" + std::to_string(g);
  top.moves.push_back({static_cast<uint8_t>(sym.partner(g)), static_cast<uint8_t>(g), +1});
  ops.push_back(std::move(top));
  return ops;
}

namespace {

void raising_term(const RaisingOperator& op, const WordShape& shape, PackedWord w,
                  const Scalar& c, TermMap& out) {
  for (uint32_t pos = 1; pos <= shape.degree; ++pos) {
    uint8_t v = shape.letter(w, pos);
    for (const auto& mv : op.moves) {
      if (mv.from != v) continue;
      accumulate_term(out, shape.with_letter(w, pos, mv.to), mv.sign > 0 ? c : -c);
    }
  }
}

}  // namespace

SparseTensor apply_raising_serial(const RaisingOperator& op, const SparseTensor& t) {
  const WordShape& shape = t.shape();
  TermMap out = serial_map_accumulate(t.terms(), [&](PackedWord w, const Scalar& c, TermMap& m) {
    raising_term(op, shape, w, c, m);
  });
  return SparseTensor(shape, std::move(out));
}

SparseTensor apply_raising(const RaisingOperator& op, const SparseTensor& t) {
  const WordShape& shape = t.shape();
  TermMap out = parallel_map_accumulate(t.terms(), [&](PackedWord w, const Scalar& c, TermMap& m) {
    raising_term(op, shape, w, c, m);
  });
  return SparseTensor(shape, std::move(out));
}

// ---------------------------------------------------------------------------
// Highest-weight-vector multiplicities.

namespace {

constexpr uint64_t kMaxEnumeratedWords = 20'000'000;

std::vector<RaisingOperator> operators_for(WeightContext ctx, uint32_t n, uint32_t genus) {
  if (ctx == WeightContext::GL) return gl_raising_operators(n);
  return sp_raising_operators(SymplecticContext(genus));
}

// Letters of the GL content of lambda: letter i repeated lambda_i times.
Letters content_letters(const Partition& lambda) {
  Letters ls;
  for (uint32_t i = 0; i < lambda.length(); ++i)
    for (uint32_t r = 0; r < lambda.parts[i]; ++r) ls.push_back(static_cast<uint8_t>(i + 1));
  std::sort(ls.begin(), ls.end());
  return ls;
}

WeightVector target_weight(const Partition& lambda, WeightContext ctx, uint32_t n,
                           uint32_t genus) {
  WeightVector wt(ctx == WeightContext::GL ? n : genus, 0);
  for (uint32_t i = 0; i < lambda.length(); ++i) wt[i] = static_cast<int32_t>(lambda.parts[i]);
  return wt;
}

// Row key combining a stacked-operator index with a packed word.
uint64_t stacked_key(uint32_t op, PackedWord w, uint32_t used_bits) {
  if (used_bits > 56) throw std::invalid_argument("hwv: word too wide for stacking");
  return (static_cast<uint64_t>(op + 1) << 56) | w;
}

// All weight-lambda canonical cyclic words of degree k. For GL this walks the
// distinct arrangements of the content multiset; for Sp it filters the full
// word space (small cases only).
std::vector<PackedWord> cyclic_weight_basis(uint32_t n, uint32_t k, const Partition& lambda,
                                            WeightContext ctx, uint32_t genus) {
  WordShape shape(n, k);
  std::vector<PackedWord> basis;
  absl::flat_hash_map<PackedWord, bool> seen;
  if (ctx == WeightContext::GL) {
    if (lambda.size() != k || lambda.length() > n) return {};
    Letters ls = content_letters(lambda);
    do {
      PackedWord c = shape.canonical_rotation(shape.pack(ls));
      if (!seen.emplace(c, true).second) continue;
      basis.push_back(c);
    } while (std::next_permutation(ls.begin(), ls.end()));
  } else {
    WeightVector target = target_weight(lambda, ctx, n, genus);
    uint64_t total = 1;
    for (uint32_t t = 0; t < k; ++t) {
      total *= n;
      if (total > kMaxEnumeratedWords)
        throw std::invalid_argument("hwv (Sp): weight space too large to enumerate");
    }
    Letters ls(k, 1);
    for (uint64_t code = 0; code < total; ++code) {
      uint64_t c = code;
      for (uint32_t t = 0; t < k; ++t) {
        ls[t] = static_cast<uint8_t>(1 + c % n);
        c /= n;
      }
      PackedWord w = shape.pack(ls);
      if (word_weight(shape, w, ctx, genus) != target) continue;
      PackedWord canon = shape.canonical_rotation(w);
      if (!seen.emplace(canon, true).second) continue;
      basis.push_back(canon);
    }
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

}  // namespace

uint64_t hwv_multiplicity_cyclic(uint32_t n, uint32_t k, const Partition& lambda,
                                 WeightContext ctx, uint32_t genus) {
  if (k < 1) throw std::invalid_argument("hwv: k must be >= 1");
  std::vector<PackedWord> basis = cyclic_weight_basis(n, k, lambda, ctx, genus);
  if (basis.empty()) return 0;
  WordShape shape(n, k);
  std::vector<RaisingOperator> ops = operators_for(ctx, n, genus);

  SparseIntegerMatrix M;
  RowIndexer rows;
  for (PackedWord b : basis) {
    M.start_column();
    // pi . X on the class representative; accumulate per (op, target class).
    for (uint32_t o = 0; o < ops.size(); ++o) {
      TermMap img;
      raising_term(ops[o], shape, b, Scalar(1), img);
      CyclicTensor proj(n, k);
      for (const auto& [w, c] : img) proj.add_word(w, c);
      for (const auto& [w, c] : proj.sorted_terms())
        M.add_entry(rows.id(stacked_key(o, w, shape.bits * k)), scalar_to_mpz(c));
    }
  }
  M.rows = rows.size();
  return basis.size() - checked_rank(M);
}

uint64_t hwv_multiplicity_bicyclic(uint32_t n, uint32_t p, uint32_t q, const Partition& lambda,
                                   WeightContext ctx, uint32_t genus) {
  if (p < 1 || q < 1) throw std::invalid_argument("hwv bicyclic: need p,q >= 1");
  WordShape pshape(n, p), qshape(n, q);
  BiCyclicTensor proto(n, p, q);

  // Enumerate canonical pairs of the joint weight.
  WeightVector target = target_weight(lambda, ctx, n, genus);
  uint64_t totp = 1, totq = 1;
  for (uint32_t t = 0; t < p; ++t) totp *= n;
  for (uint32_t t = 0; t < q; ++t) totq *= n;
  if (totp * totq > kMaxEnumeratedWords)
    throw std::invalid_argument("hwv bicyclic: weight space too large to enumerate");

  auto decode = [&](uint64_t code, uint32_t len, const WordShape& shape) {
    Letters ls(len);
    for (uint32_t t = 0; t < len; ++t) {
      ls[t] = static_cast<uint8_t>(1 + code % n);
      code /= n;
    }
    return shape.pack(ls);
  };

  std::vector<std::pair<PackedWord, PackedWord>> basis;
  absl::flat_hash_map<uint64_t, bool> seen;
  for (uint64_t cp = 0; cp < totp; ++cp) {
    PackedWord wl = pshape.canonical_rotation(decode(cp, p, pshape));
    WeightVector wtl = word_weight(pshape, wl, ctx, genus);
    for (uint64_t cq = 0; cq < totq; ++cq) {
      PackedWord wr = qshape.canonical_rotation(decode(cq, q, qshape));
      WeightVector wtr = word_weight(qshape, wr, ctx, genus);
      bool match = true;
      for (size_t t = 0; t < target.size(); ++t)
        if (wtl[t] + wtr[t] != target[t]) {
          match = false;
          break;
        }
      if (!match) continue;
      uint64_t key = proto.key(wl, wr);
      if (!seen.emplace(key, true).second) continue;
      basis.emplace_back(wl, wr);
    }
  }
  if (basis.empty()) return 0;
  std::sort(basis.begin(), basis.end());

  std::vector<RaisingOperator> ops = operators_for(ctx, n, genus);
  SparseIntegerMatrix M;
  RowIndexer rows;
  uint32_t key_bits = pshape.bits * (p + q);
  for (const auto& [wl, wr] : basis) {
    M.start_column();
    for (uint32_t o = 0; o < ops.size(); ++o) {
      // Leibniz action on the pair: X(wl) (x) wr + wl (x) X(wr).
      BiCyclicTensor img(n, p, q);
      TermMap lhs;
      raising_term(ops[o], pshape, wl, Scalar(1), lhs);
      for (const auto& [w, c] : lhs) img.add_pair(w, wr, c);
      TermMap rhs;
      raising_term(ops[o], qshape, wr, Scalar(1), rhs);
      for (const auto& [w, c] : rhs) img.add_pair(wl, w, c);
      for (const auto& [kk, c] : img.sorted_terms())
        M.add_entry(rows.id(stacked_key(o, kk, key_bits)), scalar_to_mpz(c));
    }
  }
  M.rows = rows.size();
  return basis.size() - checked_rank(M);
}

uint64_t hwv_multiplicity_span(const std::vector<SparseTensor>& basis, const Partition& lambda,
                               WeightContext ctx, uint32_t genus) {
  if (basis.empty()) return 0;
  uint32_t n = basis.front().rank();
  WeightVector target = target_weight(lambda, ctx, n, genus);

  std::vector<const SparseTensor*> selected;
  for (const auto& t : basis) {
    if (t.is_zero()) continue;
    if (tensor_weight(t, ctx, genus) == target) selected.push_back(&t);
  }
  if (selected.empty()) return 0;
  uint32_t used_bits = selected.front()->shape().bits * selected.front()->degree();

  std::vector<RaisingOperator> ops = operators_for(ctx, n, genus);
  SparseIntegerMatrix stacked, plain;
  RowIndexer srows, prows;
  for (const SparseTensor* t : selected) {
    plain.start_column();
    for (const auto& [w, c] : t->sorted_terms()) plain.add_entry(prows.id(w), scalar_to_mpz(c));
    stacked.start_column();
    for (uint32_t o = 0; o < ops.size(); ++o) {
      SparseTensor img = apply_raising_serial(ops[o], *t);
      for (const auto& [w, c] : img.sorted_terms())
        stacked.add_entry(srows.id(stacked_key(o, w, used_bits)), scalar_to_mpz(c));
    }
  }
  stacked.rows = srows.size();
  plain.rows = prows.size();
  // The basis list may contain dependent tensors; the multiplicity is the
  // nullity of the stacked map on the span, not on the coefficient space.
  return checked_rank(plain) - checked_rank(stacked);
}

}  // namespace jt
