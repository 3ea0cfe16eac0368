#include "jtrace/free_lie.hpp"

#include <stdexcept>

#include <nlohmann/json.hpp>

#include "jtrace/parallel.hpp"

namespace jt {

SimpleCommutator::SimpleCommutator(uint32_t n, Letters ix) : rank(n), indices(std::move(ix)) {
  if (indices.empty()) throw std::invalid_argument("commutator needs k >= 1");
  for (uint8_t v : indices)
    if (v < 1 || v > rank) throw std::invalid_argument("commutator index out of range");
}

namespace {

// Expands [e_{w_1},...,e_{w_m}] into low-aligned packed words of degree m,
// emitting (word, sign) pairs through `emit`. 2^{m-1} terms.
template <class Emit>
void expand_left_normed(const Letters& ix, uint32_t bits, Emit&& emit) {
  uint32_t m = static_cast<uint32_t>(ix.size());
  // (packed word, sign), degree grows from 1 to m
  std::vector<std::pair<PackedWord, int8_t>> cur, next;
  cur.push_back({ix[0], +1});
  for (uint32_t j = 1; j < m; ++j) {
    next.clear();
    next.reserve(cur.size() * 2);
    PackedWord a = ix[j];
    uint32_t head_shift = bits * j;  // letters so far
    for (auto [w, s] : cur) {
      next.push_back({(w << bits) | a, s});          // prev (x) e_a
      next.push_back({(a << head_shift) | w, int8_t(-s)});  // - e_a (x) prev
    }
    cur.swap(next);
  }
  for (auto [w, s] : cur) emit(w, s);
}

}  // namespace

SparseTensor expand_commutator(uint32_t rank, const Letters& indices) {
  return expand_commutator(SimpleCommutator(rank, indices));
}

SparseTensor expand_commutator(const SimpleCommutator& c) {
  SparseTensor t(c.rank, static_cast<uint32_t>(c.indices.size()));
  expand_left_normed(c.indices, t.shape().bits, [&](PackedWord w, int sign) {
    t.add_term(w, Scalar(sign));
  });
  return t;
}

SparseTensor expand_simple_subset_formula(uint32_t rank, uint8_t y, const Letters& tail) {
  uint32_t k = static_cast<uint32_t>(tail.size());
  SparseTensor t(rank, k + 1);
  Letters word(k + 1);
  for (uint32_t mask = 0; mask < (1u << k); ++mask) {
    uint32_t pos = 0;
    // e_{<-S}: members of S in reverse order
    for (int j = static_cast<int>(k) - 1; j >= 0; --j)
      if (mask & (1u << j)) word[pos++] = tail[j];
    int size_s = static_cast<int>(pos);
    word[pos++] = y;
    // e_{->S^c}: complement in order
    for (uint32_t j = 0; j < k; ++j)
      if (!(mask & (1u << j))) word[pos++] = tail[j];
    t.add_term(word, Scalar(size_s % 2 == 0 ? +1 : -1));
  }
  return t;
}

namespace {

void dynkin_term(const WordShape& shape, PackedWord w, const Scalar& c, TermMap& out) {
  Letters ls = shape.unpack(w);
  expand_left_normed(ls, shape.bits, [&](PackedWord v, int sign) {
    accumulate_term(out, v, sign > 0 ? c : -c);
  });
}

}  // namespace

SparseTensor dynkin_map_serial(const SparseTensor& t) {
  if (t.degree() < 1) throw std::invalid_argument("dynkin_map: degree must be >= 1");
  const WordShape& shape = t.shape();
  TermMap out = serial_map_accumulate(t.terms(), [&](PackedWord w, const Scalar& c, TermMap& m) {
    dynkin_term(shape, w, c, m);
  });
  return SparseTensor(shape, std::move(out));
}

SparseTensor dynkin_map(const SparseTensor& t) {
  if (t.degree() < 1) throw std::invalid_argument("dynkin_map: degree must be >= 1");
  const WordShape& shape = t.shape();
  TermMap out = parallel_map_accumulate(t.terms(), [&](PackedWord w, const Scalar& c, TermMap& m) {
    dynkin_term(shape, w, c, m);
  });
  return SparseTensor(shape, std::move(out));
}

bool is_lie_element(const SparseTensor& t) {
  if (t.degree() < 1) throw std::invalid_argument("is_lie_element: degree must be >= 1");
  if (t.is_zero()) return true;
  return dynkin_map(t) == scale(t, Scalar(static_cast<int64_t>(t.degree())));
}

bool tail_is_lie(const SparseTensor& t) {
  if (t.degree() < 2) throw std::invalid_argument("tail_is_lie: degree must be >= 2");
  if (t.is_zero()) return true;
  // Slice by the first letter; each slice must be a Lie element of degree m-1.
  uint32_t bits = t.shape().bits;
  uint32_t tail_bits = bits * (t.degree() - 1);
  PackedWord tail_mask = tail_bits >= 64 ? ~PackedWord(0) : (PackedWord(1) << tail_bits) - 1;
  std::vector<SparseTensor> slices(t.rank() + 1, SparseTensor(t.rank(), t.degree() - 1));
  for (const auto& [w, c] : t.terms())
    slices[w >> tail_bits].mutable_terms().emplace(w & tail_mask, c);
  for (uint32_t x = 1; x <= t.rank(); ++x)
    if (!is_lie_element(slices[x])) return false;
  return true;
}

SparseTensor bracket_map(const SparseTensor& t) {
  if (!tail_is_lie(t)) throw std::invalid_argument("bracket_map: tail is not a Lie element");
  SparseTensor rotated = rotate(t, 1);
  SparseTensor out(t.rank(), t.degree());
  for (const auto& [w, c] : t.terms()) out.add_term(w, c);
  for (const auto& [w, c] : rotated.terms()) out.add_term(w, -c);
  return out;
}

bool is_h_element(const SparseTensor& t) {
  if (t.is_zero()) return true;
  return is_zeta_invariant(t) && tail_is_lie(t);
}

std::string serialize_commutator(const SimpleCommutator& c) {
  nlohmann::json j = {{"rank", c.rank}, {"commutator", c.indices}};
  return j.dump();
}

SimpleCommutator parse_commutator(const std::string& line) {
  nlohmann::json j = nlohmann::json::parse(line);
  Letters ix;
  for (const auto& v : j.at("commutator")) ix.push_back(v.get<uint8_t>());
  return SimpleCommutator(j.at("rank").get<uint32_t>(), std::move(ix));
}

}  // namespace jt
