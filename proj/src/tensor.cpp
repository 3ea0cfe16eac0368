#include "jtrace/tensor.hpp"

#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace jt {

namespace {
void require_same_shape(const SparseTensor& a, const SparseTensor& b) {
  if (a.rank() != b.rank()) throw std::invalid_argument("tensor rank mismatch");
  if (a.degree() != b.degree()) throw std::invalid_argument("tensor degree mismatch");
}
}  // namespace

SparseTensor add(const SparseTensor& a, const SparseTensor& b) {
  require_same_shape(a, b);
  SparseTensor r = a;
  for (const auto& [w, c] : b.terms()) r.add_term(w, c);
  return r;
}

SparseTensor scale(const SparseTensor& t, const Scalar& c) {
  SparseTensor r(t.rank(), t.degree());
  if (c.is_zero()) return r;
  for (const auto& [w, v] : t.terms()) r.mutable_terms().emplace(w, v * c);
  return r;
}

SparseTensor tensor_product(const SparseTensor& a, const SparseTensor& b) {
  if (a.rank() != b.rank()) throw std::invalid_argument("tensor rank mismatch");
  SparseTensor r(a.rank(), a.degree() + b.degree());
  uint32_t bbits = b.shape().bits * b.degree();
  for (const auto& [wa, ca] : a.terms())
    for (const auto& [wb, cb] : b.terms())
      r.add_term((wa << bbits) | wb, ca * cb);
  return r;
}

SparseTensor apply_permutation_right(const SparseTensor& t, const std::vector<uint32_t>& sigma) {
  if (sigma.size() != t.degree())
    throw std::invalid_argument("permutation size does not match degree");
  std::vector<bool> seen(t.degree() + 1, false);
  for (uint32_t v : sigma) {
    if (v < 1 || v > t.degree() || seen[v])
      throw std::invalid_argument("not a permutation of 1..k");
    seen[v] = true;
  }
  SparseTensor r(t.rank(), t.degree());
  for (const auto& [w, c] : t.terms())
    r.add_term(t.shape().permute(w, sigma), c);
  return r;
}

SparseTensor rotate(const SparseTensor& t, uint32_t r) {
  SparseTensor out(t.rank(), t.degree());
  for (const auto& [w, c] : t.terms())
    out.mutable_terms().emplace(t.shape().rotate(w, r), c);
  return out;
}

SparseTensor cyclic_symmetrizer(const SparseTensor& t) {
  if (t.degree() == 0) return t;
  SparseTensor r(t.rank(), t.degree());
  for (uint32_t i = 0; i < t.degree(); ++i)
    for (const auto& [w, c] : t.terms())
      r.add_term(t.shape().rotate(w, i), c);
  return r;
}

bool is_zeta_invariant(const SparseTensor& t) {
  if (t.degree() == 0) return true;
  for (const auto& [w, c] : t.terms()) {
    auto it = t.terms().find(t.shape().rotate(w, 1));
    if (it == t.terms().end() || !(it->second == c)) return false;
  }
  return true;
}

std::string serialize_tensor(const SparseTensor& t) {
  std::ostringstream os;
  write_tensor(os, t);
  return os.str();
}

void write_tensor(std::ostream& os, const SparseTensor& t) {
  nlohmann::json header = {{"rank", t.rank()}, {"degree", t.degree()}};
  os << header.dump() << '\n';
  for (const auto& [w, c] : t.sorted_terms()) {
    nlohmann::json line = {{"coeff", c.str()}, {"word", t.shape().unpack(w)}};
    os << line.dump() << '\n';
  }
}

SparseTensor parse_tensor(const std::string& text) {
  std::istringstream is(text);
  return read_tensor(is);
}

SparseTensor read_tensor(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("tensor stream: missing header");
  nlohmann::json header = nlohmann::json::parse(line);
  SparseTensor t(header.at("rank").get<uint32_t>(), header.at("degree").get<uint32_t>());
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    Letters ls;
    for (const auto& v : j.at("word")) ls.push_back(v.get<uint8_t>());
    t.add_term(ls, Scalar::parse(j.at("coeff").get<std::string>()));
  }
  return t;
}

}  // namespace jt
