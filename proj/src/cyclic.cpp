#include "jtrace/cyclic.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace jt {

Letters canonical_rotation_letters(const Letters& w) {
  size_t off = booth_least_rotation(w);
  Letters out(w.size());
  for (size_t j = 0; j < w.size(); ++j) out[j] = w[(off + j) % w.size()];
  return out;
}

namespace {

uint64_t checked_pow(uint64_t base, uint32_t e) {
  unsigned __int128 r = 1;
  for (uint32_t i = 0; i < e; ++i) {
    r *= base;
    if (r > UINT64_MAX) throw std::overflow_error("dimension overflow");
  }
  return static_cast<uint64_t>(r);
}

uint32_t euler_phi(uint32_t d) {
  uint32_t result = d;
  for (uint32_t p = 2; p * p <= d; ++p) {
    if (d % p == 0) {
      while (d % p == 0) d /= p;
      result -= result / p;
    }
  }
  if (d > 1) result -= result / d;
  return result;
}

int moebius(uint32_t d) {
  int mu = 1;
  for (uint32_t p = 2; p * p <= d; ++p) {
    if (d % p == 0) {
      d /= p;
      if (d % p == 0) return 0;
      mu = -mu;
    }
  }
  if (d > 1) mu = -mu;
  return mu;
}

}  // namespace

uint64_t cyclic_dimension(uint32_t n, uint32_t k) {
  if (n < 1 || k < 1) throw std::invalid_argument("cyclic_dimension: need n,k >= 1");
  unsigned __int128 total = 0;
  for (uint32_t d = 1; d <= k; ++d)
    if (k % d == 0) total += static_cast<unsigned __int128>(euler_phi(d)) * checked_pow(n, k / d);
  return static_cast<uint64_t>(total / k);
}

uint64_t lie_dimension(uint32_t n, uint32_t k) {
  if (n < 1 || k < 1) throw std::invalid_argument("lie_dimension: need n,k >= 1");
  __int128 total = 0;
  for (uint32_t d = 1; d <= k; ++d)
    if (k % d == 0) total += static_cast<__int128>(moebius(d)) * checked_pow(n, k / d);
  return static_cast<uint64_t>(total / k);
}

CyclicTensor pi_k(const SparseTensor& t) {
  CyclicTensor r(t.rank(), t.degree());
  for (const auto& [w, c] : t.terms()) r.add_word(w, c);
  return r;
}

BiCyclicTensor varpi_ell(const SparseTensor& t, uint32_t ell) {
  uint32_t k = t.degree();
  if (ell < 1 || ell > k + 1) throw std::invalid_argument("varpi_ell: ell out of range");
  uint32_t p = ell - 1, q = k - ell + 1;
  BiCyclicTensor r(t.rank(), p, q);
  uint32_t rshift = t.shape().bits * q;
  if (rshift >= 64) {
    for (const auto& [w, c] : t.terms()) r.add_pair(0, w, c);
    return r;
  }
  PackedWord rmask = (PackedWord(1) << rshift) - 1;
  for (const auto& [w, c] : t.terms()) r.add_pair(w >> rshift, w & rmask, c);
  return r;
}

void SymmetricTensor::add_word(PackedWord w, const Scalar& c) {
  Letters ls = shape_.unpack(w);
  std::sort(ls.begin(), ls.end());
  accumulate_term(terms_, shape_.pack(ls), c);
}

SymmetricTensor symmetric_project(const CyclicTensor& t) {
  SymmetricTensor r(t.rank(), t.degree());
  for (const auto& [w, c] : t.terms()) r.add_word(w, c);
  return r;
}

void write_bicyclic(std::ostream& os, const BiCyclicTensor& t) {
  nlohmann::json header = {{"rank", t.rank()},
                           {"left_degree", t.left_degree()},
                           {"right_degree", t.right_degree()}};
  os << header.dump() << '\n';
  for (const auto& [k, c] : t.sorted_terms()) {
    auto [l, r] = t.split_key(k);
    nlohmann::json line = {{"coeff", c.str()},
                           {"left", t.left_shape().unpack(l)},
                           {"right", t.right_shape().unpack(r)}};
    os << line.dump() << '\n';
  }
}

std::string serialize_bicyclic(const BiCyclicTensor& t) {
  std::ostringstream os;
  write_bicyclic(os, t);
  return os.str();
}

BiCyclicTensor read_bicyclic(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("bicyclic stream: missing header");
  nlohmann::json header = nlohmann::json::parse(line);
  BiCyclicTensor t(header.at("rank").get<uint32_t>(),
                   header.at("left_degree").get<uint32_t>(),
                   header.at("right_degree").get<uint32_t>());
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    Letters l, r;
    for (const auto& v : j.at("left")) l.push_back(v.get<uint8_t>());
    for (const auto& v : j.at("right")) r.push_back(v.get<uint8_t>());
    t.add_pair(t.left_shape().pack(l), t.right_shape().pack(r),
               Scalar::parse(j.at("coeff").get<std::string>()));
  }
  return t;
}

}  // namespace jt
