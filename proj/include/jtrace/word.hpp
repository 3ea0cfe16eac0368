#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace jt {

// Letters are indices in {1..n}. A degree-k word is packed into a uint64 with
// position 1 in the most significant used bits, so that unsigned comparison of
// packed words of equal shape is lexicographic order on letter sequences.
using PackedWord = uint64_t;
using Letters = std::vector<uint8_t>;

// Bit width per letter for ambient rank n.
inline uint32_t letter_bits(uint32_t rank) {
  if (rank < 1) throw std::invalid_argument("rank must be >= 1");
  return std::bit_width(rank);
}

// Shape of the packed representation: (rank, degree) fixes everything.
struct WordShape {
  uint32_t rank = 0;
  uint32_t degree = 0;
  uint32_t bits = 0;

  WordShape() = default;
  WordShape(uint32_t n, uint32_t k) : rank(n), degree(k), bits(letter_bits(n)) {
    if (static_cast<uint64_t>(bits) * k > 64)
      throw std::invalid_argument("word does not fit in 64 bits");
  }

  uint64_t letter_mask() const { return (uint64_t(1) << bits) - 1; }
  // Shift of position j (1-based).
  uint32_t shift(uint32_t j) const { return bits * (degree - j); }

  uint8_t letter(PackedWord w, uint32_t j) const {
    return static_cast<uint8_t>((w >> shift(j)) & letter_mask());
  }
  PackedWord with_letter(PackedWord w, uint32_t j, uint8_t v) const {
    uint32_t s = shift(j);
    return (w & ~(letter_mask() << s)) | (static_cast<uint64_t>(v) << s);
  }

  PackedWord pack(const Letters& ls) const {
    if (ls.size() != degree) throw std::invalid_argument("pack: wrong length");
    PackedWord w = 0;
    for (uint8_t v : ls) {
      if (v < 1 || v > rank) throw std::invalid_argument("pack: letter out of range");
      w = (w << bits) | v;
    }
    return w;
  }

  Letters unpack(PackedWord w) const {
    Letters ls(degree);
    for (uint32_t j = 1; j <= degree; ++j) ls[j - 1] = letter(w, j);
    return ls;
  }

  // Left rotation by r: (w_{r+1},...,w_k,w_1,...,w_r).
  PackedWord rotate(PackedWord w, uint32_t r) const {
    if (degree == 0) return 0;
    r %= degree;
    if (r == 0) return w;
    uint32_t hi = bits * r;            // bits rotated out of the front
    uint32_t lo = bits * (degree - r); // bits that stay
    uint64_t mask = (lo + hi >= 64) ? ~uint64_t(0) >> (64 - lo - hi)
                                    : (uint64_t(1) << (lo + hi)) - 1;
    return ((w << hi) & mask) | (w >> lo);
  }

  // Lexicographically least rotation, by direct scan over all rotations.
  PackedWord canonical_rotation(PackedWord w) const {
    PackedWord best = w;
    for (uint32_t r = 1; r < degree; ++r) {
      PackedWord c = rotate(w, r);
      if (c < best) best = c;
    }
    return best;
  }

  // Word with the letters of w at positions sigma(1..k): out_j = w_{sigma(j)}.
  PackedWord permute(PackedWord w, const std::vector<uint32_t>& sigma) const {
    PackedWord out = 0;
    for (uint32_t j = 1; j <= degree; ++j)
      out = (out << bits) | letter(w, sigma[j - 1]);
    return out;
  }

  friend bool operator==(const WordShape&, const WordShape&) = default;
};

// Booth's least-rotation algorithm on an unpacked letter sequence, O(k).
// Returns the starting offset of the least rotation.
inline size_t booth_least_rotation(const Letters& s) {
  size_t n = s.size();
  if (n == 0) return 0;
  std::vector<int64_t> f(2 * n, -1);
  size_t k = 0;
  for (size_t j = 1; j < 2 * n; ++j) {
    uint8_t sj = s[j % n];
    int64_t i = f[j - k - 1];
    while (i != -1 && sj != s[(k + i + 1) % n]) {
      if (sj < s[(k + i + 1) % n]) k = j - i - 1;
      i = f[i];
    }
    if (i == -1 && sj != s[(k + i + 1) % n]) {
      if (sj < s[(k + i + 1) % n]) k = j;
      f[j - k] = -1;
    } else {
      f[j - k] = i + 1;
    }
  }
  return k;
}

}  // namespace jt
