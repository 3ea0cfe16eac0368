#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmp.h>

namespace jt {

// Exact rational number. Values whose reduced numerator and denominator fit
// in int64 live inline; anything larger is promoted to a heap-allocated GMP
// rational. Invariants: always in lowest terms, denominator >= 1, and a value
// is stored big only when it does not fit inline (so representation is
// canonical and equality never needs cross-form comparison).
class Scalar {
 public:
  Scalar() noexcept : num_(0), den_(1), big_(nullptr) {}
  Scalar(int64_t n) noexcept : num_(n), den_(1), big_(nullptr) {}
  Scalar(int64_t num, int64_t den);

  Scalar(const Scalar& o);
  Scalar(Scalar&& o) noexcept;
  Scalar& operator=(const Scalar& o);
  Scalar& operator=(Scalar&& o) noexcept;
  ~Scalar();

  static Scalar from_mpq(mpq_srcptr q);
  // Parses "p" or "p/q" (arbitrary precision). Throws std::invalid_argument.
  static Scalar parse(const std::string& s);

  bool is_zero() const noexcept { return big_ == nullptr && num_ == 0; }
  bool is_integer() const;
  int sign() const;

  // True when the value fits the inline fast path.
  bool is_small() const noexcept { return big_ == nullptr; }
  int64_t small_num() const { return num_; }
  int64_t small_den() const { return den_; }

  void to_mpq(mpq_ptr out) const;
  std::string str() const;  // "p" or "p/q", lowest terms

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);  // throws on division by zero
  Scalar operator-() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  // Total order by value; used for deterministic output only.
  bool operator<(const Scalar& o) const;

 private:
  void promote_set(mpq_srcptr q);        // become big with value q
  void set_reduced_128(__int128 n, __int128 d);  // d > 0, gcd(n,d)=1
  void demote_if_possible();
  void clear_big() noexcept;

  int64_t num_;
  int64_t den_;   // >= 1 in the inline form
  mpq_ptr big_;   // nullptr <=> inline form
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace jt
