#include "jtrace/scalar.hpp"

#include <cstdlib>
#include <new>
#include <ostream>
#include <stdexcept>

namespace jt {

namespace {

using int128 = __int128;
using uint128 = unsigned __int128;

uint128 abs128(int128 v) { return v < 0 ? -static_cast<uint128>(v) : static_cast<uint128>(v); }

uint128 gcd128(uint128 a, uint128 b) {
  while (b != 0) {
    uint128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

constexpr int64_t kInt64Max = INT64_MAX;

mpq_ptr alloc_mpq() {
  auto* p = static_cast<mpq_ptr>(::operator new(sizeof(__mpq_struct)));
  mpq_init(p);
  return p;
}

void free_mpq(mpq_ptr p) noexcept {
  mpq_clear(p);
  ::operator delete(p);
}

void mpz_set_int128(mpz_ptr z, int128 v) {
  uint128 a = abs128(v);
  mpz_set_ui(z, static_cast<uint64_t>(a >> 64));
  mpz_mul_2exp(z, z, 64);
  mpz_add_ui(z, z, static_cast<uint64_t>(a));
  if (v < 0) mpz_neg(z, z);
}

}  // namespace

Scalar::Scalar(int64_t num, int64_t den) : num_(0), den_(1), big_(nullptr) {
  if (den == 0) throw std::invalid_argument("Scalar: zero denominator");
  set_reduced_128(num, den);  // set_reduced_128 handles sign and reduction
}

Scalar::Scalar(const Scalar& o) : num_(o.num_), den_(o.den_), big_(nullptr) {
  if (o.big_) {
    big_ = alloc_mpq();
    mpq_set(big_, o.big_);
  }
}

Scalar::Scalar(Scalar&& o) noexcept : num_(o.num_), den_(o.den_), big_(o.big_) {
  o.num_ = 0;
  o.den_ = 1;
  o.big_ = nullptr;
}

Scalar& Scalar::operator=(const Scalar& o) {
  if (this == &o) return *this;
  if (o.big_) {
    if (!big_) big_ = alloc_mpq();
    mpq_set(big_, o.big_);
  } else {
    clear_big();
  }
  num_ = o.num_;
  den_ = o.den_;
  return *this;
}

Scalar& Scalar::operator=(Scalar&& o) noexcept {
  if (this == &o) return *this;
  clear_big();
  num_ = o.num_;
  den_ = o.den_;
  big_ = o.big_;
  o.num_ = 0;
  o.den_ = 1;
  o.big_ = nullptr;
  return *this;
}

Scalar::~Scalar() { clear_big(); }

void Scalar::clear_big() noexcept {
  if (big_) {
    free_mpq(big_);
    big_ = nullptr;
  }
}

void Scalar::set_reduced_128(int128 n, int128 d) {
  if (d < 0) {
    n = -n;
    d = -d;
  }
  if (n == 0) {
    clear_big();
    num_ = 0;
    den_ = 1;
    return;
  }
  uint128 g = gcd128(abs128(n), static_cast<uint128>(d));
  uint128 an = abs128(n) / g;
  uint128 ad = static_cast<uint128>(d) / g;
  if (an <= static_cast<uint128>(kInt64Max) && ad <= static_cast<uint128>(kInt64Max)) {
    clear_big();
    num_ = n < 0 ? -static_cast<int64_t>(an) : static_cast<int64_t>(an);
    den_ = static_cast<int64_t>(ad);
    return;
  }
  // Too wide for the inline form: build the GMP value.
  if (!big_) big_ = alloc_mpq();
  mpz_set_int128(mpq_numref(big_), n < 0 ? -static_cast<int128>(an) : static_cast<int128>(an));
  mpz_set_int128(mpq_denref(big_), static_cast<int128>(ad));
  num_ = 0;
  den_ = 0;
}

void Scalar::promote_set(mpq_srcptr q) {
  if (!big_) big_ = alloc_mpq();
  mpq_set(big_, q);
  mpq_canonicalize(big_);
  num_ = 0;
  den_ = 0;
  demote_if_possible();
}

void Scalar::demote_if_possible() {
  if (!big_) return;
  if (mpz_fits_slong_p(mpq_numref(big_)) && mpz_fits_slong_p(mpq_denref(big_))) {
    int64_t n = mpz_get_si(mpq_numref(big_));
    int64_t d = mpz_get_si(mpq_denref(big_));
    clear_big();
    num_ = n;
    den_ = d;
  }
}

Scalar Scalar::from_mpq(mpq_srcptr q) {
  Scalar s;
  s.promote_set(q);
  return s;
}

Scalar Scalar::parse(const std::string& s) {
  mpq_t q;
  mpq_init(q);
  if (s.empty() || mpq_set_str(q, s.c_str(), 10) != 0) {
    mpq_clear(q);
    throw std::invalid_argument("Scalar: cannot parse '" + s + "'");
  }
  if (mpz_sgn(mpq_denref(q)) == 0) {
    mpq_clear(q);
    throw std::invalid_argument("Scalar: zero denominator in '" + s + "'");
  }
  mpq_canonicalize(q);
  Scalar r = from_mpq(q);
  mpq_clear(q);
  return r;
}

bool Scalar::is_integer() const {
  if (big_) return mpz_cmp_ui(mpq_denref(big_), 1) == 0;
  return den_ == 1;
}

int Scalar::sign() const {
  if (big_) return mpq_sgn(big_);
  return num_ > 0 ? 1 : (num_ < 0 ? -1 : 0);
}

void Scalar::to_mpq(mpq_ptr out) const {
  if (big_) {
    mpq_set(out, big_);
  } else {
    mpq_set_si(out, num_, 1);
    mpz_set_si(mpq_denref(out), den_);
    mpq_canonicalize(out);
  }
}

std::string Scalar::str() const {
  if (!big_) {
    std::string r = std::to_string(num_);
    if (den_ != 1) r += "/" + std::to_string(den_);
    return r;
  }
  char* c = mpq_get_str(nullptr, 10, big_);
  std::string r(c);
  std::free(c);
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (!big_ && !o.big_) {
    int128 n = static_cast<int128>(num_) * o.den_ + static_cast<int128>(o.num_) * den_;
    int128 d = static_cast<int128>(den_) * o.den_;
    set_reduced_128(n, d);
    return *this;
  }
  mpq_t a, b;
  mpq_init(a);
  mpq_init(b);
  to_mpq(a);
  o.to_mpq(b);
  mpq_add(a, a, b);
  promote_set(a);
  mpq_clear(a);
  mpq_clear(b);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (!big_ && !o.big_) {
    int128 n = static_cast<int128>(num_) * o.den_ - static_cast<int128>(o.num_) * den_;
    int128 d = static_cast<int128>(den_) * o.den_;
    set_reduced_128(n, d);
    return *this;
  }
  mpq_t a, b;
  mpq_init(a);
  mpq_init(b);
  to_mpq(a);
  o.to_mpq(b);
  mpq_sub(a, a, b);
  promote_set(a);
  mpq_clear(a);
  mpq_clear(b);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (!big_ && !o.big_) {
    int128 n = static_cast<int128>(num_) * o.num_;
    int128 d = static_cast<int128>(den_) * o.den_;
    set_reduced_128(n, d);
    return *this;
  }
  mpq_t a, b;
  mpq_init(a);
  mpq_init(b);
  to_mpq(a);
  o.to_mpq(b);
  mpq_mul(a, a, b);
  promote_set(a);
  mpq_clear(a);
  mpq_clear(b);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw std::invalid_argument("Scalar: division by zero");
  if (!big_ && !o.big_) {
    int128 n = static_cast<int128>(num_) * o.den_;
    int128 d = static_cast<int128>(den_) * o.num_;
    set_reduced_128(n, d);
    return *this;
  }
  mpq_t a, b;
  mpq_init(a);
  mpq_init(b);
  to_mpq(a);
  o.to_mpq(b);
  mpq_div(a, a, b);
  promote_set(a);
  mpq_clear(a);
  mpq_clear(b);
  return *this;
}

Scalar Scalar::operator-() const {
  Scalar r(*this);
  if (r.big_) {
    mpq_neg(r.big_, r.big_);
  } else {
    r.num_ = -r.num_;
  }
  return r;
}

bool Scalar::operator==(const Scalar& o) const {
  if (!big_ && !o.big_) return num_ == o.num_ && den_ == o.den_;
  if (big_ && o.big_) return mpq_equal(big_, o.big_) != 0;
  return false;  // canonical: a big value never fits inline
}

bool Scalar::operator<(const Scalar& o) const {
  if (!big_ && !o.big_) {
    return static_cast<int128>(num_) * o.den_ < static_cast<int128>(o.num_) * den_;
  }
  mpq_t a, b;
  mpq_init(a);
  mpq_init(b);
  to_mpq(a);
  o.to_mpq(b);
  bool r = mpq_cmp(a, b) < 0;
  mpq_clear(a);
  mpq_clear(b);
  return r;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace jt
