#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace liegraph {

// Exact rational scalar. GMP keeps values in lowest terms with a positive
// denominator, so equality and sign tests are always canonical.
using Rational = mpq_class;

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }

inline std::string scalar_str(const Rational& x) { return x.get_str(); }

// Accepts "p", "-p" or "p/q" with arbitrary-precision integers.
inline Rational rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  mpq_class q;
  if (q.set_str(s, 10) != 0)
    throw std::invalid_argument("bad rational literal: '" + s + "'");
  if (q.get_den() == 0)
    throw std::invalid_argument("zero denominator in rational literal: '" + s + "'");
  q.canonicalize();
  return q;
}

// Accepts rational literals plus decimal/scientific notation ("1.5", "2e-3").
// Decimal text converts exactly, e.g. 1.5 -> 3/2.
inline Rational rat_from_decimal(const std::string& s) {
  std::size_t epos = s.find_first_of("eE");
  std::string mant = epos == std::string::npos ? s : s.substr(0, epos);
  long expo = 0;
  if (epos != std::string::npos) {
    try {
      expo = std::stol(s.substr(epos + 1));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad numeric literal: '" + s + "'");
    }
  }
  std::size_t dot = mant.find('.');
  if (dot != std::string::npos) {
    std::string digits = mant.substr(0, dot) + mant.substr(dot + 1);
    expo -= static_cast<long>(mant.size() - dot - 1);
    mant = digits;
    if (mant.empty() || mant == "-" || mant == "+")
      throw std::invalid_argument("bad numeric literal: '" + s + "'");
  }
  Rational q = rat_from_string(mant);
  if (expo != 0) {
    mpz_class pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(expo < 0 ? -expo : expo));
    if (expo > 0)
      q *= Rational(pow10);
    else
      q /= Rational(pow10);
  }
  return q;
}

inline double to_double(const Rational& x) { return x.get_d(); }

// Prime-field scalar with a runtime modulus p <= 2^61 - 1. A value with
// p == 0 is an integer literal (as produced by K(0), K(1) in generic code)
// and adopts the modulus of the other operand on first combination.
struct Fp {
  long long v = 0;
  std::uint64_t p = 0;

  Fp() = default;
  Fp(long long x) : v(x) {}  // NOLINT: implicit by design, mirrors Rational(long)

  static Fp make(long long x, std::uint64_t mod) {
    if (mod < 2) throw std::invalid_argument("prime-field modulus must be >= 2");
    Fp f;
    f.p = mod;
    long long r = x % static_cast<long long>(mod);
    if (r < 0) r += static_cast<long long>(mod);
    f.v = r;
    return f;
  }

  bool literal() const { return p == 0; }
};

namespace detail {

inline std::uint64_t fp_combine_mod(const Fp& a, const Fp& b) {
  if (a.p != 0 && b.p != 0 && a.p != b.p)
    throw std::invalid_argument("prime-field modulus mismatch");
  return a.p != 0 ? a.p : b.p;
}

inline Fp fp_fix(long long v, std::uint64_t p) {
  if (p == 0) {
    Fp f;
    f.v = v;
    return f;
  }
  return Fp::make(v, p);
}

inline std::uint64_t fp_mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % p);
}

}  // namespace detail

inline Fp operator+(const Fp& a, const Fp& b) {
  std::uint64_t p = detail::fp_combine_mod(a, b);
  if (p == 0) return detail::fp_fix(a.v + b.v, 0);
  return Fp::make((Fp::make(a.v, p).v + Fp::make(b.v, p).v) % static_cast<long long>(p), p);
}

inline Fp operator-(const Fp& a) { return detail::fp_fix(-a.v, a.p); }

inline Fp operator-(const Fp& a, const Fp& b) { return a + (-b); }

inline Fp operator*(const Fp& a, const Fp& b) {
  std::uint64_t p = detail::fp_combine_mod(a, b);
  if (p == 0) return detail::fp_fix(a.v * b.v, 0);
  std::uint64_t av = static_cast<std::uint64_t>(Fp::make(a.v, p).v);
  std::uint64_t bv = static_cast<std::uint64_t>(Fp::make(b.v, p).v);
  return Fp::make(static_cast<long long>(detail::fp_mulmod(av, bv, p)), p);
}

inline Fp fp_inverse(const Fp& a) {
  if (a.p == 0) {
    if (a.v == 1 || a.v == -1) return a;
    throw std::invalid_argument("cannot invert an unreduced prime-field literal");
  }
  long long t = 0, newt = 1;
  long long r = static_cast<long long>(a.p), newr = Fp::make(a.v, a.p).v;
  if (newr == 0) throw std::domain_error("division by zero in prime field");
  while (newr != 0) {
    long long q = r / newr;
    long long tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  return Fp::make(t, a.p);
}

inline Fp operator/(const Fp& a, const Fp& b) {
  std::uint64_t p = detail::fp_combine_mod(a, b);
  if (p == 0) {
    if (b.v == 0) throw std::domain_error("division by zero");
    if (a.v % b.v != 0) throw std::invalid_argument("inexact literal division");
    return detail::fp_fix(a.v / b.v, 0);
  }
  Fp bn = Fp::make(b.v, p);
  if (bn.v == 0) throw std::domain_error("division by zero in prime field");
  return detail::fp_fix(a.v, p) * fp_inverse(bn);
}

inline Fp& operator+=(Fp& a, const Fp& b) { return a = a + b; }
inline Fp& operator-=(Fp& a, const Fp& b) { return a = a - b; }
inline Fp& operator*=(Fp& a, const Fp& b) { return a = a * b; }
inline Fp& operator/=(Fp& a, const Fp& b) { return a = a / b; }

inline bool operator==(const Fp& a, const Fp& b) {
  std::uint64_t p = detail::fp_combine_mod(a, b);
  if (p == 0) return a.v == b.v;
  return Fp::make(a.v, p).v == Fp::make(b.v, p).v;
}

inline bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

inline bool is_zero(const Fp& a) {
  if (a.p == 0) return a.v == 0;
  return Fp::make(a.v, a.p).v == 0;
}

inline std::string scalar_str(const Fp& a) {
  return std::to_string(a.p == 0 ? a.v : Fp::make(a.v, a.p).v);
}

inline double to_double(const Fp& a) {
  return static_cast<double>(a.p == 0 ? a.v : Fp::make(a.v, a.p).v);
}

// Field characteristic: 0 for the rationals, p for prime fields.
inline std::uint64_t field_char(const Rational&) { return 0; }
inline std::uint64_t field_char(const Fp& a) { return a.p; }

template <class K>
struct field_is_prime : std::false_type {};
template <>
struct field_is_prime<Fp> : std::true_type {};

// p/q mod p0 via the modular inverse of the denominator.
inline Fp fp_from_rational(const Rational& q, std::uint64_t p) {
  mpz_class num = q.get_num() % static_cast<long>(p);
  mpz_class den = q.get_den() % static_cast<long>(p);
  Fp n = Fp::make(num.get_si(), p);
  Fp d = Fp::make(den.get_si(), p);
  return n / d;
}

template <class K>
K scalar_from_string(const std::string& s);

template <>
inline Rational scalar_from_string<Rational>(const std::string& s) {
  return rat_from_string(s);
}

template <>
inline Fp scalar_from_string<Fp>(const std::string& s) {
  return Fp(std::stoll(s));
}

}  // namespace liegraph
