#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace advice_kit {

using Integer = mpz_class;
using Rational = mpq_class;

/// 2^e as an exact rational, for any sign of e.
inline Rational pow2(long e) {
  Integer p = 1;
  if (e >= 0) {
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    return Rational(p);
  }
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  return Rational(Integer(1), p);
}

inline Rational ratio(long num, long den) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses `p/q`, `p` or a plain decimal `a.b`.
inline Rational parseRational(std::string_view text) {
  std::string s(text);
  auto first = s.find_first_not_of(" \t");
  auto last = s.find_last_not_of(" \t");
  if (first == std::string::npos) throw std::invalid_argument("empty rational literal");
  s = s.substr(first, last - first + 1);
  auto dot = s.find('.');
  try {
    if (dot != std::string::npos) {
      std::string whole = s.substr(0, dot);
      std::string frac = s.substr(dot + 1);
      bool negative = !whole.empty() && whole[0] == '-';
      if (negative) whole = whole.substr(1);
      if (whole.empty()) whole = "0";
      Integer den = 1;
      for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
      Integer num(whole + frac);
      Rational q(num, den);
      q.canonicalize();
      return negative ? Rational(-q) : q;
    }
    Rational q(s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("malformed rational literal '" + s + "'");
  }
}

inline std::string toString(const Rational& q) { return q.get_str(); }

inline Integer floorOf(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceilOf(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline bool fitsU64(const Integer& z) { return z >= 0 && mpz_sizeinbase(z.get_mpz_t(), 2) <= 64; }

inline std::uint64_t toU64(const Integer& z) {
  if (!fitsU64(z)) throw std::out_of_range("integer does not fit a symbol");
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, z.get_mpz_t());
  return out;
}

inline Integer fromU64(std::uint64_t v) {
  Integer z;
  mpz_import(z.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return z;
}

/// Zigzag map from signed integers onto symbols: 0, -1, 1, -2, 2, ... -> 0, 1, 2, 3, 4, ...
inline std::uint64_t zigzag(const Integer& z) {
  return z >= 0 ? toU64(Integer(2 * z)) : toU64(Integer(-2 * z - 1));
}

inline Integer unzigzag(std::uint64_t s) {
  Integer z = fromU64(s);
  if (s % 2 == 0) return Integer(z / 2);
  return Integer(-(z + 1) / 2);
}

inline double toDouble(const Rational& q) { return q.get_d(); }

}  // namespace advice_kit
