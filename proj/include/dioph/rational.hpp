#pragma once

#include <stdexcept>

#include "dioph/bigint.hpp"

namespace dioph {

// Canonical-form rational: reduced, positive denominator. mpq_class
// maintains exactly this invariant once canonicalize() has run; every
// constructor path below runs it.
using Rational = mpq_class;

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  if (sgn(den) == 0) throw std::domain_error("make_rational: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational make_rational(const BigInt& num) { return Rational(num); }

inline const BigInt rational_num(const Rational& r) { return r.get_num(); }
inline const BigInt rational_den(const Rational& r) { return r.get_den(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace dioph
