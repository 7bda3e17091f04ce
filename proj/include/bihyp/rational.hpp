#pragma once

#include <gmpxx.h>

#include <string>

#include "bihyp/errors.hpp"

namespace bihyp {

// All depths and lengths are exact rationals. GMP keeps them canonical
// (normalized sign, coprime numerator/denominator).
using Rat = mpq_class;

// "a" or "a/b", matching mpq canonical form.
std::string rat_str(const Rat& q);

// Parses "a" or "a/b" with optional leading '-'. Throws parse_error with an
// offset relative to the start of `text`.
Rat parse_rat(const std::string& text, std::size_t base_pos = 0);

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// GMP classes take long, not long long; funnel conversions through these.
inline mpz_class to_mpz(long long v) { return mpz_class(static_cast<long>(v)); }
inline Rat to_rat(long long v) { return Rat(static_cast<long>(v)); }

// Least common multiple of denominators; 1 when everything is integral.
mpz_class den_lcm(const mpz_class& acc, const Rat& q);

} // namespace bihyp
