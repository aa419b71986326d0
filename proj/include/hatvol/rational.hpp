// Exact rational scalars and small vector helpers shared by every module.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hatvol {

/// Arbitrary-precision rational, always canonical (lowest terms, den > 0).
using Rational = mpq_class;
using Integer = mpz_class;

/// A point or covector with rational coordinates.
using Vec = std::vector<Rational>;

/// Integer vector used for exponents, rays and facet normals. Entries are
/// small at desk scale; overflow is checked where products are formed.
using IntVec = std::vector<std::int64_t>;

/// Canonical num/den (mpq_class's two-argument constructor does not reduce).
Rational frac(long num, long den);

/// "p/q", or "p" when q == 1.
std::string to_string(const Rational& q);

/// Parses "p", "p/q", "-p/q" or a plain decimal like "0.25". Throws
/// Error(invalid-input) on malformed text or a zero denominator.
Rational parse_rational(std::string_view text);

Rational floor(const Rational& q);
Rational ceil(const Rational& q);
Rational abs(const Rational& q);
Rational pow(const Rational& q, unsigned e);
Integer factorial(unsigned n);
double to_double(const Rational& q);

/// Nearest rational with denominator exactly `den` (ties rounded up).
Rational round_to_denominator(double x, long den);

bool fits_int64(const Integer& z);
std::int64_t to_int64(const Integer& z);

Vec to_vec(const IntVec& v);
Rational dot(const Vec& a, const Vec& b);
Rational dot(const IntVec& a, const Vec& b);

/// Scales a nonzero rational vector to the primitive integer vector on the
/// same ray (positive multiple). Throws on the zero vector.
IntVec primitive_direction(const Vec& v);
IntVec primitive_direction(const IntVec& v);

/// True when v has integer entries with gcd 1.
bool is_primitive(const IntVec& v);

std::string to_string(const Vec& v);

}  // namespace hatvol
