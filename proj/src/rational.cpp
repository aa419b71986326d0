#include "hatvol/rational.hpp"

#include <cmath>
#include <numeric>

#include "hatvol/errors.hpp"

namespace hatvol {

Rational frac(long num, long den) {
  if (den == 0) fail(ErrorKind::invalid_input, "zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

Integer parse_integer(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) fail(ErrorKind::invalid_input, "malformed integer '" + std::string(s) + "'");
  Integer z(std::string(s), 10);
  return neg ? Integer(-z) : z;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) fail(ErrorKind::invalid_input, "empty rational");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    if (den == 0) fail(ErrorKind::invalid_input, "zero denominator in '" + std::string(text) + "'");
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view ip = text.substr(0, dot);
    std::string_view fp = text.substr(dot + 1);
    bool neg = !ip.empty() && ip.front() == '-';
    if (!ip.empty() && (ip.front() == '-' || ip.front() == '+')) ip.remove_prefix(1);
    if ((!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)) || (ip.empty() && fp.empty()))
      fail(ErrorKind::invalid_input, "malformed decimal '" + std::string(text) + "'");
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
    Integer whole = ip.empty() ? Integer(0) : Integer(std::string(ip), 10);
    Integer frac = fp.empty() ? Integer(0) : Integer(std::string(fp), 10);
    Rational q(whole * scale + frac, scale);
    q.canonicalize();
    return neg ? Rational(-q) : q;
  }
  return Rational(parse_integer(text));
}

Rational floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(r);
}

Rational ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return Rational(r);
}

Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Rational pow(const Rational& q, unsigned e) {
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), e);
  return Rational(num, den);
}

Integer factorial(unsigned n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

double to_double(const Rational& q) { return q.get_d(); }

Rational round_to_denominator(double x, long den) {
  Integer num(std::floor(x * static_cast<double>(den) + 0.5));
  Rational q(num, Integer(den));
  q.canonicalize();
  return q;
}

bool fits_int64(const Integer& z) { return mpz_fits_slong_p(z.get_mpz_t()) != 0; }

std::int64_t to_int64(const Integer& z) {
  if (!fits_int64(z)) fail(ErrorKind::invalid_input, "integer " + z.get_str() + " exceeds 64 bits");
  return z.get_si();
}

Vec to_vec(const IntVec& v) {
  Vec out;
  out.reserve(v.size());
  for (auto x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

Rational dot(const Vec& a, const Vec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Rational dot(const IntVec& a, const Vec& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != 0) s += Rational(static_cast<long>(a[i])) * b[i];
  return s;
}

IntVec primitive_direction(const Vec& v) {
  Integer l = 1;
  for (const auto& x : v) l = lcm(l, Integer(x.get_den()));
  std::vector<Integer> ints;
  ints.reserve(v.size());
  Integer g = 0;
  for (const auto& x : v) {
    Integer z = x.get_num() * (l / x.get_den());
    g = gcd(g, z);
    ints.push_back(z);
  }
  if (g == 0) fail(ErrorKind::invalid_input, "zero vector has no primitive direction");
  IntVec out;
  out.reserve(v.size());
  for (auto& z : ints) out.push_back(to_int64(Integer(z / g)));
  return out;
}

IntVec primitive_direction(const IntVec& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
  if (g == 0) fail(ErrorKind::invalid_input, "zero vector has no primitive direction");
  IntVec out(v);
  for (auto& x : out) x /= g;
  return out;
}

bool is_primitive(const IntVec& v) {
  std::int64_t g = 0;
  for (auto x : v) g = std::gcd(g, x < 0 ? -x : x);
  return g == 1;
}

std::string to_string(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v[i]);
  }
  return s + ")";
}

}  // namespace hatvol
