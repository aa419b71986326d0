// Monomial ideals in k[x_1..x_n]: staircases, Newton polyhedra, colengths,
// multiplicities, powers, integral closures, valuation ideals, and the
// exhaustive enumeration of ideals squeezed between m^k and m^j.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hatvol/geometry.hpp"
#include "hatvol/rational.hpp"

namespace hatvol::mono {

/// Exponent vector of a monomial.
using Exponent = IntVec;

/// Monomial ideal stored by its minimal generators (an antichain, sorted
/// lexicographically). Non-minimal input generators are reduced away.
class MonomialIdeal {
 public:
  MonomialIdeal(int n, std::vector<Exponent> generators);

  static MonomialIdeal maximal(int n);
  static MonomialIdeal maximal_power(int n, int k);

  int n() const { return n_; }
  const std::vector<Exponent>& generators() const { return gens_; }

  bool contains(const Exponent& u) const;
  bool is_unit() const;
  /// Finite staircase: every axis carries a pure power.
  bool is_m_primary() const;
  /// Exponent of the pure power x_axis^e among the generators.
  std::optional<std::int64_t> pure_power(int axis) const;

  std::string to_string() const;

  friend bool operator==(const MonomialIdeal& a, const MonomialIdeal& b) {
    return a.n_ == b.n_ && a.gens_ == b.gens_;
  }

 private:
  int n_;
  std::vector<Exponent> gens_;
};

/// Minimal elements under the componentwise order, sorted lexicographically.
std::vector<Exponent> antichain_reduce(std::vector<Exponent> gens);

/// Standard monomials N^n ∖ a, sorted lexicographically. Throws
/// infinite-colength for non-primary ideals and enumeration-budget-exceeded
/// past `max_points`.
std::vector<Exponent> staircase(const MonomialIdeal& a, std::int64_t max_points = 10'000'000);

/// ℓ(R/a) = number of standard monomials.
std::int64_t colength(const MonomialIdeal& a);

MonomialIdeal power(const MonomialIdeal& a, int m);

/// Facet ⟨normal, u⟩ >= offset of a Newton polyhedron (normal >= 0).
struct NewtonFacet {
  IntVec normal;
  Rational offset;
  std::vector<Exponent> vertices;  // generators lying on the facet
  /// Compact facets are exactly those with positive offset.
  bool compact() const { return offset > 0; }
};

/// conv(generators) + R^n_{>=0}.
class NewtonPolyhedron {
 public:
  explicit NewtonPolyhedron(const MonomialIdeal& a);
  const geom::Polyhedron& polyhedron() const { return poly_; }
  const std::vector<NewtonFacet>& facets() const { return facets_; }
  bool contains(const Vec& u) const;

 private:
  geom::Polyhedron poly_;
  std::vector<NewtonFacet> facets_;
};

NewtonPolyhedron newton_polyhedron(const MonomialIdeal& a);

/// e(a) = n!·vol(R^n_{>=0} ∖ Newton polyhedron), summed over the cones from
/// the origin to the compact facets. Throws infinite-covolume when not primary.
Rational multiplicity(const MonomialIdeal& a);

/// Minimal lattice points of the Newton polyhedron.
MonomialIdeal integral_closure(const MonomialIdeal& a);

/// a_k(v_w) = (x^u : ⟨w,u⟩ >= k). Throws invalid-weight unless every w_i > 0.
MonomialIdeal valuation_ideal(const Vec& weights, const Rational& k);

// ------------------------------------------------------------- enumeration

struct EnumerationBudget {
  int max_k_n2 = 12;
  int max_k_n3 = 5;
};

/// Ideals a with m^k ⊆ a ⊆ m^inner_degree and ℓ(R/a) >= min_colength.
struct StaircaseQuery {
  int n = 2;
  int k = 2;
  std::int64_t min_colength = 1;
  int inner_degree = 1;
};

struct EnumeratedIdeal {
  std::size_t index;                      // position in lexicographic order
  const std::vector<Exponent>* staircase;  // sorted standard monomials
  MonomialIdeal ideal;
};

/// Visits every ideal of the query exactly once, ordered lexicographically
/// by staircase characteristic vector over the monomials of degree < k.
/// Throws enumeration-budget-exceeded when k exceeds the budget for n.
void for_each_staircase(const StaircaseQuery& q, const EnumerationBudget& budget,
                        const std::function<void(const EnumeratedIdeal&)>& visit);

std::vector<MonomialIdeal> enumerate_staircases(const StaircaseQuery& q, const EnumerationBudget& budget = {});

/// Strict lexicographic order on staircase characteristic vectors (the
/// staircase missing the first differing monomial is smaller).
bool staircase_lex_less(const std::vector<Exponent>& a, const std::vector<Exponent>& b);

}  // namespace hatvol::mono
