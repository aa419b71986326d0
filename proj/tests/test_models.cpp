#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hatvol/errors.hpp"
#include "hatvol/linalg.hpp"
#include "hatvol/models.hpp"
#include "test_support.hpp"

using namespace hatvol;
using namespace hatvol::models;
using hatvol::testing::int_points;
using hatvol::testing::Q;

namespace {

ToricSingularity a1_cone() { return make_toric(2, {{0, 1}, {2, -1}}); }

FanoConeInput p2() { return make_fano_cone_input(int_points({{0, 0}, {3, 0}, {0, 3}}), 1); }
FanoConeInput p1() { return make_fano_cone_input(int_points({{0}, {2}}), 1); }
FanoConeInput p1xp1() { return make_fano_cone_input(int_points({{0, 0}, {2, 0}, {0, 2}, {2, 2}}), 1); }
FanoConeInput p112() { return make_fano_cone_input(int_points({{0, 0}, {4, 0}, {0, 2}}), 1); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::invariant_violation;
}

}  // namespace

TEST_CASE("monomial pair discrepancy and volume") {
  auto an = smooth_point(3);
  CHECK(log_discrepancy(an, {Q(1), Q(1), Q(1)}) == 3);
  CHECK(valuation_volume(an, {Q(1), Q(1), Q(1)}) == 1);
  for (Rational a : {Q(1, 2), Q(2, 3), Q(1, 7)}) {
    for (int n = 2; n <= 4; ++n) {
      Vec coeffs(n, Rational(0));
      coeffs[0] = a;
      auto pair = make_monomial_pair(n, coeffs);
      Vec va(n, Rational(1));
      va[0] = 1 / (1 - a);
      CHECK(log_discrepancy(pair, va) == n);
      CHECK(log_discrepancy(smooth_point(n), va) == 1 / (1 - a) + (n - 1));
      CHECK(valuation_volume(pair, va) == 1 - a);
    }
  }
  CHECK(kind_of([] { make_monomial_pair(2, {Q(1), Q(0)}); }) == ErrorKind::invalid_input);
  CHECK(kind_of([&] { log_discrepancy(an, {Q(1), Q(0), Q(1)}); }) == ErrorKind::invalid_weight);
  CHECK(kind_of([&] { valuation_volume(an, {Q(1), Q(0), Q(1)}); }) == ErrorKind::infinite_volume);
}

TEST_CASE("A1 cone") {
  auto a1 = a1_cone();
  CHECK(a1.m_sigma == Vec{Q(1), Q(1)});
  CHECK(log_discrepancy(a1, {Q(1), Q(0)}) == 1);
  // n!·area of the triangle 0, (1/a,0), (1/(a+2b), 2/(a+2b))
  for (auto [a, b] : std::vector<std::pair<Rational, Rational>>{{Q(1), Q(0)}, {Q(1, 2), Q(1, 3)}, {Q(3), Q(-1)}}) {
    Rational expected = 2 / (a * (a + 2 * b));
    CHECK(valuation_volume(a1, {a, b}) == expected);
  }
  CHECK(kind_of([&] { log_discrepancy(a1, {Q(0), Q(1)}); }) == ErrorKind::boundary_valuation);
  CHECK(kind_of([&] { valuation_volume(a1, {Q(2), Q(-1)}); }) == ErrorKind::infinite_volume);
  CHECK(kind_of([&] { valuation_volume(a1, {Q(-1), Q(0)}); }) == ErrorKind::invalid_weight);
}

TEST_CASE("invalid and non-Gorenstein cones") {
  CHECK(kind_of([] { make_toric(2, {{1, 0}, {-1, 0}, {0, 1}}); }) == ErrorKind::invalid_cone);
  CHECK(kind_of([] { make_toric(2, {{1, 0}}); }) == ErrorKind::invalid_cone);
  // four rays of a 3-dim cone not on a common affine plane
  CHECK(kind_of([] { make_toric(3, {{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 2}}); }) ==
        ErrorKind::not_q_gorenstein);
}

TEST_CASE("scale invariance of A^n·vol") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> num(1, 9), den(1, 5);
  auto a1 = a1_cone();
  auto pair = make_monomial_pair(3, {Q(1, 3), Q(0), Q(1, 2)});
  for (int trial = 0; trial < 40; ++trial) {
    Rational lambda = Q(num(rng), den(rng));
    Vec w{Q(num(rng), den(rng)), Q(num(rng), den(rng)), Q(num(rng), den(rng))};
    Vec lw = w;
    for (auto& x : lw) x *= lambda;
    CHECK(log_discrepancy(pair, lw) == lambda * log_discrepancy(pair, w));
    CHECK(valuation_volume(pair, lw) == valuation_volume(pair, w) / pow(lambda, 3));
    Vec xi{Q(num(rng), den(rng)) + 1, Q(0)};
    xi[1] = xi[0] / 4 * Q(num(rng) - 5, 5);  // a + 2b > 0 and a > 0 keeps xi interior
    Vec lxi{xi[0] * lambda, xi[1] * lambda};
    CHECK(valuation_volume(a1, lxi) == valuation_volume(a1, xi) / pow(lambda, 2));
  }
}

TEST_CASE("fast volume evaluator agrees with the exact hull") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<int> num(1, 6), den(1, 4);
  std::vector<ToricSingularity> models{a1_cone(), cone_construction(p2()), cone_construction(p1xp1()),
                                       cone_construction(p112()), make_toric(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}),
                                       make_toric(4, {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}})};
  for (const auto& m : models) {
    DualConeVolume fast(m.sigma);
    for (int trial = 0; trial < 15; ++trial) {
      // random positive combination of the rays is interior
      Vec xi(m.n(), Rational(0));
      for (const auto& r : m.sigma.rays()) {
        Rational c = Q(num(rng), den(rng));
        for (int i = 0; i < m.n(); ++i) xi[i] += c * static_cast<long>(r[i]);
      }
      Rational exact = valuation_volume(m, xi);
      CHECK(fast(xi) == exact);
      std::vector<double> xd;
      for (const auto& x : xi) xd.push_back(x.get_d());
      CHECK(fast.eval(xd) == doctest::Approx(exact.get_d()).epsilon(1e-12));
      // gradient against central differences
      Vec g = fast.gradient(xi);
      for (int i = 0; i < m.n(); ++i) {
        const double h = 1e-6;
        auto up = xd, down = xd;
        up[i] += h;
        down[i] -= h;
        CHECK(g[i].get_d() == doctest::Approx((fast.eval(up) - fast.eval(down)) / (2 * h)).epsilon(1e-5));
      }
      // Euler relation for a function homogeneous of degree −n
      CHECK(dot(g, xi) == -m.n() * exact);
    }
  }
}

TEST_CASE("toric volume is the normalized lattice count limit") {
  // n!·#{u ∈ σ^∨ ∩ Z^2 : ⟨ξ,u⟩ < k} / k^2 → vol(ξ) for the A1 cone.
  auto a1 = a1_cone();
  Vec xi{Q(2), Q(1, 2)};
  auto dual = geom::dual_cone(a1.sigma);
  const long k = 400;
  long count = 0;
  for (long x = 0; x <= 2 * k; ++x)
    for (long y = 0; y <= 2 * k; ++y) {
      bool in = true;
      for (const auto& v : a1.sigma.rays()) in = in && v[0] * x + v[1] * y >= 0;
      if (in && 2 * x + Rational(y) / 2 < k) ++count;
    }
  double limit = 2.0 * count / (k * k);
  CHECK(limit == doctest::Approx(valuation_volume(a1, xi).get_d()).epsilon(0.01));
  CHECK(dual.rays() == std::vector<IntVec>{{1, 0}, {1, 2}});
}

TEST_CASE("cone construction") {
  auto c1 = cone_construction(p1());
  CHECK(c1.n() == 2);
  CHECK(c1.sigma.rays().size() == 2);
  CHECK(abs(linalg::determinant(c1.sigma.rays())) == 2);  // A1
  CHECK(geom::dual_cone(c1.sigma) == geom::make_cone(2, {{0, 1}, {2, 1}}));

  auto c2 = cone_construction(p2());
  CHECK(c2.sigma.rays().size() == 3);
  CHECK(abs(linalg::determinant(c2.sigma.rays())) == 3);  // A^3/μ_3
  CHECK(c2.m_sigma == Vec{Q(1), Q(1), Q(1)});

  auto c3 = cone_construction(p1xp1());
  CHECK(c3.sigma.rays().size() == 4);
  for (const auto& v : c3.sigma.rays()) CHECK(dot(v, c3.m_sigma) == 1);
  CHECK(geom::dual_cone(c3.sigma) == geom::make_cone(3, {{0, 0, 1}, {2, 0, 1}, {0, 2, 1}, {2, 2, 1}}));

  // no point is equidistant from the four facets of this trapezoid
  auto bad = make_fano_cone_input(int_points({{0, 0}, {3, 0}, {1, 1}, {0, 1}}), 1);
  CHECK(kind_of([&] { cone_construction(bad); }) == ErrorKind::not_q_gorenstein);
  CHECK(kind_of([] { make_fano_cone_input(int_points({{0, 0}, {1, 1}}), 1); }) == ErrorKind::invalid_input);
}

TEST_CASE("Fano degree bound") {
  CHECK(fano_degree_bound(p2()) == 9);
  CHECK(fano_degree_bound(p1()) == 2);
  CHECK(fano_degree_bound(p1xp1()) == 8);
  CHECK(fano_degree_bound(p112()) == 8);
  // L = −2K on P^1: Q = [0,4], bound 1!·4/2^2 = 1 = (1/r)(−K)
  CHECK(fano_degree_bound(make_fano_cone_input(int_points({{0}, {4}}), 2)) == 1);
}

TEST_CASE("barycenter oracle") {
  CHECK(toric_kss_oracle(p2().polytope));
  CHECK(toric_kss_oracle(p1xp1().polytope));
  CHECK(toric_kss_oracle(p1().polytope));
  CHECK_FALSE(toric_kss_oracle(p112().polytope));
  CHECK(anticanonical_center(p112().polytope) == IntVec{1, 1});
  CHECK(geom::barycenter(p112().polytope) == Vec{Q(4, 3), Q(2, 3)});
  // blow-up of P^2 at a point (hexagon minus a corner) is not K-semistable
  CHECK_FALSE(toric_kss_oracle(geom::convex_hull(int_points({{0, 1}, {1, 0}, {3, 0}, {0, 3}}))));
  // P^2 blown up at three points (hexagon) is
  CHECK(toric_kss_oracle(geom::convex_hull(int_points({{1, 0}, {2, 0}, {2, 1}, {1, 2}, {0, 2}, {0, 1}}))));
  CHECK(kind_of([] { anticanonical_center(geom::convex_hull(int_points({{0, 0}, {1, 0}, {0, 1}}))); }) ==
        ErrorKind::not_anticanonical_polytope);
}
