#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "hatvol/errors.hpp"
#include "hatvol/geometry.hpp"
#include "hatvol/linalg.hpp"
#include "test_support.hpp"

using namespace hatvol;
using namespace hatvol::geom;
using hatvol::testing::int_points;
using hatvol::testing::Q;

namespace {

// Shoelace area of a convex polygon, vertices sorted by angle around the
// centroid. Independent of the pulling triangulation.
Rational shoelace_area(const ConvexBody& b) {
  std::vector<Vec> vs = b.vertices();
  Rational cx = 0, cy = 0;
  for (const auto& v : vs) {
    cx += v[0];
    cy += v[1];
  }
  cx /= static_cast<long>(vs.size());
  cy /= static_cast<long>(vs.size());
  std::sort(vs.begin(), vs.end(), [&](const Vec& a, const Vec& b) {
    return std::atan2(Rational(a[1] - cy).get_d(), Rational(a[0] - cx).get_d()) <
           std::atan2(Rational(b[1] - cy).get_d(), Rational(b[0] - cx).get_d());
  });
  Rational s = 0;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const auto& p = vs[i];
    const auto& q = vs[(i + 1) % vs.size()];
    s += p[0] * q[1] - q[0] * p[1];
  }
  return abs(s) / 2;
}

// Volume of a 3-body by exact Simpson integration of section areas: the
// section area is quadratic between consecutive vertex heights.
Rational simpson_volume(const ConvexBody& b) {
  std::set<Rational> levels;
  for (const auto& v : b.vertices()) levels.insert(v[2]);
  std::vector<Rational> ts(levels.begin(), levels.end());
  auto area = [&](const Rational& t) {
    auto s = slice(b, 2, t);
    return s.full_dimensional() ? shoelace_area(s) : Rational(0);
  };
  Rational total = 0;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    Rational h = ts[i + 1] - ts[i];
    total += h / 6 * (area(ts[i]) + 4 * area((ts[i] + ts[i + 1]) / 2) + area(ts[i + 1]));
  }
  return total;
}

std::int64_t brute_lattice_count(const ConvexBody& b, std::int64_t k) {
  // Test every integer point of a generous box against k·b via rational membership.
  std::int64_t count = 0;
  const int d = b.dim();
  std::vector<std::int64_t> x(d, -1);
  while (true) {
    Vec p;
    for (auto xi : x) p.push_back(frac(xi, k));
    count += b.contains(p);
    int j = d - 1;
    while (j >= 0 && x[j] == k + 1) x[j--] = -1;
    if (j < 0) break;
    ++x[j];
  }
  return count;
}

std::vector<IntVec> brute_dual_rays(const std::vector<IntVec>& rays, int d, int box) {
  std::vector<IntVec> out;
  IntVec u(d, -box);
  while (true) {
    if (is_primitive(u)) {
      bool ok = true;
      std::vector<IntVec> tight;
      for (const auto& r : rays) {
        std::int64_t s = 0;
        for (int j = 0; j < d; ++j) s += u[j] * r[j];
        if (s < 0) ok = false;
        if (s == 0) tight.push_back(r);
      }
      if (ok && linalg::rank(tight, d) == d - 1) out.push_back(u);
    }
    int j = d - 1;
    while (j >= 0 && u[j] == box) u[j--] = -box;
    if (j < 0) break;
    ++u[j];
  }
  std::sort(out.begin(), out.end());
  return out;
}

IntVec apply(const std::vector<IntVec>& m, const IntVec& v) {
  IntVec out(m.size(), 0);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

std::vector<IntVec> random_unimodular(std::mt19937_64& rng, int d) {
  std::uniform_int_distribution<int> e(-3, 3);
  while (true) {
    std::vector<IntVec> m(d, IntVec(d));
    for (auto& row : m)
      for (auto& x : row) x = e(rng);
    auto det = linalg::determinant(m);
    if (det == 1 || det == -1) return m;
  }
}

}  // namespace

TEST_CASE("convex_hull drops interior points and flags degenerate inputs") {
  auto b = convex_hull({{Q(0), Q(0)}, {Q(1), Q(0)}, {Q(0), Q(1)}, {Q("1/2"), Q("1/4")}});
  CHECK(b.vertices() == int_points({{0, 0}, {0, 1}, {1, 0}}));
  CHECK(b.full_dimensional());
  CHECK(b.facets().size() == 3);

  auto seg = convex_hull(int_points({{0, 0}, {1, 1}}));
  CHECK_FALSE(seg.full_dimensional());
  CHECK(seg.affine_dim() == 1);
  CHECK(seg.vertices().size() == 2);
  CHECK(volume(seg) == 0);

  auto cube = hatvol::testing::unit_cube(3);
  CHECK(cube.vertices().size() == 8);
  CHECK(cube.facets().size() == 6);

  for (const auto& f : cube.facets()) CHECK(f.incident.size() == 4);
}

TEST_CASE("convex_hull error paths") {
  CHECK_THROWS_AS(convex_hull({}), Error);
  try {
    convex_hull({Vec(5, Rational(0))});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::unsupported_dimension);
  }
  try {
    convex_hull({});
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::empty_input);
  }
}

TEST_CASE("every vertex is tight on at least dim facets") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    int d = 2 + trial % 2;
    auto b = hatvol::testing::random_body(rng, d, 8, 8);
    std::vector<int> tight(b.vertices().size(), 0);
    for (const auto& f : b.facets())
      for (int i : f.incident) ++tight[i];
    for (int t : tight) CHECK(t >= d);
    for (const auto& v : b.vertices()) CHECK(b.contains(v));
  }
}

TEST_CASE("dual_cone examples") {
  auto orthant = make_cone(2, {{1, 0}, {0, 1}});
  CHECK(dual_cone(orthant).rays() == std::vector<IntVec>{{0, 1}, {1, 0}});

  auto a1 = make_cone(2, {{0, 1}, {2, -1}});
  CHECK(dual_cone(a1).rays() == std::vector<IntVec>{{1, 0}, {1, 2}});
  CHECK(brute_dual_rays(a1.rays(), 2, 6) == dual_cone(a1).rays());

  auto o3 = make_cone(3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(dual_cone(o3) == o3);
}

TEST_CASE("dual_cone rejects non-pointed and lower-dimensional cones") {
  auto half_plane = make_cone(2, {{1, 0}, {-1, 0}, {0, 1}});
  CHECK(half_plane.full_dimensional());
  CHECK_FALSE(half_plane.pointed());
  CHECK_THROWS_AS(dual_cone(half_plane), Error);

  auto ray = make_cone(2, {{1, 1}});
  CHECK_FALSE(ray.full_dimensional());
  CHECK(ray.pointed());
  CHECK_THROWS_AS(dual_cone(ray), Error);
}

TEST_CASE("make_cone normalizes rays and removes redundant generators") {
  auto c = make_cone(2, {{2, 0}, {0, 3}, {1, 1}, {4, 0}});
  CHECK(c.rays() == std::vector<IntVec>{{0, 1}, {1, 0}});
}

TEST_CASE("dual_cone is an involution and matches brute force") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> e(-3, 3);
  int checked = 0;
  while (checked < 40) {
    int d = 2 + checked % 2;
    std::vector<IntVec> rays;
    for (int i = 0; i < d + 1; ++i) {
      IntVec r(d);
      for (auto& x : r) x = e(rng);
      if (std::all_of(r.begin(), r.end(), [](auto x) { return x == 0; })) continue;
      rays.push_back(r);
    }
    if (rays.size() < static_cast<std::size_t>(d)) continue;
    auto c = make_cone(d, rays);
    if (!c.full_dimensional() || !c.pointed()) continue;
    auto dual = dual_cone(c);
    CHECK(dual_cone(dual) == c);
    if (d == 2) CHECK(brute_dual_rays(c.rays(), d, 20) == dual.rays());
    ++checked;
  }
}

TEST_CASE("volume examples") {
  CHECK(volume(hatvol::testing::standard_simplex(3)) == Q(1, 6));
  CHECK(volume(hatvol::testing::unit_cube(2)) == 1);
  CHECK(volume(convex_hull(int_points({{0, 0}, {2, 0}, {0, 3}}))) == 3);
  CHECK(volume(hatvol::testing::unit_cube(4)) == 1);
  CHECK(volume(hatvol::testing::standard_simplex(4)) == Q(1, 24));
}

TEST_CASE("volume agrees with shoelace and Simpson oracles") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    auto b2 = hatvol::testing::random_body(rng, 2, 8, 7);
    CHECK(volume(b2) == shoelace_area(b2));
  }
  for (int trial = 0; trial < 10; ++trial) {
    auto b3 = hatvol::testing::random_body(rng, 3, 6, 8);
    CHECK(volume(b3) == simpson_volume(b3));
  }
}

TEST_CASE("volume is invariant under unimodular maps and additive over a cut") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    int d = 2 + trial % 2;
    auto b = hatvol::testing::random_body(rng, d, 6, 7);
    auto m = random_unimodular(rng, d);
    std::vector<Vec> mapped;
    for (const auto& v : b.vertices()) {
      Vec w(d, Rational(0));
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) w[i] += Rational(static_cast<long>(m[i][j])) * v[j];
      mapped.push_back(w);
    }
    CHECK(volume(convex_hull(mapped)) == volume(b));

    // cut at the midpoint of the first axis
    Rational t = (b.min_coord(0) + b.max_coord(0)) / 2;
    auto sec = slice(b, 0, t);
    std::vector<Vec> lower, upper;
    for (const auto& v : b.vertices()) (v[0] <= t ? lower : upper).push_back(v);
    for (const auto& s : sec.vertices()) {
      Vec p{t};
      p.insert(p.end(), s.begin(), s.end());
      lower.push_back(p);
      upper.push_back(p);
    }
    CHECK(volume(convex_hull(lower)) + volume(convex_hull(upper)) == volume(b));
  }
}

TEST_CASE("slice examples") {
  auto sq = hatvol::testing::unit_cube(2);
  auto s1 = slice(sq, 1, Q("1/2"));
  CHECK(s1.vertices() == std::vector<Vec>{{Q(0)}, {Q(1)}});

  auto tri = hatvol::testing::standard_simplex(2);
  auto s2 = slice(tri, 1, Q("1/2"));
  CHECK(s2.vertices() == std::vector<Vec>{{Q(0)}, {Q("1/2")}});

  auto tet = hatvol::testing::standard_simplex(3);
  auto s3 = slice(tet, 2, Q("1/3"));
  CHECK(s3.vertices().size() == 3);
  CHECK(volume(s3) == Q(2, 9));

  try {
    slice(sq, 0, Q("3/2"));
    FAIL("expected empty-slice");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::empty_slice);
  }
}

TEST_CASE("lattice_points examples") {
  auto sq = hatvol::testing::unit_cube(2);
  auto tri = hatvol::testing::standard_simplex(2);
  for (std::int64_t k = 1; k <= 10; ++k) {
    CHECK(lattice_points(sq, k) == (k + 1) * (k + 1));
    CHECK(lattice_points(tri, k) == (k + 1) * (k + 2) / 2);
    CHECK(lattice_points(tri, k) == brute_lattice_count(tri, k));
  }
  auto seg = convex_hull({{Q(0)}, {Q(1)}});
  CHECK(lattice_points(seg, 7) == 8);
}

TEST_CASE("lattice_points matches rational membership on random bodies") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 12; ++trial) {
    int d = 2 + trial % 2;
    auto b = hatvol::testing::random_body(rng, d, 8, 6);
    for (std::int64_t k : {1, 3, 5, 8}) CHECK(lattice_points(b, k) == brute_lattice_count(b, k));
  }
  // lower-dimensional body: the diagonal segment of the unit square
  auto diag = convex_hull(int_points({{0, 0}, {1, 1}}));
  CHECK(lattice_points(diag, 6) == 7);
  CHECK(lattice_points(diag, 6) == brute_lattice_count(diag, 6));
}

TEST_CASE("counting_error_probe examples") {
  auto sq = hatvol::testing::unit_cube(2);
  auto r = counting_error_probe(sq, {10}, Q("1/20"));
  CHECK(r.rows.at(0).error == Q(21, 100));
  CHECK_FALSE(r.k0.has_value());

  auto tri = hatvol::testing::standard_simplex(2);
  auto r2 = counting_error_probe(tri, {10}, Q("1/20"));
  CHECK(r2.rows.at(0).error == Q(4, 25));

  std::vector<std::int64_t> ks;
  for (std::int64_t k = 1; k <= 60; ++k) ks.push_back(k);
  auto r3 = counting_error_probe(sq, ks, Q("1/20"));
  CHECK(r3.rows.size() == ks.size());
  // (k+1)^2/k^2 - 1 = (2k+1)/k^2 <= 1/20 from k = 41 on
  REQUIRE(r3.k0.has_value());
  CHECK(*r3.k0 == 41);
}

TEST_CASE("counting error sanity envelope on random bodies") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 8; ++trial) {
    int d = 2 + trial % 2;
    auto b = hatvol::testing::random_body(rng, d, 8, 6);
    std::vector<std::int64_t> ks;
    for (std::int64_t k = 1; k <= (d == 2 ? 40 : 16); ++k) ks.push_back(k);
    auto rep = counting_error_probe(b, ks, Q("1/20"));
    for (const auto& row : rep.rows) {
      if (row.k < 2) continue;
      const auto& half = rep.rows[row.k / 2 - 1];
      CHECK(row.error <= half.error + Q(2 * d, row.k));
    }
  }
}

TEST_CASE("monotone_riemann_gap examples") {
  std::map<Rational, Rational> id;
  for (int j = 0; j <= 4; ++j) id[Q(j, 4)] = Q(j, 4);
  auto g1 = monotone_riemann_gap(id, 0, 1, 4, Q("1/2"));
  CHECK(g1.gap == Q(1, 8));
  CHECK(g1.within_bound);

  for (std::int64_t k : {1, 2, 5, 9}) {
    std::map<Rational, Rational> one;
    for (int j = 0; j <= k; ++j) one[Q(j, k)] = 1;
    CHECK(monotone_riemann_gap(one, 0, 1, k, 1).gap == Q(1, k));
  }

  std::map<Rational, Rational> step{{Q(0), Q(0)}, {Q("1/2"), Q(1)}, {Q(1), Q(1)}};
  auto g3 = monotone_riemann_gap(step, 0, 1, 2, Q("1/2"));
  CHECK(g3.gap == Q(1, 2));
  CHECK(g3.bound == 1);
  CHECK(g3.within_bound);

  std::map<Rational, Rational> bumpy{{Q(0), Q(0)}, {Q("1/2"), Q(1)}, {Q(1), Q(0)}};
  try {
    monotone_riemann_gap(bumpy, 0, 1, 2, Q("1/2"));
    FAIL("expected monotonicity-violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::monotonicity_violation);
  }
}

TEST_CASE("brunn_minkowski_probe passes on convex bodies") {
  CHECK(brunn_minkowski_probe(hatvol::testing::unit_cube(3), 0, 4));
  CHECK(brunn_minkowski_probe(hatvol::testing::standard_simplex(3), 2, 6));
  CHECK(brunn_minkowski_probe(hatvol::testing::standard_simplex(2), 1, 5));
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 6; ++trial) {
    auto b = hatvol::testing::random_body(rng, 3, 4, 7);
    CHECK(brunn_minkowski_probe(b, trial % 3, 4));
  }
}

TEST_CASE("polyhedron facets of a Newton-type region") {
  auto p = make_polyhedron(int_points({{2, 0}, {0, 3}}), {{1, 0}, {0, 1}});
  // u1/2 + u2/3 >= 1, i.e. -3u1 - 2u2 <= -6, plus the two coordinate facets
  bool found = false;
  for (const auto& f : p.facets())
    if (f.normal == IntVec{-3, -2} && f.offset == -6) found = true;
  CHECK(found);
  CHECK(p.facets().size() == 3);
  CHECK(p.contains({Q(1), Q("3/2")}));
  CHECK_FALSE(p.contains({Q(1), Q(1)}));
}
