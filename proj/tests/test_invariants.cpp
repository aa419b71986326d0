#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "hatvol/errors.hpp"
#include "hatvol/invariants.hpp"
#include "hatvol/linalg.hpp"
#include "test_support.hpp"

using namespace hatvol;
using namespace hatvol::inv;
using hatvol::testing::int_points;
using hatvol::testing::Q;

namespace {

MonomialIdeal ideal2(std::initializer_list<std::pair<long, long>> gens) {
  std::vector<Exponent> g;
  for (auto [a, b] : gens) g.push_back({a, b});
  return MonomialIdeal(2, g);
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::invariant_violation;
}

// min ⟨c,w⟩ over the vertices of {w >= 0 : ⟨w,u⟩ >= 1}: every choice of n
// tight constraints with a unique solution.
Rational lct_by_vertices(const MonomialPair& model, const MonomialIdeal& a) {
  const int n = model.n;
  std::vector<std::pair<Vec, Rational>> rows;
  for (const auto& u : a.generators()) rows.push_back({to_vec(u), Rational(1)});
  for (int i = 0; i < n; ++i) {
    Vec e(n, Rational(0));
    e[i] = 1;
    rows.push_back({e, Rational(0)});
  }
  std::optional<Rational> best;
  std::vector<int> pick(rows.size(), 0);
  std::fill(pick.end() - n, pick.end(), 1);
  do {
    linalg::Matrix m;
    Vec rhs;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (pick[i]) m.push_back(rows[i].first), rhs.push_back(rows[i].second);
    auto w = linalg::solve_unique(m, rhs);
    if (!w) continue;
    bool ok = true;
    for (const auto& [r, b] : rows) ok = ok && dot(r, *w) >= b;
    if (!ok) continue;
    Rational v = 0;
    for (int i = 0; i < n; ++i) v += (1 - model.coeffs[i]) * (*w)[i];
    if (!best || v < *best) best = v;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return *best;
}

// Down-closed subsets of {|u| < k} in N^2 containing 0, by subset scan.
std::vector<MonomialIdeal> brute_ideals(int k) {
  std::vector<Exponent> region;
  for (long x = 0; x < k; ++x)
    for (long y = 0; x + y < k; ++y) region.push_back({x, y});
  std::vector<MonomialIdeal> out;
  for (unsigned long mask = 0; mask < (1ul << region.size()); ++mask) {
    std::set<Exponent> s;
    for (std::size_t i = 0; i < region.size(); ++i)
      if (mask >> i & 1) s.insert(region[i]);
    if (!s.count({0, 0})) continue;
    bool closed = true;
    for (const auto& p : s) {
      if (p[0] > 0 && !s.count({p[0] - 1, p[1]})) closed = false;
      if (p[1] > 0 && !s.count({p[0], p[1] - 1})) closed = false;
    }
    if (!closed) continue;
    std::vector<Exponent> gens;
    for (long x = 0; x <= k; ++x)
      for (long y = 0; x + y <= k; ++y)
        if (!s.count({x, y})) gens.push_back({x, y});
    out.emplace_back(2, gens);
  }
  return out;
}

std::vector<MonomialIdeal> random_ideals(std::mt19937_64& rng, int n, int count) {
  std::uniform_int_distribution<int> d(0, 5);
  std::vector<MonomialIdeal> out;
  while (static_cast<int>(out.size()) < count) {
    std::vector<Exponent> gens;
    for (int j = 0; j < 1 + static_cast<int>(out.size()) % 5; ++j) {
      Exponent e(n);
      for (auto& x : e) x = d(rng);
      gens.push_back(e);
    }
    MonomialIdeal a(n, gens);
    if (!a.is_unit()) out.push_back(a);
  }
  return out;
}

}  // namespace

TEST_CASE("lct worked examples") {
  auto a2 = models::smooth_point(2);
  auto r = lct(a2, ideal2({{2, 0}, {0, 3}}));
  CHECK(r.value == Q(5, 6));
  CHECK(r.minimizing_weight == Vec{Q(1, 2), Q(1, 3)});
  auto s = lct(a2, ideal2({{2, 0}, {1, 2}, {0, 4}}));
  CHECK(s.value == Q(3, 4));
  CHECK(s.minimizing_weight == Vec{Q(1, 2), Q(1, 4)});
  CHECK(s.active.size() == 3);
  for (int n = 1; n <= 4; ++n) {
    auto m = lct(models::smooth_point(n), MonomialIdeal::maximal(n));
    CHECK(m.value == n);
    CHECK(m.minimizing_weight == Vec(n, Rational(1)));
  }
  CHECK(lct(a2, ideal2({{1, 0}})).value == 1);
  CHECK(kind_of([&] { lct(a2, MonomialIdeal(2, {{0, 0}})); }) == ErrorKind::lct_undefined);
}

TEST_CASE("lct agrees with vertex enumeration and the facet formula") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> num(0, 5);
  for (int n = 2; n <= 3; ++n) {
    for (const auto& a : random_ideals(rng, n, 120)) {
      Vec coeffs;
      for (int i = 0; i < n; ++i) coeffs.push_back(Q(num(rng), 6));
      auto model = models::make_monomial_pair(n, coeffs);
      auto r = lct(model, a);
      CHECK(r.value == lct_by_vertices(model, a));
      CHECK(r.value == lct_howald(model, a));
      CHECK(r.value > 0);
      for (const auto& u : r.active) CHECK(dot(u, r.minimizing_weight) == 1);
    }
  }
}

TEST_CASE("normalized multiplicity") {
  auto a2 = models::smooth_point(2);
  CHECK(normalized_multiplicity(a2, MonomialIdeal::maximal(2)) == 4);
  for (int k = 1; k <= 6; ++k) CHECK(normalized_multiplicity(a2, MonomialIdeal::maximal_power(2, k)) == 4);
  CHECK(normalized_multiplicity(a2, ideal2({{2, 0}, {0, 3}})) == Q(25, 6));
  // lower bound by the smooth value on every ideal between m^6 and m
  for (const auto& a : brute_ideals(6)) CHECK(normalized_multiplicity(a2, a) >= 4);
  auto a3 = models::smooth_point(3);
  for (const auto& a : mono::enumerate_staircases({3, 3, 1, 1})) CHECK(normalized_multiplicity(a3, a) >= 27);
}

TEST_CASE("closed-form normalized volume") {
  for (int n = 1; n <= 4; ++n) {
    auto r = hvol_closed_form(models::smooth_point(n));
    CHECK(r.exact);
    CHECK(r.value == pow(Rational(n), n));
    CHECK(r.minimizer == Vec(n, Q(1, n)));
  }
  for (Rational a : {Q(1, 2), Q(2, 3)})
    for (int n = 2; n <= 3; ++n) {
      Vec coeffs(n, Rational(0));
      coeffs[0] = a;
      CHECK(hvol_closed_form(models::make_monomial_pair(n, coeffs)).value == (1 - a) * pow(Rational(n), n));
    }
  CHECK(hvol_closed_form(models::make_monomial_pair(2, {Q(1, 2), Q(1, 2)})).value == 1);
}

TEST_CASE("closed form is the minimum over random weights") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> num(1, 9), den(1, 7), an(0, 4);
  for (int trial = 0; trial < 100; ++trial) {
    int n = 2 + trial % 3;
    Vec coeffs, w;
    for (int i = 0; i < n; ++i) coeffs.push_back(Q(an(rng), 5)), w.push_back(Q(num(rng), den(rng)));
    auto model = models::make_monomial_pair(n, coeffs);
    auto r = hvol_closed_form(model);
    CHECK(hvol_of(model, w) >= r.value);
    // scale invariance of the functional and of the normalized argmin
    Rational lambda = Q(num(rng), den(rng));
    Vec lw = w;
    for (auto& x : lw) x *= lambda;
    CHECK(hvol_of(model, lw) == hvol_of(model, w));
    CHECK(models::log_discrepancy(model, r.minimizer) == 1);
  }
}

TEST_CASE("numeric toric minimizer") {
  for (int n = 2; n <= 4; ++n) {
    auto r = hvol_numeric(models::smooth_point(n));
    CHECK(r.exact);
    CHECK(r.value == pow(Rational(n), n));
  }
  auto a1 = models::make_toric(2, {{0, 1}, {2, -1}});
  auto r = hvol_toric(a1);
  CHECK(r.exact);
  CHECK(r.value == 2);
  CHECK(r.minimizer == Vec{Q(1), Q(0)});
  // oracle: 2(a+b)^2/(a(a+2b)) sampled densely on the slice a + b = 1
  double best = 1e300;
  for (int i = 1; i < 20000; ++i) {
    double b = -1 + 2.0 * i / 20000, a = 1 - b;
    if (a > 0 && a + 2 * b > 0) best = std::min(best, 2 / (a * (a + 2 * b)));
  }
  CHECK(best == doctest::Approx(2).epsilon(1e-6));
  CHECK(best >= 2 - 1e-12);
}

TEST_CASE("numeric minimum is below every sampled exact value") {
  auto p112 = models::cone_construction(models::make_fano_cone_input(int_points({{0, 0}, {4, 0}, {0, 2}}), 1));
  auto f1 = models::cone_construction(models::make_fano_cone_input(int_points({{0, 1}, {1, 0}, {3, 0}, {0, 3}}), 1));
  for (const auto* model : {&p112, &f1}) {
    auto r = hvol_toric(*model);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> num(1, 12);
    for (int trial = 0; trial < 200; ++trial) {
      Vec xi(3, Rational(0));
      for (const auto& v : model->sigma.rays()) {
        Rational c = Q(num(rng), 12);
        for (int i = 0; i < 3; ++i) xi[i] += c * static_cast<long>(v[i]);
      }
      double sample = hvol_of(*model, xi).get_d();
      CHECK(r.approx <= sample * (1 + 1e-12));
      if (r.lower_bound) CHECK(*r.lower_bound <= sample);
    }
    if (r.exact) CHECK(hvol_of(*model, r.minimizer) == r.value);
  }
  CHECK(hvol_toric(p112).value == Q(27, 4));
}

TEST_CASE("normalized colength, exact mode") {
  auto a2 = models::smooth_point(2);
  auto v = normalized_colength(a2, Q(1, 8), 4, ColengthMode::exact);
  CHECK(v.value == 5);
  CHECK(v.argmin == MonomialIdeal::maximal_power(2, 4));
  CHECK(v.colength == 10);
  for (int k = 2; k <= 7; ++k)
    CHECK(normalized_colength(a2, Q(1, 8), k, ColengthMode::exact).value == Q(4 * (k + 1), k));
  CHECK(kind_of([&] { normalized_colength(a2, Q(1), 4, ColengthMode::exact); }) == ErrorKind::infeasible_c);
  CHECK(kind_of([&] { normalized_colength(a2, Q(1, 8), 13, ColengthMode::exact); }) ==
        ErrorKind::enumeration_budget_exceeded);
}

TEST_CASE("exact mode matches a brute-force minimum") {
  std::vector<MonomialPair> pairs{models::smooth_point(2), models::make_monomial_pair(2, {Q(1, 2), Q(0)}),
                                  models::make_monomial_pair(2, {Q(1, 3), Q(2, 3)})};
  for (const auto& model : pairs)
    for (int k = 2; k <= 5; ++k)
      for (Rational c : {Q(1, 8), Q(1, 4), Q(1, 3)}) {
        Rational need = c * k * k;
        std::optional<Rational> best;
        for (const auto& a : brute_ideals(k)) {
          auto len = mono::colength(a);
          if (len < need) continue;
          Rational val = 2 * pow(lct_by_vertices(model, a), 2) * len;
          if (!best || val < *best) best = val;
        }
        if (!best) {
          CHECK(kind_of([&] { normalized_colength(model, c, k, ColengthMode::exact); }) == ErrorKind::infeasible_c);
          continue;
        }
        auto v = normalized_colength(model, c, k, ColengthMode::exact);
        CHECK(v.value == *best);
        CHECK(2 * pow(lct(model, v.argmin).value, 2) * mono::colength(v.argmin) == v.value);
      }
}

TEST_CASE("upper mode bounds exact mode; monotone in c") {
  auto a2 = models::smooth_point(2);
  auto pair = models::make_monomial_pair(2, {Q(1, 2), Q(0)});
  for (const auto* model : {&a2, &pair})
    for (int k = 2; k <= 7; ++k) {
      Rational prev = 0;
      for (Rational c : {Q(1, 16), Q(1, 8), Q(1, 4), Q(3, 8)}) {
        auto ex = normalized_colength(*model, c, k, ColengthMode::exact);
        auto up = normalized_colength(*model, c, k, ColengthMode::upper);
        CHECK(up.value >= ex.value);
        CHECK(ex.value >= prev);
        CHECK(ex.value >= hvol_closed_form(*model).value);
        prev = ex.value;
      }
    }
  auto a3 = models::smooth_point(3);
  for (int k = 2; k <= 3; ++k) {
    auto ex = normalized_colength(a3, Q(1, 24), k, ColengthMode::exact);
    CHECK(normalized_colength(a3, Q(1, 24), k, ColengthMode::upper).value >= ex.value);
    CHECK(ex.value == Q(27 * (k + 1) * (k + 2), k * k));
  }
}

TEST_CASE("ties resolve to the lexicographically least staircase") {
  // (A^2, 0) with c small: the symmetric pair (x, y^2) / (x^2, y) tie
  auto a2 = models::smooth_point(2);
  auto v = normalized_colength(a2, Q(1, 16), 2, ColengthMode::exact);
  // candidates for k = 2: m (ℓ=1, 4·... ) and (x,y^2), (x^2,y), m^2
  std::vector<MonomialIdeal> all = mono::enumerate_staircases({2, 2, 1, 1});
  std::optional<Rational> best;
  std::optional<MonomialIdeal> first;
  for (const auto& a : all) {
    Rational val = 2 * pow(lct(a2, a).value, 2) * mono::colength(a);
    if (!best || val < *best) best = val, first = a;
  }
  CHECK(v.value == *best);
  CHECK(v.argmin == *first);
  auto up = normalized_colength(a2, Q(1, 16), 2, ColengthMode::upper);
  CHECK(up.argmin == *first);
}

TEST_CASE("convergence scan") {
  auto r = colength_convergence_scan(models::smooth_point(2), Q(1, 8), {2, 3, 4, 5, 6, 7, 8}, ColengthMode::exact);
  CHECK(r.rows.size() == 7);
  CHECK(r.reference_hvol == 4);
  CHECK(r.from_above);
  CHECK(r.liminf_estimate == Q(9, 2));
  for (const auto& row : r.rows) {
    CHECK(row.v.value == Q(4 * (row.k + 1), row.k));
    CHECK(row.power_argmin);
  }
  CHECK(kind_of([] { colength_convergence_scan(models::smooth_point(2), Q(1, 8), {3, 2}, ColengthMode::exact); }) ==
        ErrorKind::invalid_input);
  CHECK(default_c(2) == Q(1, 8));
  CHECK(default_c(3) == Q(1, 24));
}

TEST_CASE("Lech probe") {
  auto r = lech_gap_probe(2, 6, Q(1, 2), Q(1, 10));
  CHECK(r.lech_holds);
  CHECK(r.epsilon_holds);
  CHECK(r.inner_degree == 3);
  CHECK(r.min_ratio >= 1);
  REQUIRE(r.witness);
  CHECK(2 * Rational(mono::colength(*r.witness)) / mono::multiplicity(*r.witness) == r.min_ratio);
  for (int k = 1; k <= 6; ++k) {
    auto a = MonomialIdeal::maximal_power(2, k);
    CHECK(2 * Rational(mono::colength(a)) / mono::multiplicity(a) == Q(k + 1, k));
  }
  auto strip = ideal2({{1, 0}, {0, 7}});
  CHECK(2 * Rational(mono::colength(strip)) / mono::multiplicity(strip) == 2);
  auto s = lech_scan(2, {2, 3, 4, 5, 6}, Q(1, 2), Q(1, 10));
  CHECK(s.k0 == 2);
  auto n3 = lech_gap_probe(3, 3, Q(1, 2), Q(1, 10));
  CHECK(n3.lech_holds);
  LechOptions bad;
  bad.fault_mult_off_by_nfact = true;
  CHECK_FALSE(lech_gap_probe(2, 4, Q(1, 2), Q(1, 10), bad).lech_holds);
}

TEST_CASE("cone K-semistability, q-bound and witness") {
  auto in = [](std::vector<Vec> pts) { return models::make_fano_cone_input(pts, 1); };
  auto p2 = kss_via_cone(in(int_points({{0, 0}, {3, 0}, {0, 3}})));
  CHECK(p2.verdict == KssVerdict::semistable);
  CHECK(p2.oracle == true);
  CHECK(p2.hvol.exact);
  CHECK(p2.hvol.value == 9);
  auto p1 = kss_via_cone(in(int_points({{0}, {2}})));
  CHECK(p1.hvol.value == 2);
  CHECK(p1.bound == 2);
  auto p112 = kss_via_cone(in(int_points({{0, 0}, {4, 0}, {0, 2}})));
  CHECK(p112.verdict == KssVerdict::unstable);
  CHECK(p112.oracle == false);
  CHECK(p112.hvol.approx < 8 - 1e-3);

  auto q2 = q_bound_check(geom::convex_hull(int_points({{0, 0}, {3, 0}, {0, 3}})), 3);
  CHECK(q2.lhs == 27);
  CHECK(q2.equality);
  auto q11 = q_bound_check(geom::convex_hull(int_points({{0, 0}, {2, 0}, {0, 2}, {2, 2}})), 2);
  CHECK(q11.lhs == 16);
  CHECK(q11.holds);
  CHECK_FALSE(q11.equality);
  auto q1 = q_bound_check(geom::convex_hull(int_points({{0}, {2}})), 2);
  CHECK(q1.lhs == 4);
  CHECK(q1.rhs == 4);

  auto w = maxhvol_witness_check(models::make_monomial_pair(2, {Q(1, 2), Q(0)}));
  CHECK(w.log_discrepancy == 2);
  CHECK(w.volume == Q(1, 2));
  CHECK(w.value == 2);
  CHECK(maxhvol_witness_check(models::make_monomial_pair(3, {Q(1, 2), Q(0), Q(0)})).value == Q(27, 2));
  CHECK(maxhvol_witness_check(models::smooth_point(3)).value == 27);
  CHECK(maxhvol_witness_check(models::make_monomial_pair(3, {Q(0), Q(2, 3), Q(0)})).value == 9);
  CHECK(kind_of([] { maxhvol_witness_check(models::make_monomial_pair(2, {Q(1, 2), Q(1, 2)})); }) ==
        ErrorKind::invalid_input);
}
