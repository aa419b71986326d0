#include "hatvol/models.hpp"

#include <cmath>
#include <limits>

#include "hatvol/errors.hpp"
#include "hatvol/linalg.hpp"

namespace hatvol::models {

namespace {

void check_weight_size(const Vec& w, int n) {
  if (static_cast<int>(w.size()) != n)
    fail(ErrorKind::invalid_weight, "weight has " + std::to_string(w.size()) + " entries, model dimension is " +
                                        std::to_string(n));
}

}  // namespace

MonomialPair make_monomial_pair(int n, Vec coeffs) {
  if (n < 1) fail(ErrorKind::invalid_input, "monomial pair needs n >= 1");
  if (static_cast<int>(coeffs.size()) != n)
    fail(ErrorKind::invalid_input, "expected " + std::to_string(n) + " coefficients");
  for (const auto& a : coeffs)
    if (a < 0 || a >= 1) fail(ErrorKind::invalid_input, "coefficient " + to_string(a) + " outside [0,1) (not klt)");
  return MonomialPair{n, std::move(coeffs)};
}

MonomialPair smooth_point(int n) { return make_monomial_pair(n, Vec(n, Rational(0))); }

ToricSingularity make_toric(int n, const std::vector<IntVec>& rays) {
  geom::Cone sigma = geom::make_cone(n, rays);
  if (!sigma.full_dimensional()) fail(ErrorKind::invalid_cone, "cone is not full-dimensional");
  if (!sigma.pointed()) fail(ErrorKind::invalid_cone, "cone is not pointed");
  auto m = linalg::solve_unique(linalg::to_matrix(sigma.rays()), Vec(sigma.rays().size(), Rational(1)));
  if (!m) fail(ErrorKind::not_q_gorenstein, "no covector pairs to 1 with every ray");
  return ToricSingularity{std::move(sigma), std::move(*m)};
}

FanoConeInput make_fano_cone_input(const std::vector<Vec>& polytope_points, const Integer& r) {
  if (r <= 0) fail(ErrorKind::invalid_input, "r must be a positive integer");
  auto q = geom::convex_hull(polytope_points);
  if (!q.full_dimensional()) fail(ErrorKind::invalid_input, "polytope is not full-dimensional");
  if (q.dim() + 1 > geom::kMaxDim)
    fail(ErrorKind::unsupported_dimension, "cone over a polytope of dimension " + std::to_string(q.dim()) +
                                               " exceeds dimension " + std::to_string(geom::kMaxDim));
  for (const auto& v : q.vertices())
    for (const auto& x : v)
      if (x.get_den() != 1) fail(ErrorKind::invalid_input, "polytope vertex " + to_string(v) + " is not a lattice point");
  return FanoConeInput{std::move(q), r};
}

// ------------------------------------------------------- discrepancy, volume

Rational log_discrepancy(const MonomialPair& model, const Vec& w) {
  check_weight_size(w, model.n);
  Rational a = 0;
  for (int i = 0; i < model.n; ++i) {
    if (w[i] <= 0) fail(ErrorKind::invalid_weight, "weights must be positive");
    a += (1 - model.coeffs[i]) * w[i];
  }
  return a;
}

Rational log_discrepancy(const ToricSingularity& model, const Vec& xi) {
  check_weight_size(xi, model.n());
  if (!model.sigma.contains_in_interior(xi))
    fail(ErrorKind::boundary_valuation, "weight " + to_string(xi) + " is not in the interior of the cone");
  return dot(model.m_sigma, xi);
}

Rational valuation_volume(const MonomialPair& model, const Vec& w) {
  check_weight_size(w, model.n);
  Rational p = 1;
  for (const auto& x : w) {
    if (x < 0) fail(ErrorKind::invalid_weight, "weights must be non-negative");
    if (x == 0) fail(ErrorKind::infinite_volume, "zero weight gives infinite volume");
    p *= x;
  }
  return 1 / p;
}

Rational valuation_volume(const ToricSingularity& model, const Vec& xi) {
  check_weight_size(xi, model.n());
  if (!model.sigma.contains(xi)) fail(ErrorKind::invalid_weight, "weight " + to_string(xi) + " lies outside the cone");
  if (!model.sigma.contains_in_interior(xi))
    fail(ErrorKind::infinite_volume, "boundary weight " + to_string(xi) + " has infinite volume");
  const int n = model.n();
  std::vector<Vec> pts{Vec(n, Rational(0))};
  const geom::Cone dual = geom::dual_cone(model.sigma);
  for (const auto& r : dual.rays()) {
    Rational t = dot(r, xi);
    Vec p = to_vec(r);
    for (auto& x : p) x /= t;
    pts.push_back(std::move(p));
  }
  return Rational(factorial(n)) * geom::volume(geom::convex_hull(pts));
}

// ---------------------------------------------------------- DualConeVolume

DualConeVolume::DualConeVolume(const geom::Cone& sigma) : n_(sigma.dim()) {
  rays_ = geom::dual_cone(sigma).rays();
  Vec xi0(n_, Rational(0));
  for (const auto& v : sigma.rays())
    for (int i = 0; i < n_; ++i) xi0[i] += v[i];
  std::vector<Vec> section;
  for (const auto& r : rays_) {
    Vec p = to_vec(r);
    Rational t = dot(r, xi0);
    ensure(t > 0, "dual ray does not pair positively with the interior point");
    for (auto& x : p) x /= t;
    section.push_back(std::move(p));
  }
  auto body = geom::convex_hull(section);
  std::vector<int> ray_of(body.vertices().size(), -1);
  for (std::size_t i = 0; i < body.vertices().size(); ++i)
    for (std::size_t j = 0; j < section.size(); ++j)
      if (body.vertices()[i] == section[j]) ray_of[i] = static_cast<int>(j);
  for (int j : ray_of) ensure(j >= 0, "cross-section vertex is not a dual ray");
  for (const auto& s : geom::triangulate(body)) {
    std::vector<int> simplex;
    std::vector<IntVec> rows;
    for (int i : s) {
      simplex.push_back(ray_of[i]);
      rows.push_back(rays_[ray_of[i]]);
    }
    Rational d = abs(linalg::determinant(rows));
    ensure(d != 0, "degenerate simplicial cone in the dual subdivision");
    simplices_.push_back(std::move(simplex));
    dets_.push_back(d.get_num());
  }
}

Rational DualConeVolume::operator()(const Vec& xi) const {
  Rational total = 0;
  for (std::size_t s = 0; s < simplices_.size(); ++s) {
    Rational prod = 1;
    for (int j : simplices_[s]) prod *= dot(rays_[j], xi);
    ensure(prod > 0, "weight is not interior to the cone");
    total += Rational(dets_[s]) / prod;
  }
  return total;
}

Vec DualConeVolume::gradient(const Vec& xi) const {
  Vec grad(n_, Rational(0));
  for (std::size_t s = 0; s < simplices_.size(); ++s) {
    Rational prod = 1;
    std::vector<Rational> pairings;
    for (int j : simplices_[s]) {
      pairings.push_back(dot(rays_[j], xi));
      prod *= pairings.back();
    }
    ensure(prod > 0, "weight is not interior to the cone");
    Rational term = Rational(dets_[s]) / prod;
    for (std::size_t t = 0; t < simplices_[s].size(); ++t) {
      const IntVec& r = rays_[simplices_[s][t]];
      for (int i = 0; i < n_; ++i)
        if (r[i] != 0) grad[i] -= term * static_cast<long>(r[i]) / pairings[t];
    }
  }
  return grad;
}

double DualConeVolume::eval(const std::vector<double>& xi) const {
  double total = 0;
  for (std::size_t s = 0; s < simplices_.size(); ++s) {
    double prod = 1;
    for (int j : simplices_[s]) {
      double p = 0;
      for (int i = 0; i < n_; ++i) p += static_cast<double>(rays_[j][i]) * xi[i];
      if (!(p > 0)) return std::numeric_limits<double>::infinity();
      prod *= p;
    }
    total += dets_[s].get_d() / prod;
  }
  return total;
}

// ------------------------------------------------------------- Fano cones

ToricSingularity cone_construction(const FanoConeInput& input) {
  const int d = input.polytope.dim();
  const int n = d + 1;
  std::vector<IntVec> gens;
  for (const auto& v : input.polytope.vertices()) {
    IntVec g;
    for (const auto& x : v) g.push_back(to_int64(x.get_num()));
    g.push_back(1);
    gens.push_back(std::move(g));
  }
  geom::Cone sigma_dual = geom::make_cone(n, gens);
  geom::Cone sigma = geom::dual_cone(sigma_dual);
  ToricSingularity model = make_toric(n, sigma.rays());
  ensure(geom::dual_cone(model.sigma) == sigma_dual, "cone construction does not round-trip through duality");
  for (const auto& v : model.sigma.rays()) ensure(dot(v, model.m_sigma) == 1, "Gorenstein covector check failed");
  return model;
}

Rational fano_degree_bound(const FanoConeInput& input) {
  const int n = input.polytope.dim() + 1;
  Integer rn;
  mpz_pow_ui(rn.get_mpz_t(), input.r.get_mpz_t(), n);
  return Rational(factorial(n - 1)) * geom::volume(input.polytope) / Rational(rn);
}

IntVec anticanonical_center(const geom::ConvexBody& q) {
  if (!q.full_dimensional()) fail(ErrorKind::not_anticanonical_polytope, "polytope is not full-dimensional");
  const int d = q.dim();
  std::vector<std::int64_t> lo(d), hi(d);
  for (int i = 0; i < d; ++i) {
    lo[i] = to_int64(ceil(q.min_coord(i)).get_num());
    hi[i] = to_int64(floor(q.max_coord(i)).get_num());
  }
  IntVec p(lo);
  while (true) {
    bool ok = true;
    Vec pv = to_vec(p);
    for (const auto& f : q.facets())
      if (f.offset - dot(f.normal, pv) != 1) {
        ok = false;
        break;
      }
    if (ok) return p;
    int j = d - 1;
    while (j >= 0 && p[j] == hi[j]) p[j] = lo[j], --j;
    if (j < 0) break;
    ++p[j];
  }
  fail(ErrorKind::not_anticanonical_polytope, "no interior lattice point at lattice distance 1 from every facet");
}

bool toric_kss_oracle(const geom::ConvexBody& q) {
  IntVec p = anticanonical_center(q);
  return geom::barycenter(q) == to_vec(p);
}

}  // namespace hatvol::models
