#include "hatvol/geometry.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "hatvol/errors.hpp"
#include "hatvol/linalg.hpp"

namespace hatvol::geom {

namespace {

using linalg::Matrix;

std::int64_t dot_int(const IntVec& a, const IntVec& b) {
  __int128 s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<__int128>(a[i]) * b[i];
  // Sign is all callers need; clamp keeps it exact for that purpose.
  if (s > INT64_MAX) return INT64_MAX;
  if (s < INT64_MIN) return INT64_MIN;
  return static_cast<std::int64_t>(s);
}

IntVec negated(IntVec v) {
  for (auto& x : v) x = -x;
  return v;
}

/// Representative of the line through v with first nonzero entry positive.
IntVec line_key(const IntVec& v) {
  for (auto x : v) {
    if (x > 0) return v;
    if (x < 0) return negated(v);
  }
  return v;
}

/// Integer generator of the homogenized ray through (p, 1).
IntVec homogenize(const Vec& p) {
  Vec h(p);
  h.emplace_back(1);
  return primitive_direction(h);
}

std::vector<Vec> sorted_unique(std::vector<Vec> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

Vec project(const Vec& p, const std::vector<int>& coords) {
  Vec out;
  out.reserve(coords.size());
  for (int c : coords) out.push_back(p[c]);
  return out;
}

void check_dim(int d) {
  if (d < 1) fail(ErrorKind::invalid_input, "points must have dimension >= 1");
  if (d > kMaxDim)
    fail(ErrorKind::unsupported_dimension,
         "dimension " + std::to_string(d) + " exceeds the supported maximum " + std::to_string(kMaxDim));
}

/// Pulling triangulation of a full-dimensional polytope from vertex 0.
std::vector<std::vector<int>> triangulate_full(const std::vector<Vec>& verts, const std::vector<Halfspace>& facets,
                                               int d) {
  if (d == 1) {
    auto [lo, hi] = std::minmax_element(verts.begin(), verts.end(),
                                        [](const Vec& a, const Vec& b) { return a[0] < b[0]; });
    return {{static_cast<int>(lo - verts.begin()), static_cast<int>(hi - verts.begin())}};
  }
  std::vector<std::vector<int>> out;
  for (const auto& f : facets) {
    if (std::find(f.incident.begin(), f.incident.end(), 0) != f.incident.end()) continue;
    int drop = 0;
    while (f.normal[drop] == 0) ++drop;
    std::vector<int> keep;
    for (int j = 0; j < d; ++j)
      if (j != drop) keep.push_back(j);
    std::vector<Vec> proj;
    proj.reserve(f.incident.size());
    for (int i : f.incident) proj.push_back(project(verts[i], keep));
    ConvexBody sub = convex_hull(proj);
    if (!sub.full_dimensional()) fail(ErrorKind::invariant_violation, "facet is not of codimension one");
    // map sub vertices back to body indices
    std::vector<int> back(sub.vertices().size());
    for (std::size_t s = 0; s < sub.vertices().size(); ++s) {
      for (std::size_t q = 0; q < proj.size(); ++q)
        if (proj[q] == sub.vertices()[s]) back[s] = f.incident[q];
    }
    for (const auto& simplex : triangulate(sub)) {
      std::vector<int> full{0};
      for (int s : simplex) full.push_back(back[s]);
      out.push_back(std::move(full));
    }
  }
  return out;
}

Rational simplex_volume_times_factorial(const std::vector<Vec>& verts, const std::vector<int>& simplex) {
  Matrix m;
  const Vec& base = verts[simplex[0]];
  for (std::size_t i = 1; i < simplex.size(); ++i) {
    Vec row = verts[simplex[i]];
    for (std::size_t j = 0; j < row.size(); ++j) row[j] -= base[j];
    m.push_back(std::move(row));
  }
  return abs(linalg::determinant(std::move(m)));
}

/// x_m^{1/p} >= (x_1^{1/p} + x_2^{1/p}) / 2 decided without floating point.
bool midpoint_concave(const Rational& v1, const Rational& vm, const Rational& v2, int p) {
  if (p == 1) return 2 * vm >= v1 + v2;
  if (vm == 0) return v1 == 0 && v2 == 0;
  const Rational r1 = v1 / vm;
  const Rational r2 = v2 / vm;
  auto exact_root = [p](const Rational& r, Rational& out) {
    Integer n, d;
    bool en = mpz_root(n.get_mpz_t(), r.get_num_mpz_t(), p) != 0;
    bool ed = mpz_root(d.get_mpz_t(), r.get_den_mpz_t(), p) != 0;
    if (en && ed) out = Rational(n, d);
    return en && ed;
  };
  Rational e1, e2;
  if (exact_root(r1, e1) && exact_root(r2, e2)) return e1 + e2 <= 2;
  // Dyadic enclosures of the roots, refined until the comparison separates.
  for (unsigned bits = 32; bits <= 1024; bits *= 2) {
    auto bounds = [&](const Rational& r) {
      Integer scaled_num;
      mpz_mul_2exp(scaled_num.get_mpz_t(), r.get_num_mpz_t(), bits * p);
      Integer q = scaled_num / r.get_den();
      Integer root;
      mpz_root(root.get_mpz_t(), q.get_mpz_t(), p);
      Integer scale;
      mpz_ui_pow_ui(scale.get_mpz_t(), 2, bits);
      Rational lo(root, scale);
      lo.canonicalize();
      Rational hi(root + 1, scale);
      hi.canonicalize();
      return std::pair{lo, hi};
    };
    auto [lo1, hi1] = bounds(r1);
    auto [lo2, hi2] = bounds(r2);
    if (hi1 + hi2 <= 2) return true;
    if (lo1 + lo2 > 2) return false;
  }
  return true;  // equal to within 2^-1024
}

}  // namespace

std::vector<IntVec> cone_facet_normals(const std::vector<IntVec>& gens, int dim) {
  if (linalg::rank(gens, dim) != dim) fail(ErrorKind::invalid_cone, "cone is not full-dimensional");
  const int m = dim - 1;
  const int count = static_cast<int>(gens.size());
  std::set<IntVec> seen;
  std::vector<IntVec> out;

  auto consider = [&](const std::vector<int>& idx) {
    Matrix rows;
    rows.reserve(idx.size());
    for (int i : idx) rows.push_back(to_vec(gens[i]));
    Matrix ns = linalg::nullspace(std::move(rows), dim);
    if (ns.size() != 1) return;
    IntVec a = primitive_direction(ns[0]);
    if (!seen.insert(line_key(a)).second) return;
    bool pos = false, neg = false;
    for (const auto& g : gens) {
      auto s = dot_int(a, g);
      pos |= s > 0;
      neg |= s < 0;
      if (pos && neg) return;
    }
    out.push_back(neg ? negated(a) : a);
  };

  std::vector<int> idx(m);
  std::iota(idx.begin(), idx.end(), 0);
  if (m > count) return out;
  while (true) {
    consider(idx);
    int i = m - 1;
    while (i >= 0 && idx[i] == count - m + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < m; ++j) idx[j] = idx[j - 1] + 1;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- ConvexBody

ConvexBody convex_hull(const std::vector<Vec>& points) {
  if (points.empty()) fail(ErrorKind::empty_input, "convex hull of an empty point set");
  const int d = static_cast<int>(points.front().size());
  check_dim(d);
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != d) fail(ErrorKind::invalid_input, "points of mixed dimension");

  std::vector<Vec> pts = sorted_unique(points);
  Matrix diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    Vec row = pts[i];
    for (int j = 0; j < d; ++j) row[j] -= pts[0][j];
    diffs.push_back(std::move(row));
  }
  Matrix reduced = diffs;
  std::vector<int> chart = linalg::rref(reduced, d);
  const int r = static_cast<int>(chart.size());

  ConvexBody body;
  body.dim_ = d;
  body.affine_dim_ = r;
  body.chart_ = chart;

  if (r < d) {
    Matrix eq_basis = diffs.empty() ? Matrix{} : linalg::nullspace(diffs, d);
    if (diffs.empty()) {
      for (int j = 0; j < d; ++j) {
        Vec e(d, Rational(0));
        e[j] = 1;
        eq_basis.push_back(std::move(e));
      }
    }
    for (auto& e : eq_basis) body.equations_.push_back({e, dot(e, pts[0])});
    if (r == 0) {
      body.vertices_ = {pts[0]};
      return body;
    }
    std::vector<Vec> proj;
    proj.reserve(pts.size());
    for (const auto& p : pts) proj.push_back(project(p, chart));
    ConvexBody sub = convex_hull(proj);
    std::vector<int> original(sub.vertices().size());
    for (std::size_t s = 0; s < sub.vertices().size(); ++s)
      for (std::size_t q = 0; q < proj.size(); ++q)
        if (proj[q] == sub.vertices()[s]) original[s] = static_cast<int>(q);
    // pts is sorted and original[] follows sub order; rebuild in sorted order.
    std::vector<int> order(original.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return original[x] < original[y]; });
    std::vector<int> new_index(original.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      body.vertices_.push_back(pts[original[order[i]]]);
      new_index[order[i]] = static_cast<int>(i);
    }
    for (const auto& f : sub.facets()) {
      Halfspace h;
      h.normal.assign(d, 0);
      for (int c = 0; c < r; ++c) h.normal[chart[c]] = f.normal[c];
      h.offset = f.offset;
      for (int i : f.incident) h.incident.push_back(new_index[i]);
      std::sort(h.incident.begin(), h.incident.end());
      body.facets_.push_back(std::move(h));
    }
    return body;
  }

  std::vector<IntVec> gens;
  gens.reserve(pts.size());
  for (const auto& p : pts) gens.push_back(homogenize(p));
  std::vector<Halfspace> raw;
  for (const auto& n : cone_facet_normals(gens, d + 1)) {
    IntVec alpha(n.begin(), n.begin() + d);
    std::int64_t g = 0;
    for (auto x : alpha) g = std::gcd(g, x < 0 ? -x : x);
    if (g == 0) continue;
    Halfspace h;
    h.normal.resize(d);
    for (int j = 0; j < d; ++j) h.normal[j] = -alpha[j] / g;
    h.offset = Rational(static_cast<long>(n[d]), static_cast<long>(g));
    h.offset.canonicalize();
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (dot(h.normal, pts[i]) == h.offset) h.incident.push_back(static_cast<int>(i));
    raw.push_back(std::move(h));
  }

  std::vector<int> new_index(pts.size(), -1);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<IntVec> normals;
    for (const auto& h : raw)
      if (std::binary_search(h.incident.begin(), h.incident.end(), static_cast<int>(i))) normals.push_back(h.normal);
    if (linalg::rank(normals, d) == d) {
      new_index[i] = static_cast<int>(body.vertices_.size());
      body.vertices_.push_back(pts[i]);
    }
  }
  for (auto& h : raw) {
    std::vector<int> inc;
    for (int i : h.incident)
      if (new_index[i] >= 0) inc.push_back(new_index[i]);
    h.incident = std::move(inc);
    body.facets_.push_back(std::move(h));
  }
  return body;
}

bool ConvexBody::contains(const Vec& x) const {
  if (static_cast<int>(x.size()) != dim_) return false;
  for (const auto& e : equations_)
    if (dot(e.normal, x) != e.offset) return false;
  for (const auto& f : facets_)
    if (dot(f.normal, x) > f.offset) return false;
  return true;
}

Rational ConvexBody::min_coord(int axis) const {
  Rational m = vertices_.front()[axis];
  for (const auto& v : vertices_)
    if (v[axis] < m) m = v[axis];
  return m;
}

Rational ConvexBody::max_coord(int axis) const {
  Rational m = vertices_.front()[axis];
  for (const auto& v : vertices_)
    if (v[axis] > m) m = v[axis];
  return m;
}

std::vector<std::vector<int>> triangulate(const ConvexBody& b) {
  if (b.affine_dim() == 0) return {{0}};
  if (b.full_dimensional()) return triangulate_full(b.vertices(), b.facets(), b.dim());
  std::vector<Vec> proj;
  for (const auto& v : b.vertices()) proj.push_back(project(v, b.chart_));
  ConvexBody sub = convex_hull(proj);
  std::vector<int> back(sub.vertices().size());
  for (std::size_t s = 0; s < sub.vertices().size(); ++s)
    for (std::size_t q = 0; q < proj.size(); ++q)
      if (proj[q] == sub.vertices()[s]) back[s] = static_cast<int>(q);
  auto simplices = triangulate(sub);
  for (auto& s : simplices)
    for (auto& i : s) i = back[i];
  return simplices;
}

Rational volume(const ConvexBody& b) {
  if (!b.full_dimensional()) return 0;
  Rational total = 0;
  for (const auto& s : triangulate(b)) total += simplex_volume_times_factorial(b.vertices(), s);
  return total / Rational(factorial(b.dim()));
}

Vec barycenter(const ConvexBody& b) {
  if (!b.full_dimensional()) fail(ErrorKind::invalid_input, "barycenter of a lower-dimensional body");
  const int d = b.dim();
  Vec acc(d, Rational(0));
  Rational total = 0;
  for (const auto& s : triangulate(b)) {
    Rational w = simplex_volume_times_factorial(b.vertices(), s);
    total += w;
    for (int i : s)
      for (int j = 0; j < d; ++j) acc[j] += w * b.vertices()[i][j] / (d + 1);
  }
  for (auto& x : acc) x /= total;
  return acc;
}

ConvexBody slice(const ConvexBody& b, int axis, const Rational& t) {
  if (b.dim() < 2) fail(ErrorKind::invalid_input, "slicing needs dimension >= 2");
  if (axis < 0 || axis >= b.dim()) fail(ErrorKind::invalid_input, "axis out of range");
  if (t < b.min_coord(axis) || t > b.max_coord(axis))
    fail(ErrorKind::empty_slice, "t = " + to_string(t) + " outside the projection interval");
  std::vector<Vec> pts;
  const auto& vs = b.vertices();
  auto drop = [axis](const Vec& p) {
    Vec q;
    for (std::size_t j = 0; j < p.size(); ++j)
      if (static_cast<int>(j) != axis) q.push_back(p[j]);
    return q;
  };
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i][axis] == t) pts.push_back(drop(vs[i]));
    for (std::size_t j = 0; j < vs.size(); ++j) {
      if (!(vs[i][axis] < t && t < vs[j][axis])) continue;
      Rational lambda = (t - vs[i][axis]) / (vs[j][axis] - vs[i][axis]);
      Vec p(vs[i]);
      for (std::size_t c = 0; c < p.size(); ++c) p[c] += lambda * (vs[j][c] - vs[i][c]);
      pts.push_back(drop(p));
    }
  }
  return convex_hull(pts);
}

// ------------------------------------------------------------ lattice points

namespace {

struct IntConstraint {
  std::vector<Integer> coeffs;
  Integer rhs;
  bool equality;
};

}  // namespace

std::int64_t lattice_points(const ConvexBody& b, std::int64_t k) {
  if (k < 1) fail(ErrorKind::invalid_input, "dilation factor must be >= 1");
  const int d = b.dim();
  const Rational kk(static_cast<long>(k));
  std::vector<std::int64_t> lo(d), hi(d);
  for (int j = 0; j < d; ++j) {
    lo[j] = to_int64(ceil(kk * b.min_coord(j)).get_num());
    hi[j] = to_int64(floor(kk * b.max_coord(j)).get_num());
    if (lo[j] > hi[j]) return 0;
  }

  std::vector<IntConstraint> cons;
  for (const auto& f : b.facets()) {
    IntConstraint c;
    for (auto a : f.normal) c.coeffs.push_back(Integer(static_cast<long>(a)) * f.offset.get_den());
    c.rhs = f.offset.get_num() * k;
    c.equality = false;
    cons.push_back(std::move(c));
  }
  for (const auto& e : b.equations()) {
    Integer l = e.offset.get_den();
    for (const auto& x : e.normal) l = lcm(l, Integer(x.get_den()));
    IntConstraint c;
    for (const auto& x : e.normal) c.coeffs.push_back(x.get_num() * (l / x.get_den()));
    c.rhs = e.offset.get_num() * (l / e.offset.get_den()) * k;
    c.equality = true;
    cons.push_back(std::move(c));
  }

  bool fast = true;
  const Integer coeff_cap = Integer(1) << 30;
  const Integer rhs_cap = Integer(1) << 60;
  for (const auto& c : cons) {
    for (const auto& a : c.coeffs) fast &= (abs(a) < coeff_cap);
    fast &= (abs(c.rhs) < rhs_cap);
  }

  std::vector<std::int64_t> x(lo);
  std::int64_t count = 0;
  if (fast) {
    std::vector<std::vector<std::int64_t>> coeffs;
    std::vector<std::int64_t> rhs;
    std::vector<bool> eq;
    for (const auto& c : cons) {
      std::vector<std::int64_t> row;
      for (const auto& a : c.coeffs) row.push_back(a.get_si());
      coeffs.push_back(std::move(row));
      rhs.push_back(c.rhs.get_si());
      eq.push_back(c.equality);
    }
    while (true) {
      bool inside = true;
      for (std::size_t i = 0; i < coeffs.size() && inside; ++i) {
        __int128 s = 0;
        for (int j = 0; j < d; ++j) s += static_cast<__int128>(coeffs[i][j]) * x[j];
        inside = eq[i] ? (s == rhs[i]) : (s <= rhs[i]);
      }
      count += inside;
      int j = d - 1;
      while (j >= 0 && x[j] == hi[j]) --j;
      if (j < 0) break;
      ++x[j];
      for (int r = j + 1; r < d; ++r) x[r] = lo[r];
    }
    return count;
  }
  while (true) {
    bool inside = true;
    for (std::size_t i = 0; i < cons.size() && inside; ++i) {
      Integer s = 0;
      for (int j = 0; j < d; ++j) s += cons[i].coeffs[j] * static_cast<long>(x[j]);
      inside = cons[i].equality ? (s == cons[i].rhs) : (s <= cons[i].rhs);
    }
    count += inside;
    int j = d - 1;
    while (j >= 0 && x[j] == hi[j]) --j;
    if (j < 0) break;
    ++x[j];
    for (int r = j + 1; r < d; ++r) x[r] = lo[r];
  }
  return count;
}

CountingErrorReport counting_error_probe(const ConvexBody& b, const std::vector<std::int64_t>& ks,
                                         const Rational& epsilon) {
  if (!b.full_dimensional()) fail(ErrorKind::invalid_input, "counting probe needs a full-dimensional body");
  if (ks.empty()) fail(ErrorKind::invalid_input, "empty k range");
  for (std::size_t i = 1; i < ks.size(); ++i)
    if (ks[i] <= ks[i - 1]) fail(ErrorKind::invalid_input, "k range must be increasing");
  CountingErrorReport report;
  report.volume = volume(b);
  report.epsilon = epsilon;
  for (auto k : ks) {
    std::int64_t c = lattice_points(b, k);
    Rational kn = pow(Rational(static_cast<long>(k)), b.dim());
    report.rows.push_back({k, c, abs(Rational(static_cast<long>(c)) / kn - report.volume)});
  }
  std::size_t first_good = report.rows.size();
  while (first_good > 0 && report.rows[first_good - 1].error <= epsilon) --first_good;
  if (first_good < report.rows.size()) report.k0 = report.rows[first_good].k;
  return report;
}

RiemannGap monotone_riemann_gap(const std::map<Rational, Rational>& samples, const Rational& a, const Rational& b,
                                std::int64_t k, const Rational& integral) {
  if (k < 1) fail(ErrorKind::invalid_input, "k must be >= 1");
  if (b < a) fail(ErrorKind::invalid_input, "empty interval");
  const Rational kk(static_cast<long>(k));
  const std::int64_t first = to_int64(ceil(kk * a).get_num());
  const std::int64_t last = to_int64(floor(kk * b).get_num());
  std::vector<Rational> values;
  for (std::int64_t j = first; j <= last; ++j) {
    Rational t(static_cast<long>(j), static_cast<long>(k));
    t.canonicalize();
    auto it = samples.find(t);
    if (it == samples.end()) fail(ErrorKind::invalid_input, "missing sample at t = " + to_string(t));
    if (it->second < 0 || it->second > 1)
      fail(ErrorKind::invalid_input, "sample outside [0,1] at t = " + to_string(t));
    values.push_back(it->second);
  }
  bool up = true, down = true;
  for (std::size_t i = 1; i < values.size(); ++i) {
    up &= values[i - 1] <= values[i];
    down &= values[i - 1] >= values[i];
  }
  if (!up && !down) fail(ErrorKind::monotonicity_violation, "samples are not monotone");
  Rational sum = 0;
  for (const auto& v : values) sum += v;
  RiemannGap out;
  out.gap = abs(integral - sum / kk);
  out.bound = Rational(2) / kk;
  out.within_bound = out.gap <= out.bound;
  return out;
}

bool brunn_minkowski_probe(const ConvexBody& b, int axis, int intervals) {
  if (!b.full_dimensional() || b.dim() < 2)
    fail(ErrorKind::invalid_input, "Brunn-Minkowski probe needs a full-dimensional body of dimension >= 2");
  if (intervals < 2) fail(ErrorKind::invalid_input, "grid needs at least two intervals");
  const Rational lo = b.min_coord(axis), hi = b.max_coord(axis);
  std::vector<Rational> vols;
  for (int i = 0; i <= intervals; ++i) {
    Rational t = lo + (hi - lo) * frac(i, intervals);
    vols.push_back(volume(slice(b, axis, t)));
  }
  const int p = b.dim() - 1;
  for (int mid = 1; mid < intervals; ++mid)
    for (int h = 1; mid - h >= 0 && mid + h <= intervals; ++h)
      if (!midpoint_concave(vols[mid - h], vols[mid], vols[mid + h], p)) return false;
  return true;
}

// ----------------------------------------------------------------- Polyhedron

Polyhedron make_polyhedron(const std::vector<Vec>& vertices, const std::vector<IntVec>& rays) {
  if (vertices.empty()) fail(ErrorKind::empty_input, "polyhedron needs at least one vertex");
  const int d = static_cast<int>(vertices.front().size());
  check_dim(d);
  Polyhedron poly;
  poly.dim_ = d;
  std::vector<Vec> pts = sorted_unique(vertices);
  std::set<IntVec> ray_set;
  for (const auto& r : rays) {
    if (static_cast<int>(r.size()) != d) fail(ErrorKind::invalid_input, "ray of wrong dimension");
    ray_set.insert(primitive_direction(r));
  }
  poly.rays_.assign(ray_set.begin(), ray_set.end());

  std::vector<IntVec> gens;
  for (const auto& p : pts) gens.push_back(homogenize(p));
  for (const auto& r : poly.rays_) {
    IntVec g(r);
    g.push_back(0);
    gens.push_back(std::move(g));
  }
  if (linalg::rank(gens, d + 1) != d + 1) fail(ErrorKind::invalid_input, "polyhedron is not full-dimensional");

  std::vector<Halfspace> raw;
  for (const auto& n : cone_facet_normals(gens, d + 1)) {
    IntVec alpha(n.begin(), n.begin() + d);
    std::int64_t g = 0;
    for (auto x : alpha) g = std::gcd(g, x < 0 ? -x : x);
    if (g == 0) continue;  // the face at infinity
    Halfspace h;
    h.normal.resize(d);
    for (int j = 0; j < d; ++j) h.normal[j] = -alpha[j] / g;
    h.offset = Rational(static_cast<long>(n[d]), static_cast<long>(g));
    h.offset.canonicalize();
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (dot(h.normal, pts[i]) == h.offset) h.incident.push_back(static_cast<int>(i));
    raw.push_back(std::move(h));
  }
  std::vector<int> new_index(pts.size(), -1);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    std::vector<IntVec> normals;
    for (const auto& h : raw)
      if (std::binary_search(h.incident.begin(), h.incident.end(), static_cast<int>(i))) normals.push_back(h.normal);
    if (linalg::rank(normals, d) == d) {
      new_index[i] = static_cast<int>(poly.vertices_.size());
      poly.vertices_.push_back(pts[i]);
    }
  }
  for (auto& h : raw) {
    std::vector<int> inc;
    for (int i : h.incident)
      if (new_index[i] >= 0) inc.push_back(new_index[i]);
    h.incident = std::move(inc);
    poly.facets_.push_back(std::move(h));
  }
  return poly;
}

bool Polyhedron::contains(const Vec& x) const {
  for (const auto& f : facets_)
    if (dot(f.normal, x) > f.offset) return false;
  return true;
}

// ----------------------------------------------------------------------- Cone

Cone make_cone(int dim, const std::vector<IntVec>& rays) {
  check_dim(dim);
  if (rays.empty()) fail(ErrorKind::invalid_cone, "cone needs at least one ray");
  std::set<IntVec> unique;
  for (const auto& r : rays) {
    if (static_cast<int>(r.size()) != dim) fail(ErrorKind::invalid_input, "ray of wrong dimension");
    unique.insert(primitive_direction(r));
  }
  Cone c;
  c.dim_ = dim;
  std::vector<IntVec> rs(unique.begin(), unique.end());
  linalg::Matrix m = linalg::to_matrix(rs);
  std::vector<int> pivots = linalg::rref(m, dim);
  const int span = static_cast<int>(pivots.size());
  c.full_dimensional_ = span == dim;

  if (c.full_dimensional_) {
    c.facet_normals_ = cone_facet_normals(rs, dim);
    c.pointed_ = linalg::rank(c.facet_normals_, dim) == dim;
    if (c.pointed_) {
      std::vector<IntVec> extreme;
      for (const auto& r : rs) {
        std::vector<IntVec> tight;
        for (const auto& a : c.facet_normals_)
          if (dot_int(a, r) == 0) tight.push_back(a);
        if (linalg::rank(tight, dim) >= dim - 1) extreme.push_back(r);
      }
      rs = std::move(extreme);
    }
  } else {
    std::vector<IntVec> proj;
    for (const auto& r : rs) {
      IntVec p;
      for (int col : pivots) p.push_back(r[col]);
      proj.push_back(primitive_direction(p));
    }
    auto normals = cone_facet_normals(proj, span);
    c.pointed_ = linalg::rank(normals, span) == span;
  }
  c.rays_ = std::move(rs);
  return c;
}

bool Cone::contains(const Vec& x) const {
  if (!full_dimensional_) fail(ErrorKind::invalid_cone, "membership test needs a full-dimensional cone");
  for (const auto& a : facet_normals_)
    if (dot(a, x) < 0) return false;
  return true;
}

bool Cone::contains_in_interior(const Vec& x) const {
  if (!full_dimensional_) fail(ErrorKind::invalid_cone, "interior test needs a full-dimensional cone");
  for (const auto& a : facet_normals_)
    if (dot(a, x) <= 0) return false;
  return true;
}

Cone dual_cone(const Cone& c) {
  if (!c.full_dimensional()) fail(ErrorKind::invalid_cone, "dual of a lower-dimensional cone is not pointed");
  if (!c.pointed()) fail(ErrorKind::invalid_cone, "dual of a non-pointed cone is not full-dimensional");
  return make_cone(c.dim(), c.facet_normals());
}

}  // namespace hatvol::geom
