// Exact rational polyhedral geometry in dimension <= 4: convex hulls,
// polyhedra with recession rays, rational cones and their duals, volumes,
// axis slices and lattice point counts of dilates.
//
// Everything here is exact. Axis indices are 0-based.
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "hatvol/rational.hpp"

namespace hatvol::geom {

inline constexpr int kMaxDim = 4;

/// ⟨normal, x⟩ <= offset with primitive integer normal. `incident` lists the
/// indices of the owning object's vertices that lie on the hyperplane.
struct Halfspace {
  IntVec normal;
  Rational offset;
  std::vector<int> incident;
};

/// Affine equation ⟨normal, x⟩ = offset (used for lower-dimensional bodies).
struct Equation {
  Vec normal;
  Rational offset;
};

/// A polytope given by its vertex set, with the facet system derived at
/// construction. Lower-dimensional bodies carry affine equations plus the
/// facets of the body inside its affine hull.
class ConvexBody {
 public:
  int dim() const { return dim_; }
  int affine_dim() const { return affine_dim_; }
  bool full_dimensional() const { return affine_dim_ == dim_; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<Halfspace>& facets() const { return facets_; }
  const std::vector<Equation>& equations() const { return equations_; }

  bool contains(const Vec& x) const;
  Rational min_coord(int axis) const;
  Rational max_coord(int axis) const;

 private:
  friend ConvexBody convex_hull(const std::vector<Vec>& points);
  int dim_ = 0;
  int affine_dim_ = 0;
  std::vector<Vec> vertices_;
  std::vector<Halfspace> facets_;
  std::vector<Equation> equations_;
  std::vector<int> chart_;  // coordinates on which projection is injective
  friend std::vector<std::vector<int>> triangulate(const ConvexBody& b);
};

/// Minimal vertex set of conv(points). Throws empty-input / unsupported-dimension.
ConvexBody convex_hull(const std::vector<Vec>& points);

/// Pulling triangulation of the body inside its affine hull; each simplex is a
/// list of affine_dim()+1 vertex indices.
std::vector<std::vector<int>> triangulate(const ConvexBody& b);

/// Euclidean volume; 0 for lower-dimensional bodies (see full_dimensional()).
Rational volume(const ConvexBody& b);

/// Centroid of a full-dimensional body.
Vec barycenter(const ConvexBody& b);

/// b ∩ {x_axis = t}, with the axis coordinate dropped. Throws empty-slice when
/// t lies outside the projection of b.
ConvexBody slice(const ConvexBody& b, int axis, const Rational& t);

/// #(k·b ∩ Z^n) by testing every integer point of the bounding box.
std::int64_t lattice_points(const ConvexBody& b, std::int64_t k);

struct CountingErrorRow {
  std::int64_t k;
  std::int64_t count;
  Rational error;  // |count / k^n − vol(b)|
};

struct CountingErrorReport {
  Rational volume;
  Rational epsilon;
  std::vector<CountingErrorRow> rows;
  /// Least k in range after which every reported error is <= epsilon.
  std::optional<std::int64_t> k0;
};

CountingErrorReport counting_error_probe(const ConvexBody& b, const std::vector<std::int64_t>& ks,
                                         const Rational& epsilon);

struct RiemannGap {
  Rational gap;    // |∫g − (1/k)·Σ g(t)|
  Rational bound;  // 2/k
  bool within_bound;
};

/// Samples must cover every t in [a,b] ∩ (1/k)Z, lie in [0,1] and be monotone.
RiemannGap monotone_riemann_gap(const std::map<Rational, Rational>& samples, const Rational& a,
                                const Rational& b, std::int64_t k, const Rational& integral);

/// Midpoint concavity of t ↦ vol(slice_t)^{1/(dim−1)} on a uniform grid of
/// `intervals`+1 points over the projection interval of the axis.
bool brunn_minkowski_probe(const ConvexBody& b, int axis, int intervals);

/// conv(vertices) + cone(rays), full-dimensional.
class Polyhedron {
 public:
  int dim() const { return dim_; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<IntVec>& rays() const { return rays_; }
  const std::vector<Halfspace>& facets() const { return facets_; }
  bool contains(const Vec& x) const;

 private:
  friend Polyhedron make_polyhedron(const std::vector<Vec>& vertices, const std::vector<IntVec>& rays);
  int dim_ = 0;
  std::vector<Vec> vertices_;
  std::vector<IntVec> rays_;
  std::vector<Halfspace> facets_;
};

Polyhedron make_polyhedron(const std::vector<Vec>& vertices, const std::vector<IntVec>& rays);

/// Rational polyhedral cone generated by primitive integer rays. For pointed
/// full-dimensional cones the rays are the extreme rays and `facet_normals`
/// are the primitive inward normals (⟨a, x⟩ >= 0 on the cone).
class Cone {
 public:
  int dim() const { return dim_; }
  const std::vector<IntVec>& rays() const { return rays_; }
  const std::vector<IntVec>& facet_normals() const { return facet_normals_; }
  bool pointed() const { return pointed_; }
  bool full_dimensional() const { return full_dimensional_; }

  bool contains(const Vec& x) const;
  /// Strictly positive on every facet normal (requires full-dimensional).
  bool contains_in_interior(const Vec& x) const;

  friend bool operator==(const Cone& a, const Cone& b) { return a.dim_ == b.dim_ && a.rays_ == b.rays_; }

 private:
  friend Cone make_cone(int dim, const std::vector<IntVec>& rays);
  int dim_ = 0;
  std::vector<IntVec> rays_;
  std::vector<IntVec> facet_normals_;
  bool pointed_ = false;
  bool full_dimensional_ = false;
};

/// Normalizes rays to primitive vectors, removes duplicates and (for pointed
/// full-dimensional cones) non-extreme rays; rays are kept sorted.
Cone make_cone(int dim, const std::vector<IntVec>& rays);

/// {u : ⟨u, v⟩ >= 0 for every ray v}. Throws invalid-cone unless c is pointed
/// and full-dimensional.
Cone dual_cone(const Cone& c);

/// Inward primitive normals of the facets of the full-dimensional cone
/// generated by `gens` in R^dim.
std::vector<IntVec> cone_facet_normals(const std::vector<IntVec>& gens, int dim);

}  // namespace hatvol::geom
