// klt singularity models: monomial pairs (A^n, Σ a_i H_i), Q-Gorenstein toric
// cones, and affine cones over polarized toric Fanos.
#pragma once

#include <optional>
#include <vector>

#include "hatvol/geometry.hpp"
#include "hatvol/rational.hpp"

namespace hatvol::models {

/// (A^n, Σ a_i H_i) with H_i the coordinate hyperplanes, 0 <= a_i < 1.
struct MonomialPair {
  int n = 0;
  Vec coeffs;
};

MonomialPair make_monomial_pair(int n, Vec coeffs);
MonomialPair smooth_point(int n);

/// Pointed full-dimensional cone σ in N with Gorenstein covector m_σ,
/// ⟨m_σ, v⟩ = 1 on every primitive ray v.
struct ToricSingularity {
  geom::Cone sigma;
  Vec m_sigma;
  int n() const { return sigma.dim(); }
};

/// Throws invalid-cone (not pointed / not full-dimensional) or
/// not-q-gorenstein (no covector pairing to 1 with every ray).
ToricSingularity make_toric(int n, const std::vector<IntVec>& rays);

/// Lattice polytope Q in M (moment polytope of L = −r(K_Y + E)).
struct FanoConeInput {
  geom::ConvexBody polytope;
  Integer r = 1;
};

/// Throws invalid-input unless Q is a full-dimensional lattice polytope and r > 0.
FanoConeInput make_fano_cone_input(const std::vector<Vec>& polytope_points, const Integer& r);

/// Monomial: A = Σ (1 − a_i) w_i, weights must be positive (invalid-weight).
/// Toric: A = ⟨m_σ, ξ⟩, ξ must lie in int σ (boundary-valuation).
Rational log_discrepancy(const MonomialPair& model, const Vec& w);
Rational log_discrepancy(const ToricSingularity& model, const Vec& xi);

/// Monomial: 1 / Π w_i. Toric: n!·vol(σ^∨ ∩ {⟨ξ,·⟩ <= 1}) by an exact hull.
/// Boundary weights throw infinite-volume.
Rational valuation_volume(const MonomialPair& model, const Vec& w);
Rational valuation_volume(const ToricSingularity& model, const Vec& xi);

/// Fixed simplicial subdivision of σ^∨ used for fast volume evaluation:
/// n!·vol(σ^∨ ∩ {⟨ξ,·⟩ <= 1}) = Σ_s |det R_s| / Π_{j∈s} ⟨ξ, r_j⟩.
class DualConeVolume {
 public:
  explicit DualConeVolume(const geom::Cone& sigma);

  int n() const { return n_; }
  const std::vector<IntVec>& dual_rays() const { return rays_; }
  const std::vector<std::vector<int>>& simplices() const { return simplices_; }

  /// Exact value; ξ must pair positively with every dual ray.
  Rational operator()(const Vec& xi) const;
  /// Exact gradient in ξ.
  Vec gradient(const Vec& xi) const;
  /// Floating-point value, +inf when ξ is not strictly interior.
  double eval(const std::vector<double>& xi) const;

 private:
  int n_ = 0;
  std::vector<IntVec> rays_;
  std::vector<std::vector<int>> simplices_;
  std::vector<Integer> dets_;
};

/// σ^∨ = Cone(Q × {1}), σ its dual, m_σ solved and verified. Throws
/// not-q-gorenstein when no m_σ exists.
ToricSingularity cone_construction(const FanoConeInput& input);

/// (n−1)!·vol(Q)/r^n with n = dim Q + 1.
Rational fano_degree_bound(const FanoConeInput& input);

/// The unique interior lattice point at lattice distance 1 from every facet.
/// Throws not-anticanonical-polytope when there is none.
IntVec anticanonical_center(const geom::ConvexBody& q);

/// Barycenter criterion: true iff bary(Q) equals the anticanonical center.
bool toric_kss_oracle(const geom::ConvexBody& q_anticanonical);

}  // namespace hatvol::models
