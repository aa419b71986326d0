// Invariant engine: lct by exact LP, normalized multiplicities, normalized
// volumes (closed form and numeric over the toric slice), the normalized
// colength functional and its scans, and the theorem probes.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hatvol/geometry.hpp"
#include "hatvol/models.hpp"
#include "hatvol/monomial.hpp"
#include "hatvol/rational.hpp"

namespace hatvol::inv {

using models::FanoConeInput;
using models::MonomialPair;
using models::ToricSingularity;
using mono::EnumerationBudget;
using mono::Exponent;
using mono::MonomialIdeal;

// ------------------------------------------------------------------- lct

struct LctResult {
  Rational value;
  Vec minimizing_weight;               // vertex of {w >= 0 : ⟨w,u⟩ >= 1}
  std::vector<Exponent> active;        // generators with ⟨w,u⟩ = 1
  Rational howald;                     // facet formula, equal to value
};

/// min Σ(1−a_i)w_i subject to ⟨w,u⟩ >= 1 for every generator u, w >= 0,
/// solved through its dual by the exact simplex method and cross-checked
/// against the Newton-facet formula. Throws lct-undefined for the unit ideal.
LctResult lct(const MonomialPair& model, const MonomialIdeal& a);

/// min over Newton facets ⟨α,u⟩ >= β with β > 0 of ⟨α, 1−a⟩ / β.
Rational lct_howald(const MonomialPair& model, const MonomialIdeal& a);

/// lct^n · e(a).
Rational normalized_multiplicity(const MonomialPair& model, const MonomialIdeal& a);

// -------------------------------------------------------- normalized volume

enum class Method { closed_form, exhaustive, numeric_slice, valuation_grid };
const char* method_name(Method m);

struct NormalizedVolumeResult {
  bool exact = false;
  Rational value;              // meaningful when exact
  double approx = 0;           // always set
  std::optional<double> lower_bound;  // convexity bracket for inexact values
  Method method = Method::numeric_slice;
  Vec minimizer;               // normalized to A = 1 when exact
  std::vector<double> minimizer_approx;
  std::string certificate;
  int iterations = 0;
};

NormalizedVolumeResult hvol_closed_form(const MonomialPair& model);

struct ToricOptions {
  double tolerance = 1e-9;
  int max_iters = 20000;
  int grid_depth = 6;
  int max_denominator = 64;
};

/// Minimizes ⟨m,ξ⟩^n·vol(ξ) over int σ, where m is the log discrepancy
/// covector (⟨m,v⟩ > 0 on every ray).
NormalizedVolumeResult hvol_numeric(const geom::Cone& sigma, const Vec& m, const ToricOptions& opts = {});
NormalizedVolumeResult hvol_toric(const ToricSingularity& model, const ToricOptions& opts = {});
/// The monomial pair as the orthant with covector (1 − a_i).
NormalizedVolumeResult hvol_numeric(const MonomialPair& model, const ToricOptions& opts = {});

/// A(v)^n · vol(v) evaluated exactly.
Rational hvol_of(const MonomialPair& model, const Vec& w);
Rational hvol_of(const ToricSingularity& model, const Vec& xi);

// ------------------------------------------------------ normalized colength

enum class ColengthMode { exact, upper };
const char* mode_name(ColengthMode m);

struct ColengthOptions {
  EnumerationBudget budget;
  int weight_grid = 4;  // upper mode: w ∈ {1..W}^n
  int threads = 1;
};

struct ColengthValue {
  Rational value;  // n!·lct^n·ℓ
  MonomialIdeal argmin;
  std::int64_t colength = 0;
  Rational lct;
  std::size_t candidates = 0;  // ideals evaluated
  Vec weight;                  // upper mode: weight of the valuation ideal
  Rational level;              // upper mode: its level j
};

/// Default scan constant e(m)/(4·n!) = 1/(4·n!).
Rational default_c(int n);

/// n!·min lct^n·ℓ over m^k ⊆ a ⊆ m with ℓ >= c·k^n (exact mode: every
/// monomial ideal; upper mode: valuation ideals on a weight grid). Ties go to
/// the lexicographically least staircase. Throws infeasible-c.
ColengthValue normalized_colength(const MonomialPair& model, const Rational& c, int k, ColengthMode mode,
                                  const ColengthOptions& opts = {});

struct ScanRow {
  int k;
  ColengthValue v;
  bool power_argmin;  // argmin is m^k
};

struct ColengthScanResult {
  Rational c;
  ColengthMode mode;
  std::vector<ScanRow> rows;
  Rational liminf_estimate;  // min over the last half of the rows
  Rational reference_hvol;
  bool from_above;           // every row value >= reference
};

ColengthScanResult colength_convergence_scan(const MonomialPair& model, const Rational& c, const std::vector<int>& ks,
                                             ColengthMode mode, const ColengthOptions& opts = {});

// ---------------------------------------------------------------- probes

struct LechOptions {
  EnumerationBudget budget;
  bool fault_mult_off_by_nfact = false;  // deliberate corruption for the verify sentinel
};

struct LechReport {
  int n, k, inner_degree;
  Rational delta, epsilon;
  std::size_t ideals = 0;
  Rational min_ratio;  // min n!·ℓ/e
  std::optional<MonomialIdeal> witness;
  bool lech_holds;     // min_ratio >= 1
  bool epsilon_holds;  // min_ratio >= 1 − ε
};

/// Every a with m^k ⊆ a ⊆ m^⌈δk⌉ on A^n.
LechReport lech_gap_probe(int n, int k, const Rational& delta, const Rational& epsilon, const LechOptions& opts = {});

struct LechScan {
  std::vector<LechReport> rows;
  std::optional<int> k0;  // least k in range from which the (1−ε) bound holds
};
LechScan lech_scan(int n, const std::vector<int>& ks, const Rational& delta, const Rational& epsilon,
                   const LechOptions& opts = {});

enum class KssVerdict { semistable, unstable };
const char* verdict_name(KssVerdict v);

struct KssReport {
  NormalizedVolumeResult hvol;
  Rational bound;
  KssVerdict verdict;
  std::optional<bool> oracle;  // barycenter criterion (r = 1 only)
  double tolerance;
};

/// Throws oracle-disagreement when the verdict contradicts the barycenter
/// oracle and invariant-violation when hvol exceeds the bound.
KssReport kss_via_cone(const FanoConeInput& input, double tolerance = 1e-6, const ToricOptions& opts = {});

struct QBoundReport {
  int n;           // dimension of the cone (dim V + 1)
  Integer q;
  Rational degree;  // (−K_V)^{n−1}
  Rational lhs;     // q·degree
  Rational rhs;     // n^n
  bool holds;
  bool asserted;    // oracle true
  bool equality;
};

QBoundReport q_bound_check(const geom::ConvexBody& anticanonical_polytope, const Integer& q);

struct WitnessReport {
  Rational a;
  Rational log_discrepancy, volume, value, expected, closed_form;
  bool matches;
};

/// Evaluates v_a = ((1−a)^{-1},1,…,1) on a pair with at most one nonzero
/// coefficient a (placed first in the weight at its index).
WitnessReport maxhvol_witness_check(const MonomialPair& model);

}  // namespace hatvol::inv
