#include "hatvol/invariants.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <thread>

#include "hatvol/errors.hpp"
#include "hatvol/linalg.hpp"
#include "hatvol/lp.hpp"

namespace hatvol::inv {

namespace {

Vec discrepancy_covector(const MonomialPair& model) {
  Vec c;
  for (const auto& a : model.coeffs) c.push_back(1 - a);
  return c;
}

Rational rational_power(const Rational& q, int e) { return pow(q, static_cast<unsigned>(e)); }

/// Runs fn(i) for i in [0, count) on up to `threads` workers with static
/// chunks; the first exception is rethrown.
template <class Fn>
void parallel_for(std::size_t count, int threads, Fn fn) {
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads < 1 ? 1 : threads, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w * count / workers; i < (w + 1) * count / workers; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

// ------------------------------------------------------------------- lct

Rational lct_howald(const MonomialPair& model, const MonomialIdeal& a) {
  if (a.n() != model.n) fail(ErrorKind::invalid_input, "ideal and model dimensions differ");
  if (a.is_unit()) fail(ErrorKind::lct_undefined, "lct of the unit ideal is undefined");
  const Vec c = discrepancy_covector(model);
  std::optional<Rational> best;
  const auto np = mono::newton_polyhedron(a);
  for (const auto& f : np.facets()) {
    if (f.offset <= 0) continue;
    Rational t = dot(f.normal, c) / f.offset;
    if (!best || t < *best) best = t;
  }
  ensure(best.has_value(), "Newton polyhedron has no facet with positive offset");
  return *best;
}

LctResult lct(const MonomialPair& model, const MonomialIdeal& a) {
  if (a.n() != model.n) fail(ErrorKind::invalid_input, "ideal and model dimensions differ");
  if (a.is_unit()) fail(ErrorKind::lct_undefined, "lct of the unit ideal is undefined");
  const int n = model.n;
  const auto& gens = a.generators();
  const Vec c = discrepancy_covector(model);

  // dual LP: max Σ y_u subject to Σ_u y_u·u <= c, y >= 0
  linalg::Matrix A(n, Vec(gens.size(), Rational(0)));
  for (std::size_t j = 0; j < gens.size(); ++j)
    for (int i = 0; i < n; ++i) A[i][j] = static_cast<long>(gens[j][i]);
  auto sol = lp::maximize(A, c, Vec(gens.size(), Rational(1)));
  ensure(sol.status == lp::Status::optimal, "lct LP is unbounded");

  LctResult r;
  r.value = sol.objective;
  r.minimizing_weight = sol.duals;
  ensure(dot(c, r.minimizing_weight) == r.value, "lct LP duality gap");
  for (const auto& w : r.minimizing_weight) ensure(w >= 0, "negative lct weight");
  for (const auto& u : gens) {
    Rational val = dot(u, r.minimizing_weight);
    ensure(val >= 1, "lct weight violates a generator constraint");
    if (val == 1) r.active.push_back(u);
  }
  r.howald = lct_howald(model, a);
  if (r.howald != r.value)
    fail(ErrorKind::oracle_disagreement, "LP lct " + to_string(r.value) + " differs from the facet formula " +
                                             to_string(r.howald) + " for " + a.to_string());
  return r;
}

Rational normalized_multiplicity(const MonomialPair& model, const MonomialIdeal& a) {
  return rational_power(lct(model, a).value, model.n) * mono::multiplicity(a);
}

// -------------------------------------------------------- normalized volume

const char* method_name(Method m) {
  switch (m) {
    case Method::closed_form: return "closed_form";
    case Method::exhaustive: return "exhaustive";
    case Method::numeric_slice: return "numeric_slice";
    case Method::valuation_grid: return "valuation_grid";
  }
  return "?";
}

Rational hvol_of(const MonomialPair& model, const Vec& w) {
  return rational_power(models::log_discrepancy(model, w), model.n) * models::valuation_volume(model, w);
}

Rational hvol_of(const ToricSingularity& model, const Vec& xi) {
  return rational_power(models::log_discrepancy(model, xi), model.n()) * models::valuation_volume(model, xi);
}

namespace {

struct NelderMeadResult {
  std::vector<double> x;
  double f;
  int iterations;
  bool converged;
};

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                             double step, int max_iters) {
  const std::size_t d = x0.size();
  std::vector<std::vector<double>> pts{x0};
  for (std::size_t i = 0; i < d; ++i) {
    auto p = x0;
    p[i] += step;
    if (!std::isfinite(f(p))) p[i] = x0[i] - step;
    pts.push_back(p);
  }
  std::vector<double> fv;
  for (const auto& p : pts) fv.push_back(f(p));
  int it = 0;
  bool converged = false;
  for (; it < max_iters; ++it) {
    std::vector<std::size_t> order(d + 1);
    for (std::size_t i = 0; i <= d; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return fv[a] < fv[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[d - 1];
    double size = 0;
    for (const auto& p : pts)
      for (std::size_t i = 0; i < d; ++i) size = std::max(size, std::fabs(p[i] - pts[best][i]));
    if (std::isfinite(fv[worst]) && fv[worst] - fv[best] <= 1e-14 * std::fabs(fv[best]) && size < 1e-9) {
      converged = true;
      break;
    }
    std::vector<double> centroid(d, 0.0);
    for (std::size_t j = 0; j <= d; ++j)
      if (j != worst)
        for (std::size_t i = 0; i < d; ++i) centroid[i] += pts[j][i] / static_cast<double>(d);
    auto along = [&](double t) {
      std::vector<double> p(d);
      for (std::size_t i = 0; i < d; ++i) p[i] = centroid[i] + t * (pts[worst][i] - centroid[i]);
      return p;
    };
    auto xr = along(-1.0);
    double fr = f(xr);
    if (fr < fv[best]) {
      auto xe = along(-2.0);
      double fe = f(xe);
      if (fe < fr) pts[worst] = xe, fv[worst] = fe;
      else pts[worst] = xr, fv[worst] = fr;
    } else if (fr < fv[second]) {
      pts[worst] = xr, fv[worst] = fr;
    } else {
      auto xc = fr < fv[worst] ? along(-0.5) : along(0.5);
      double fc = f(xc);
      if (fc < std::min(fr, fv[worst])) {
        pts[worst] = xc, fv[worst] = fc;
      } else {
        for (std::size_t j = 0; j <= d; ++j) {
          if (j == best) continue;
          for (std::size_t i = 0; i < d; ++i) pts[j][i] = pts[best][i] + 0.5 * (pts[j][i] - pts[best][i]);
          fv[j] = f(pts[j]);
        }
      }
    }
  }
  std::size_t best = std::min_element(fv.begin(), fv.end()) - fv.begin();
  return {pts[best], fv[best], it, converged};
}

}  // namespace

NormalizedVolumeResult hvol_numeric(const geom::Cone& sigma, const Vec& m, const ToricOptions& opts) {
  if (!sigma.full_dimensional() || !sigma.pointed()) fail(ErrorKind::invalid_cone, "cone must be pointed and full-dimensional");
  if (!(opts.tolerance > 0)) fail(ErrorKind::invalid_input, "tolerance must be positive");
  const int n = sigma.dim();
  if (static_cast<int>(m.size()) != n) fail(ErrorKind::invalid_input, "covector dimension mismatch");
  for (const auto& v : sigma.rays())
    if (dot(v, m) <= 0) fail(ErrorKind::invalid_input, "log discrepancy covector must be positive on every ray");

  models::DualConeVolume g(sigma);
  NormalizedVolumeResult res;
  res.method = Method::numeric_slice;

  auto scaled_value = [&](const Vec& xi) -> Rational { return rational_power(dot(m, xi), n) * g(xi); };

  if (n == 1) {
    Vec xi = to_vec(sigma.rays().front());
    xi[0] /= dot(m, xi);
    res.exact = true;
    res.value = scaled_value(xi);
    res.approx = res.value.get_d();
    res.minimizer = xi;
    res.minimizer_approx = {xi[0].get_d()};
    res.certificate = "one-dimensional slice";
    return res;
  }

  // chart on the slice ⟨m,ξ⟩ = 1: drop coordinate p
  int p = 0;
  for (int i = 1; i < n; ++i)
    if (abs(m[i]) > abs(m[p])) p = i;
  std::vector<double> md;
  for (const auto& x : m) md.push_back(x.get_d());
  auto to_xi = [&](const std::vector<double>& y) {
    std::vector<double> xi(n);
    double s = 1;
    for (int i = 0, c = 0; i < n; ++i)
      if (i != p) {
        xi[i] = y[c++];
        s -= md[i] * xi[i];
      }
    xi[p] = s / md[p];
    return xi;
  };
  auto f = [&](const std::vector<double>& y) { return g.eval(to_xi(y)); };

  const int d = n - 1;
  std::vector<std::vector<double>> vert_y;
  for (const auto& v : sigma.rays()) {
    Rational t = dot(v, m);
    std::vector<double> y;
    for (int i = 0; i < n; ++i)
      if (i != p) y.push_back(Rational(Rational(static_cast<long>(v[i])) / t).get_d());
    vert_y.push_back(std::move(y));
  }
  std::vector<double> lo(d, std::numeric_limits<double>::infinity()), hi(d, -std::numeric_limits<double>::infinity());
  std::vector<double> best(d, 0.0);
  for (const auto& y : vert_y)
    for (int i = 0; i < d; ++i) {
      lo[i] = std::min(lo[i], y[i]);
      hi[i] = std::max(hi[i], y[i]);
      best[i] += y[i] / static_cast<double>(vert_y.size());
    }
  double fbest = f(best);
  ensure(std::isfinite(fbest), "slice centroid is not interior");

  // recursive grid refinement: 7 samples per axis, box shrinks by 3 per level
  const int G = 7;
  std::vector<double> half(d);
  for (int i = 0; i < d; ++i) half[i] = (hi[i] - lo[i]) / 2;
  std::vector<double> center(d);
  for (int i = 0; i < d; ++i) center[i] = (lo[i] + hi[i]) / 2;
  for (int level = 0; level < opts.grid_depth; ++level) {
    std::vector<int> idx(d, 0);
    while (true) {
      std::vector<double> y(d);
      for (int i = 0; i < d; ++i) y[i] = center[i] - half[i] + 2 * half[i] * idx[i] / (G - 1);
      double v = f(y);
      if (v < fbest) fbest = v, best = y;
      int j = d - 1;
      while (j >= 0 && idx[j] == G - 1) idx[j--] = 0;
      if (j < 0) break;
      ++idx[j];
    }
    center = best;
    for (auto& h : half) h /= 3;
  }

  double step = 0;
  for (auto h : half) step = std::max(step, h);
  step = std::max(step, 1e-3);
  auto nm = nelder_mead(f, best, step, opts.max_iters);
  int iterations = nm.iterations;
  if (nm.converged && iterations < opts.max_iters) {
    auto again = nelder_mead(f, nm.x, step / 10, opts.max_iters - iterations);
    iterations += again.iterations;
    if (again.f <= nm.f) nm = again;
  }
  res.iterations = iterations;
  if (!nm.converged) {
    // accept when the simplex spread already meets the tolerance
    double spread = 0;
    for (int i = 0; i < d; ++i) {
      auto e = nm.x;
      e[i] += 1e-7;
      spread = std::max(spread, std::fabs(f(e) - nm.f));
    }
    if (spread > opts.tolerance * nm.f)
      fail(ErrorKind::non_converged, "numeric minimization did not converge within " + std::to_string(opts.max_iters) +
                                         " iterations; best value so far " + std::to_string(nm.f));
  }
  std::vector<double> xi_star = to_xi(nm.x);
  res.approx = nm.f;
  res.minimizer_approx = xi_star;

  // rational upgrade: low-denominator points checked against the exact KKT
  // condition ∇vol(ξ)·⟨m,ξ⟩ = −n·vol(ξ)·m, which is sufficient by convexity
  std::vector<std::vector<double>> normalizations{xi_star};
  double scale = 0;
  for (double x : xi_star) scale = std::max(scale, std::fabs(x));
  for (int i = 0; i < n; ++i)
    if (std::fabs(xi_star[i]) > 1e-3 * scale) {
      auto v = xi_star;
      for (auto& x : v) x /= xi_star[i];
      normalizations.push_back(v);
    }
  auto fd = [&](const std::vector<double>& xi) {
    double s = 0;
    for (int i = 0; i < n; ++i) s += md[i] * xi[i];
    if (!(s > 0)) return std::numeric_limits<double>::infinity();
    return std::pow(s, n) * g.eval(xi);
  };
  std::set<Vec> tried;
  for (int q = 1; q <= opts.max_denominator; ++q) {
    for (const auto& v : normalizations) {
      Vec cand;
      std::vector<double> cd;
      for (double x : v) {
        long num = std::lround(x * q);
        cand.push_back(frac(num, q));
        cd.push_back(static_cast<double>(num) / q);
      }
      if (!(fd(cd) <= nm.f * (1 + 1e-9))) continue;
      if (!tried.insert(cand).second) continue;
      if (!sigma.contains_in_interior(cand)) continue;
      Rational s = dot(m, cand);
      Rational gv = g(cand);
      Vec grad = g.gradient(cand);
      bool kkt = true;
      for (int i = 0; i < n && kkt; ++i) kkt = grad[i] * s + n * gv * m[i] == 0;
      if (!kkt) continue;
      Vec xi = cand;
      for (auto& x : xi) x /= s;
      res.exact = true;
      res.value = g(xi);
      res.approx = res.value.get_d();
      res.minimizer = xi;
      res.certificate = "KKT: grad vol(xi) = -n vol(xi) m at a rational point of the slice (convex objective)";
      return res;
    }
  }

  // convexity bracket: the tangent plane at the optimum stays below f on the
  // slice, and its minimum over the slice sits at a vertex
  std::vector<double> grad(d);
  double h = 1e-6 * std::max(1.0, step);
  for (int i = 0; i < d; ++i) {
    auto up = nm.x, down = nm.x;
    up[i] += h;
    down[i] -= h;
    grad[i] = (f(up) - f(down)) / (2 * h);
  }
  double lb = std::numeric_limits<double>::infinity();
  for (const auto& v : vert_y) {
    double t = nm.f;
    for (int i = 0; i < d; ++i) t += grad[i] * (v[i] - nm.x[i]);
    lb = std::min(lb, t);
  }
  res.lower_bound = std::min(lb, nm.f);
  res.certificate = "numeric optimum; lower bound from the tangent plane of the convex objective";
  return res;
}

NormalizedVolumeResult hvol_toric(const ToricSingularity& model, const ToricOptions& opts) {
  return hvol_numeric(model.sigma, model.m_sigma, opts);
}

NormalizedVolumeResult hvol_numeric(const MonomialPair& model, const ToricOptions& opts) {
  std::vector<IntVec> rays;
  for (int i = 0; i < model.n; ++i) {
    IntVec e(model.n, 0);
    e[i] = 1;
    rays.push_back(e);
  }
  return hvol_numeric(geom::make_cone(model.n, rays), discrepancy_covector(model), opts);
}

NormalizedVolumeResult hvol_closed_form(const MonomialPair& model) {
  const int n = model.n;
  const Vec c = discrepancy_covector(model);
  NormalizedVolumeResult res;
  res.method = Method::closed_form;
  res.exact = true;
  res.value = rational_power(Rational(n), n);
  for (const auto& ci : c) res.value *= ci;
  res.approx = res.value.get_d();
  for (const auto& ci : c) res.minimizer.push_back(1 / (n * ci));
  for (const auto& x : res.minimizer) res.minimizer_approx.push_back(x.get_d());
  ensure(hvol_of(model, res.minimizer) == res.value, "closed-form minimizer does not attain the closed-form value");
  res.certificate = "AM-GM equality: (1-a_i) w_i = 1/n for every i";
  if (n <= geom::kMaxDim) {
    auto numeric = hvol_numeric(model);
    bool agree = numeric.exact ? numeric.value == res.value
                               : std::fabs(numeric.approx - res.approx) <= 1e-6 * res.approx;
    if (!agree)
      fail(ErrorKind::oracle_disagreement, "closed form " + to_string(res.value) + " disagrees with numeric minimum " +
                                               std::to_string(numeric.approx));
    res.certificate += numeric.exact ? "; numeric slice minimizer agrees exactly" : "; numeric slice minimizer agrees";
  }
  return res;
}

// ------------------------------------------------------ normalized colength

const char* mode_name(ColengthMode m) { return m == ColengthMode::exact ? "exact" : "upper"; }

Rational default_c(int n) { return 1 / (4 * Rational(factorial(n))); }

namespace {

std::int64_t binomial(std::int64_t a, std::int64_t b) {
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), a, b);
  return to_int64(r);
}

struct Candidate {
  MonomialIdeal ideal;
  std::int64_t colength;
  std::vector<Exponent> staircase;
  Vec weight;
  Rational level;
};

}  // namespace

ColengthValue normalized_colength(const MonomialPair& model, const Rational& c, int k, ColengthMode mode,
                                  const ColengthOptions& opts) {
  const int n = model.n;
  if (c <= 0) fail(ErrorKind::invalid_input, "c must be positive");
  if (k < 2) fail(ErrorKind::invalid_input, "k must be >= 2");
  Rational target = c * rational_power(Rational(k), n);
  const std::int64_t need = to_int64(ceil(target).get_num());
  const std::int64_t max_len = binomial(n + k - 1, n);
  if (need > max_len)
    fail(ErrorKind::infeasible_c, "no ideal between m^" + std::to_string(k) + " and m has colength >= " +
                                      to_string(target) + " (maximum " + std::to_string(max_len) + ")");

  std::vector<Candidate> cands;
  if (mode == ColengthMode::exact) {
    mono::for_each_staircase({n, k, need, 1}, opts.budget, [&](const mono::EnumeratedIdeal& e) {
      cands.push_back({e.ideal, static_cast<std::int64_t>(e.staircase->size()), {}, {}, {}});
    });
  } else {
    if (opts.weight_grid < 1) fail(ErrorKind::invalid_input, "weight grid must be >= 1");
    std::set<std::vector<Exponent>> seen;
    std::vector<int> w(n, 1);
    while (true) {
      const int wmin = *std::min_element(w.begin(), w.end());
      const long top = static_cast<long>(k) * wmin;
      std::set<long> levels;
      // values ⟨w,u⟩ in (0, top]
      std::vector<long> reach(top + 1, 0);
      reach[0] = 1;
      for (long v = 1; v <= top; ++v)
        for (int i = 0; i < n; ++i)
          if (v >= w[i] && reach[v - w[i]]) reach[v] = 1;
      Vec wv;
      for (int x : w) wv.emplace_back(x);
      for (long j = 1; j <= top; ++j) {
        if (!reach[j]) continue;
        auto a = mono::valuation_ideal(wv, Rational(j));
        if (!seen.insert(a.generators()).second) continue;
        std::int64_t len = mono::colength(a);
        if (len < need) continue;
        cands.push_back({a, len, mono::staircase(a), wv, Rational(j)});
      }
      int i = n - 1;
      while (i >= 0 && w[i] == opts.weight_grid) w[i--] = 1;
      if (i < 0) break;
      ++w[i];
    }
    std::sort(cands.begin(), cands.end(), [](const Candidate& x, const Candidate& y) {
      return mono::staircase_lex_less(x.staircase, y.staircase);
    });
  }
  ensure(!cands.empty(), "no feasible ideal although m^k is feasible");

  std::vector<Rational> lcts(cands.size()), values(cands.size());
  const Rational nfact(factorial(n));
  parallel_for(cands.size(), opts.threads, [&](std::size_t i) {
    lcts[i] = lct(model, cands[i].ideal).value;
    values[i] = nfact * rational_power(lcts[i], n) * cands[i].colength;
  });
  std::size_t best = 0;
  for (std::size_t i = 1; i < cands.size(); ++i)
    if (values[i] < values[best]) best = i;

  ColengthValue out{values[best], cands[best].ideal, cands[best].colength, lcts[best], cands.size(),
                    cands[best].weight, cands[best].level};
  return out;
}

ColengthScanResult colength_convergence_scan(const MonomialPair& model, const Rational& c, const std::vector<int>& ks,
                                             ColengthMode mode, const ColengthOptions& opts) {
  if (ks.empty()) fail(ErrorKind::invalid_input, "empty k range");
  for (std::size_t i = 1; i < ks.size(); ++i)
    if (ks[i] <= ks[i - 1]) fail(ErrorKind::invalid_input, "k range must be increasing");
  ColengthScanResult r{c, mode, {}, 0, hvol_closed_form(model).value, true};
  for (int k : ks) {
    auto v = normalized_colength(model, c, k, mode, opts);
    bool power = v.argmin == MonomialIdeal::maximal_power(model.n, k);
    r.rows.push_back({k, std::move(v), power});
  }
  const std::size_t from = r.rows.size() / 2;
  r.liminf_estimate = r.rows[from].v.value;
  for (std::size_t i = from; i < r.rows.size(); ++i) r.liminf_estimate = std::min(r.liminf_estimate, r.rows[i].v.value);
  for (const auto& row : r.rows) r.from_above = r.from_above && row.v.value >= r.reference_hvol;
  return r;
}

// ---------------------------------------------------------------- probes

LechReport lech_gap_probe(int n, int k, const Rational& delta, const Rational& epsilon, const LechOptions& opts) {
  if (delta <= 0 || delta >= 1) fail(ErrorKind::invalid_input, "delta must lie in (0,1)");
  if (epsilon <= 0 || epsilon >= 1) fail(ErrorKind::invalid_input, "epsilon must lie in (0,1)");
  if (k < 1) fail(ErrorKind::invalid_input, "k must be >= 1");
  const int inner = std::max(1, static_cast<int>(to_int64(ceil(delta * k).get_num())));
  LechReport r{n, k, inner, delta, epsilon, 0, 0, std::nullopt, true, true};
  const Rational nfact(factorial(n));
  mono::for_each_staircase({n, k, 1, inner}, opts.budget, [&](const mono::EnumeratedIdeal& e) {
    Rational mult = mono::multiplicity(e.ideal);
    if (opts.fault_mult_off_by_nfact) mult *= nfact;
    Rational ratio = nfact * static_cast<long>(e.staircase->size()) / mult;
    if (!r.witness || ratio < r.min_ratio) {
      r.min_ratio = ratio;
      r.witness = e.ideal;
    }
    ++r.ideals;
  });
  r.lech_holds = r.min_ratio >= 1;
  r.epsilon_holds = r.min_ratio >= 1 - epsilon;
  return r;
}

LechScan lech_scan(int n, const std::vector<int>& ks, const Rational& delta, const Rational& epsilon,
                   const LechOptions& opts) {
  LechScan s;
  for (int k : ks) s.rows.push_back(lech_gap_probe(n, k, delta, epsilon, opts));
  for (std::size_t i = s.rows.size(); i-- > 0;) {
    if (!s.rows[i].epsilon_holds) break;
    s.k0 = s.rows[i].k;
  }
  return s;
}

const char* verdict_name(KssVerdict v) { return v == KssVerdict::semistable ? "K-SEMISTABLE" : "UNSTABLE"; }

KssReport kss_via_cone(const FanoConeInput& input, double tolerance, const ToricOptions& opts) {
  if (!(tolerance > 0)) fail(ErrorKind::invalid_input, "tolerance must be positive");
  auto model = models::cone_construction(input);
  KssReport r{hvol_toric(model, opts), models::fano_degree_bound(input), KssVerdict::unstable, std::nullopt, tolerance};
  const double bound = r.bound.get_d();
  bool equal;
  if (r.hvol.exact) {
    Rational tol = Rational(tolerance) * r.bound;
    if (r.hvol.value > r.bound + tol)
      fail(ErrorKind::invariant_violation, "hvol " + to_string(r.hvol.value) + " exceeds the bound " + to_string(r.bound));
    equal = abs(r.hvol.value - r.bound) <= tol;
  } else {
    if (r.hvol.approx > bound * (1 + tolerance))
      fail(ErrorKind::invariant_violation, "hvol " + std::to_string(r.hvol.approx) + " exceeds the bound " +
                                               to_string(r.bound));
    equal = std::fabs(r.hvol.approx - bound) <= tolerance * bound;
  }
  r.verdict = equal ? KssVerdict::semistable : KssVerdict::unstable;
  if (input.r == 1) {
    try {
      r.oracle = models::toric_kss_oracle(input.polytope);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::not_anticanonical_polytope) throw;
    }
  }
  if (r.oracle && *r.oracle != equal)
    fail(ErrorKind::oracle_disagreement, std::string("volume criterion says ") + verdict_name(r.verdict) +
                                             " but the barycenter oracle says " +
                                             (*r.oracle ? "semistable" : "unstable"));
  return r;
}

QBoundReport q_bound_check(const geom::ConvexBody& q_poly, const Integer& q) {
  if (q <= 0) fail(ErrorKind::invalid_input, "q must be a positive integer");
  if (!q_poly.full_dimensional()) fail(ErrorKind::invalid_input, "polytope is not full-dimensional");
  const int n = q_poly.dim() + 1;
  QBoundReport r;
  r.n = n;
  r.q = q;
  r.degree = Rational(factorial(n - 1)) * geom::volume(q_poly);
  r.lhs = Rational(q) * r.degree;
  r.rhs = rational_power(Rational(n), n);
  r.holds = r.lhs <= r.rhs;
  r.equality = r.lhs == r.rhs;
  r.asserted = models::toric_kss_oracle(q_poly);
  if (r.asserted && !r.holds)
    fail(ErrorKind::invariant_violation, "q-bound fails on a K-semistable input: " + to_string(r.lhs) + " > " +
                                             to_string(r.rhs));
  return r;
}

WitnessReport maxhvol_witness_check(const MonomialPair& model) {
  int idx = 0, nonzero = 0;
  for (int i = 0; i < model.n; ++i)
    if (model.coeffs[i] != 0) idx = i, ++nonzero;
  if (nonzero > 1) fail(ErrorKind::invalid_input, "witness check needs at most one nonzero coefficient");
  WitnessReport r;
  r.a = model.coeffs[idx];
  Vec w(model.n, Rational(1));
  w[idx] = 1 / (1 - r.a);
  r.log_discrepancy = models::log_discrepancy(model, w);
  r.volume = models::valuation_volume(model, w);
  r.value = rational_power(r.log_discrepancy, model.n) * r.volume;
  r.expected = (1 - r.a) * rational_power(Rational(model.n), model.n);
  r.closed_form = hvol_closed_form(model).value;
  r.matches = r.value == r.expected && r.closed_form == r.value;
  if (!r.matches)
    fail(ErrorKind::invariant_violation, "witness value " + to_string(r.value) + " does not match (1-a)n^n = " +
                                             to_string(r.expected));
  return r;
}

}  // namespace hatvol::inv
