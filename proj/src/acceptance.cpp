#include "hatvol/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "hatvol/errors.hpp"
#include "hatvol/geometry.hpp"
#include "hatvol/invariants.hpp"
#include "hatvol/models.hpp"
#include "hatvol/monomial.hpp"

namespace hatvol::acceptance {

namespace {

constexpr std::uint64_t kSeed = 20240501;

struct Outcome {
  bool pass = true;
  std::ostringstream measured;
  std::string tolerance;
  std::vector<std::string> notes;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      pass = false;
      notes.push_back("failed: " + what);
    }
  }
};

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

Rational nn(int n) { return pow(Rational(n), static_cast<unsigned>(n)); }

std::vector<mono::MonomialIdeal> corpus(int n, int k) {
  return mono::enumerate_staircases({n, k, 1, 1});
}

geom::ConvexBody random_body(std::mt19937_64& rng, int d, int max_den, int npoints) {
  std::uniform_int_distribution<int> den_dist(1, max_den);
  while (true) {
    std::vector<Vec> pts;
    for (int i = 0; i < npoints; ++i) {
      Vec p;
      for (int j = 0; j < d; ++j) {
        const int den = den_dist(rng);
        std::uniform_int_distribution<int> num_dist(0, den);
        p.push_back(frac(num_dist(rng), den));
      }
      pts.push_back(std::move(p));
    }
    auto b = geom::convex_hull(pts);
    if (b.full_dimensional()) return b;
  }
}

Rational random_rational(std::mt19937_64& rng, int lo_num, int hi_num, int max_den) {
  const int den = std::uniform_int_distribution<int>(1, max_den)(rng);
  const int num = std::uniform_int_distribution<int>(lo_num * den, hi_num * den)(rng);
  return frac(num, den);
}

// Monotone step or continuous piecewise-linear function on [0,1] with values in [0,1].
struct MonotoneFunction {
  bool step;
  std::vector<Rational> knots;   // 0 = t_0 < ... < t_m = 1
  std::vector<Rational> values;  // step: value on [t_i, t_{i+1}); linear: value at t_i

  Rational operator()(const Rational& t) const {
    std::size_t i = 0;
    while (i + 2 < knots.size() && knots[i + 1] <= t) ++i;
    if (step) return t == 1 ? values.back() : values[i];
    const Rational s = (t - knots[i]) / (knots[i + 1] - knots[i]);
    return values[i] + s * (values[i + 1] - values[i]);
  }

  Rational integral() const {
    Rational total = 0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
      const Rational len = knots[i + 1] - knots[i];
      total += step ? Rational(values[i] * len) : Rational((values[i] + values[i + 1]) * len / 2);
    }
    return total;
  }
};

MonotoneFunction random_monotone(std::mt19937_64& rng, bool step) {
  const int pieces = std::uniform_int_distribution<int>(1, 5)(rng);
  std::vector<Rational> inner;
  while (static_cast<int>(inner.size()) < pieces - 1) {
    const int den = std::uniform_int_distribution<int>(2, 12)(rng);
    Rational t = frac(std::uniform_int_distribution<int>(1, den - 1)(rng), den);
    if (std::find(inner.begin(), inner.end(), t) == inner.end()) inner.push_back(t);
  }
  std::sort(inner.begin(), inner.end());
  MonotoneFunction f{step, {Rational(0)}, {}};
  for (const auto& t : inner) f.knots.push_back(t);
  f.knots.push_back(Rational(1));
  for (std::size_t i = 0; i < f.knots.size(); ++i) f.values.push_back(random_rational(rng, 0, 1, 9));
  std::sort(f.values.begin(), f.values.end());
  if (std::uniform_int_distribution<int>(0, 1)(rng)) std::reverse(f.values.begin(), f.values.end());
  return f;
}

// ------------------------------------------------------------- criteria

void smooth_point_value(const Options&, Outcome& o) {
  o.tolerance = "closed form exact; numeric relative 1e-9";
  double worst = 0;
  for (int n = 2; n <= 4; ++n) {
    auto cf = inv::hvol_closed_form(models::smooth_point(n));
    o.require(cf.exact && cf.value == nn(n), "closed form n=" + std::to_string(n));
    std::vector<IntVec> rays;
    for (int i = 0; i < n; ++i) {
      IntVec e(n, 0);
      e[i] = 1;
      rays.push_back(e);
    }
    auto num = inv::hvol_numeric(geom::make_cone(n, rays), Vec(n, Rational(1)));
    const double target = nn(n).get_d();
    const double got = num.exact ? num.value.get_d() : num.approx;
    const double rel = std::abs(got - target) / target;
    worst = std::max(worst, rel);
    o.require(rel <= 1e-9, "numeric orthant n=" + std::to_string(n));
    o.measured << "n=" << n << ": " << to_string(cf.value) << " vs " << (num.exact ? to_string(num.value) : fmt(got))
               << "; ";
  }
  o.measured << "max rel err " << fmt(worst);
}

void pair_bound_witness(const Options&, Outcome& o) {
  o.tolerance = "exact equality";
  int cases = 0;
  for (const Rational& a : {frac(1, 2), frac(2, 3)})
    for (int n : {2, 3}) {
      Vec coeffs(n, Rational(0));
      coeffs[0] = a;
      auto model = models::make_monomial_pair(n, coeffs);
      const Rational expected = (1 - a) * nn(n);
      auto cf = inv::hvol_closed_form(model);
      auto w = inv::maxhvol_witness_check(model);
      const std::string tag = "a=" + to_string(a) + " n=" + std::to_string(n);
      o.require(cf.exact && cf.value == expected, "closed form " + tag);
      o.require(w.value == expected && w.matches, "witness " + tag);
      Vec witness(n, Rational(1));
      witness[0] = 1 / (1 - a);
      const Rational ambient = models::log_discrepancy(models::smooth_point(n), witness);
      o.require(ambient == 1 / (1 - a) + (n - 1), "ambient A " + tag);
      o.require(w.log_discrepancy == ambient - a * witness[0] && w.volume == 1 - a, "pair A/vol " + tag);
      o.measured << tag << ": " << to_string(cf.value) << "; ";
      ++cases;
    }
  o.measured << cases << " cases";
}

void multiplicity_lower_bound(const Options& opts, Outcome& o) {
  o.tolerance = "exact; hvol(A^n,0) = n^n";
  std::vector<std::pair<int, int>> runs{{2, 8}};
  if (opts.suite == Suite::full) runs.push_back({3, 4});
  for (auto [n, k] : runs) {
    const auto model = models::smooth_point(n);
    const Rational bound = nn(n);
    std::size_t count = 0, below = 0;
    Rational lowest;
    bool first = true;
    for (const auto& a : corpus(n, k)) {
      const Rational v = inv::normalized_multiplicity(model, a);
      if (v < bound) ++below;
      if (first || v < lowest) lowest = v, first = false;
      ++count;
    }
    int powers_at_bound = 0;
    for (int j = 1; j <= k; ++j)
      if (inv::normalized_multiplicity(model, mono::MonomialIdeal::maximal_power(n, j)) == bound) ++powers_at_bound;
    o.require(below == 0, std::to_string(below) + " ideals below n^n (n=" + std::to_string(n) + ")");
    o.require(powers_at_bound == k, "m-powers attain equality (n=" + std::to_string(n) + ")");
    o.measured << "n=" << n << " k=" << k << ": " << count << " ideals, min " << to_string(lowest) << ", "
               << powers_at_bound << "/" << k << " powers at " << to_string(bound) << "; ";
  }
}

void lech_probe(const Options& opts, Outcome& o) {
  o.tolerance = "n!l/e >= 1 on corpus; >= 1-eps (eps=1/10, delta=1/2) for k <= 8";
  inv::LechOptions lo;
  lo.fault_mult_off_by_nfact = opts.fault_mult_off_by_nfact;
  const Rational eps = frac(1, 10), delta = frac(1, 2);
  struct Run {
    int n, k;
    std::vector<int> ks;
  };
  std::vector<Run> runs{{2, 8, {2, 3, 4, 5, 6, 7, 8}}};
  if (opts.suite == Suite::full) runs.push_back({3, 4, {2, 3, 4}});
  for (const auto& run : runs) {
    // delta = 1/k puts the inner bound at m, i.e. the whole corpus.
    auto whole = inv::lech_gap_probe(run.n, run.k, frac(1, run.k), eps, lo);
    o.require(whole.lech_holds, "Lech on corpus n=" + std::to_string(run.n) + " (min ratio " +
                                    to_string(whole.min_ratio) + ")");
    auto scan = inv::lech_scan(run.n, run.ks, delta, eps, lo);
    for (const auto& row : scan.rows)
      o.require(row.epsilon_holds, "(1-eps) bound at n=" + std::to_string(run.n) + " k=" + std::to_string(row.k));
    Rational scan_min = scan.rows.front().min_ratio;
    for (const auto& row : scan.rows) scan_min = std::min(scan_min, row.min_ratio);
    o.measured << "n=" << run.n << ": corpus " << whole.ideals << " ideals min ratio " << to_string(whole.min_ratio)
               << ", delta-scan min ratio " << to_string(scan_min) << "; ";
  }
}

void colength_convergence(const Options& opts, Outcome& o) {
  o.tolerance = "every row >= n^n; A^2 row k=10 <= 9/2";
  inv::ColengthOptions co;
  co.threads = opts.threads;
  struct Run {
    int n;
    Rational c;
    std::vector<int> ks;
  };
  std::vector<Run> runs{{2, frac(1, 8), {2, 3, 4, 5, 6, 7, 8, 9, 10}}};
  if (opts.suite == Suite::full) runs.push_back({3, frac(1, 24), {2, 3, 4}});
  for (const auto& run : runs) {
    auto scan = inv::colength_convergence_scan(models::smooth_point(run.n), run.c, run.ks, inv::ColengthMode::exact, co);
    const Rational bound = nn(run.n);
    for (const auto& row : scan.rows) {
      o.require(row.v.value >= bound, "row below n^n at n=" + std::to_string(run.n) + " k=" + std::to_string(row.k));
      if (!row.power_argmin)
        o.notes.push_back("n=" + std::to_string(run.n) + " k=" + std::to_string(row.k) +
                          " argmin is not m^k: " + row.v.argmin.to_string());
    }
    o.measured << "n=" << run.n << " c=" << to_string(run.c) << ":";
    for (const auto& row : scan.rows) o.measured << " " << to_string(row.v.value);
    o.measured << "; ";
    if (run.n == 2) {
      const Rational last = scan.rows.back().v.value;
      o.require(last <= frac(9, 2), "k=10 value " + to_string(last) + " exceeds 9/2");
    }
  }
}

void lattice_and_riemann(const Options&, Outcome& o) {
  o.tolerance = "err <= 1/20 for k >= k0, k0 <= 80; err(80) <= err(20); Riemann gap <= 2/k";
  std::mt19937_64 rng(kSeed);
  std::vector<std::int64_t> ks;
  for (int k = 1; k <= 80; ++k) ks.push_back(k);
  std::int64_t worst_k0 = 0;
  int no_k0 = 0, not_decreasing = 0, bodies = 0;
  for (int d : {2, 3}) {
    const int count = d == 2 ? 50 : 20;
    for (int i = 0; i < count; ++i) {
      auto b = random_body(rng, d, 8, d == 2 ? 6 : 8);
      auto rep = geom::counting_error_probe(b, ks, frac(1, 20));
      ++bodies;
      if (!rep.k0 || *rep.k0 > 80) {
        ++no_k0;
        o.notes.push_back("d=" + std::to_string(d) + " body " + std::to_string(i) + " has no k0 <= 80");
      } else {
        worst_k0 = std::max(worst_k0, *rep.k0);
      }
      const Rational& e20 = rep.rows[19].error;
      const Rational& e80 = rep.rows[79].error;
      if (e80 > e20) {
        ++not_decreasing;
        o.notes.push_back("d=" + std::to_string(d) + " body " + std::to_string(i) + ": err(80) = " + fmt(e80.get_d()) +
                          " > err(20) = " + fmt(e20.get_d()));
      }
    }
  }
  o.require(no_k0 == 0, std::to_string(no_k0) + " bodies without k0 <= 80");
  o.require(not_decreasing == 0, std::to_string(not_decreasing) + " bodies with err(80) > err(20)");

  int gap_failures = 0, checks = 0;
  for (int i = 0; i < 100; ++i) {
    auto f = random_monotone(rng, i % 2 == 0);
    const Rational integral = f.integral();
    std::map<Rational, Rational> samples;
    for (int k = 2; k <= 64; ++k)
      for (int j = 0; j <= k; ++j) {
        const Rational t = frac(j, k);
        if (!samples.count(t)) samples.emplace(t, f(t));
      }
    for (int k = 2; k <= 64; ++k) {
      auto g = geom::monotone_riemann_gap(samples, 0, 1, k, integral);
      ++checks;
      if (!g.within_bound || g.gap > frac(2, k)) ++gap_failures;
    }
  }
  o.require(gap_failures == 0, std::to_string(gap_failures) + " Riemann gaps above 2/k");
  o.measured << bodies << " bodies, max k0 " << worst_k0 << ", " << not_decreasing << " with err(80) > err(20); "
             << checks << " Riemann checks, " << gap_failures << " over 2/k";
}

void kss_cone(const Options&, Outcome& o) {
  o.tolerance = "P1 exact 2; P2 |hvol-9| <= 9e-6; P(1,1,2) bound-hvol > 1e-3; hvol <= bound(1+1e-6)";
  auto input = [](std::vector<std::vector<long>> pts) {
    std::vector<Vec> v;
    for (const auto& p : pts) {
      Vec q;
      for (long x : p) q.emplace_back(x);
      v.push_back(q);
    }
    return models::make_fano_cone_input(v, 1);
  };
  auto value = [](const inv::KssReport& r) { return r.hvol.exact ? r.hvol.value.get_d() : r.hvol.approx; };
  auto below_bound = [&](const inv::KssReport& r) { return value(r) <= r.bound.get_d() * (1 + 1e-6); };

  auto p1 = inv::kss_via_cone(input({{0}, {2}}));
  o.require(p1.hvol.exact && p1.hvol.value == 2 && p1.bound == 2, "P1 exact value 2 = bound");
  o.require(below_bound(p1), "P1 below bound");

  auto p2 = inv::kss_via_cone(input({{0, 0}, {3, 0}, {0, 3}}));
  o.require(p2.bound == 9 && std::abs(value(p2) - 9) <= 9e-6, "P2 value 9 = bound");
  o.require(p2.oracle && *p2.oracle, "P2 barycenter oracle true");
  o.require(below_bound(p2), "P2 below bound");

  auto p112 = inv::kss_via_cone(input({{0, 0}, {4, 0}, {0, 2}}));
  o.require(p112.bound.get_d() - value(p112) > 1e-3, "P(1,1,2) strictly below bound");
  o.require(p112.oracle && !*p112.oracle, "P(1,1,2) barycenter oracle false");
  o.require(below_bound(p112), "P(1,1,2) below bound");

  auto show = [&](const char* name, const inv::KssReport& r) {
    o.measured << name << " hvol " << (r.hvol.exact ? to_string(r.hvol.value) : fmt(r.hvol.approx)) << " bound "
               << to_string(r.bound) << " " << inv::verdict_name(r.verdict) << "; ";
  };
  show("P1", p1);
  show("P2", p2);
  show("P(1,1,2)", p112);
}

void q_bound(const Options&, Outcome& o) {
  o.tolerance = "exact";
  auto poly = [](std::vector<std::vector<long>> pts) {
    std::vector<Vec> v;
    for (const auto& p : pts) {
      Vec q;
      for (long x : p) q.emplace_back(x);
      v.push_back(q);
    }
    return geom::convex_hull(v);
  };
  struct Case {
    const char* name;
    geom::ConvexBody q;
    long index;
    long lhs, rhs;
  };
  std::vector<Case> cases{{"P1", poly({{0}, {2}}), 2, 4, 4},
                          {"P2", poly({{0, 0}, {3, 0}, {0, 3}}), 3, 27, 27},
                          {"P1xP1", poly({{0, 0}, {2, 0}, {0, 2}, {2, 2}}), 2, 16, 27}};
  for (const auto& c : cases) {
    auto r = inv::q_bound_check(c.q, c.index);
    o.require(r.holds && r.lhs == c.lhs && r.rhs == c.rhs, std::string(c.name));
    o.measured << c.name << ": " << to_string(r.lhs) << " <= " << to_string(r.rhs) << "; ";
  }
}

void cross_validation(const Options& opts, Outcome& o) {
  o.tolerance = "lct exact agreement; |n!l(a^40)/40^n / e - 1| <= 0.05; hvol invariance exact";
  std::mt19937_64 rng(kSeed + 9);

  std::vector<std::pair<int, int>> runs{{2, 8}};
  if (opts.suite == Suite::full) runs.push_back({3, 4});
  for (auto [n, k] : runs) {
    const auto model = models::smooth_point(n);
    std::size_t count = 0, mismatches = 0;
    for (const auto& a : corpus(n, k)) {
      auto r = inv::lct(model, a);
      if (r.value != inv::lct_howald(model, a) || r.value != r.howald) ++mismatches;
      ++count;
    }
    o.require(mismatches == 0, std::to_string(mismatches) + " lct mismatches (n=" + std::to_string(n) + ")");
    o.measured << "lct n=" << n << ": " << count << " ideals, " << mismatches << " mismatches; ";
  }

  const auto ideals = corpus(2, 8);
  double worst = 0;
  std::uniform_int_distribution<std::size_t> pick(0, ideals.size() - 1);
  for (int i = 0; i < 100; ++i) {
    const auto& a = ideals[pick(rng)];
    const Rational e = mono::multiplicity(a);
    const Rational approx = frac(2 * mono::colength(mono::power(a, 40)), 1600);
    const double rel = std::abs(Rational(approx / e - 1).get_d());
    worst = std::max(worst, rel);
  }
  o.require(worst <= 0.05, "multiplicity vs colength of powers (worst " + fmt(worst) + ")");
  o.measured << "e vs powers: worst rel " << fmt(worst) << "; ";

  const std::vector<std::vector<IntVec>> cones{{{0, 1}, {2, -1}},
                                                {{1, 0}, {1, 3}},
                                                {{1, 0, 0}, {0, 1, 0}, {1, 1, 2}},
                                                {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, -1, 1}}};
  int scale_failures = 0;
  for (int i = 0; i < 100; ++i) {
    const Rational lambda = random_rational(rng, 1, 7, 5);
    if (i % 2 == 0) {
      const int n = 2 + (i / 2) % 2;
      Vec coeffs(n);
      for (auto& c : coeffs) c = frac(std::uniform_int_distribution<int>(0, 4)(rng), 5);
      auto model = models::make_monomial_pair(n, coeffs);
      Vec w(n);
      for (auto& x : w) x = random_rational(rng, 1, 5, 6);
      Vec lw(w);
      for (auto& x : lw) x *= lambda;
      bool ok = inv::hvol_of(model, w) == inv::hvol_of(model, lw);
      auto cf = inv::hvol_closed_form(model);
      Vec lm(cf.minimizer);
      for (auto& x : lm) x *= lambda;
      ok &= models::log_discrepancy(model, cf.minimizer) == 1;
      ok &= inv::hvol_of(model, lm) == cf.value && inv::hvol_of(model, cf.minimizer) == cf.value;
      if (!ok) ++scale_failures;
    } else {
      const auto& rays = cones[(i / 2) % cones.size()];
      const int n = static_cast<int>(rays.front().size());
      auto model = models::make_toric(n, rays);
      Vec xi(n, Rational(0));
      for (const auto& r : model.sigma.rays()) {
        const Rational c = random_rational(rng, 1, 4, 6);
        for (int j = 0; j < n; ++j) xi[j] += c * static_cast<long>(r[j]);
      }
      Vec lxi(xi);
      for (auto& x : lxi) x *= lambda;
      if (inv::hvol_of(model, xi) != inv::hvol_of(model, lxi)) ++scale_failures;
    }
  }
  o.require(scale_failures == 0, std::to_string(scale_failures) + " rescaling failures");
  o.measured << "rescaling: 100 cases, " << scale_failures << " failures";
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<void(const Options&, Outcome&)> body;
};

}  // namespace

std::vector<CriterionResult> run_suite(const Options& opts) {
  const std::vector<Criterion> criteria{
      {1, "smooth-point value", 5, smooth_point_value},
      {2, "pair bound with witness", 1, pair_bound_witness},
      {3, "normalized multiplicity lower bound", 300, multiplicity_lower_bound},
      {4, "Lech probe", 300, lech_probe},
      {5, "colength convergence", 600, colength_convergence},
      {6, "lattice counting and Riemann gap", 300, lattice_and_riemann},
      {7, "cone K-semistability criterion", 120, kss_cone},
      {8, "q-bound", 1, q_bound},
      {9, "engine cross-validation", 600, cross_validation},
  };
  std::vector<CriterionResult> out;
  for (int id : opts.only)
    if (id < 1 || id > static_cast<int>(criteria.size()))
      fail(ErrorKind::invalid_input, "no acceptance criterion " + std::to_string(id));
  for (const auto& c : criteria) {
    if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), c.id) == opts.only.end()) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(opts, o);
    } catch (const Error& e) {
      o.pass = false;
      o.measured << "error " << e.name() << ": " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_seconds) {
      o.pass = false;
      o.notes.push_back("runtime " + fmt(secs) + " s over budget " + fmt(c.budget_seconds) + " s");
    }
    out.push_back({c.id, c.name, o.pass, o.measured.str(), o.tolerance, secs, c.budget_seconds, o.notes});
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream s;
  s << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << " | " << r.measured << " | tol: " << r.tolerance
    << " | " << fmt(r.seconds) << " s (budget " << fmt(r.budget_seconds) << " s)";
  for (const auto& n : r.notes) s << "\n       " << n;
  return s.str();
}

}  // namespace hatvol::acceptance
