#include "hatvol/monomial.hpp"

#include <algorithm>
#include <numeric>

#include "hatvol/errors.hpp"
#include "hatvol/linalg.hpp"

namespace hatvol::mono {

namespace {

bool divides(const Exponent& g, const Exponent& u) {
  for (std::size_t i = 0; i < g.size(); ++i)
    if (g[i] > u[i]) return false;
  return true;
}

std::int64_t degree(const Exponent& u) { return std::accumulate(u.begin(), u.end(), std::int64_t{0}); }

/// Number of u in N^n outside the ideal generated by gens (finite staircase).
std::int64_t count_standard(std::vector<Exponent> gens, int n) {
  for (const auto& g : gens)
    if (std::all_of(g.begin(), g.end(), [](auto x) { return x == 0; })) return 0;
  if (n == 1) {
    std::int64_t m = gens.front()[0];
    for (const auto& g : gens) m = std::min(m, g[0]);
    return m;
  }
  std::sort(gens.begin(), gens.end(), [n](const Exponent& a, const Exponent& b) { return a[n - 1] < b[n - 1]; });
  std::vector<Exponent> active;
  std::size_t next = 0;
  std::int64_t total = 0;
  for (std::int64_t t = 0;; ++t) {
    bool grew = false;
    while (next < gens.size() && gens[next][n - 1] <= t) {
      active.emplace_back(gens[next].begin(), gens[next].end() - 1);
      ++next;
      grew = true;
    }
    if (grew) active = antichain_reduce(std::move(active));
    if (!active.empty() && std::all_of(active.front().begin(), active.front().end(), [](auto x) { return x == 0; }))
      break;
    if (active.empty()) fail(ErrorKind::infinite_colength, "ideal is not m-primary");
    total += count_standard(active, n - 1);
  }
  return total;
}

void check_primary(const MonomialIdeal& a, ErrorKind kind) {
  if (!a.is_m_primary()) fail(kind, "ideal " + a.to_string() + " is not m-primary");
}

}  // namespace

std::vector<Exponent> antichain_reduce(std::vector<Exponent> gens) {
  std::sort(gens.begin(), gens.end(), [](const Exponent& a, const Exponent& b) {
    auto da = degree(a), db = degree(b);
    return da != db ? da < db : a < b;
  });
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<Exponent> kept;
  for (auto& g : gens) {
    bool dominated = false;
    for (const auto& h : kept)
      if (divides(h, g)) {
        dominated = true;
        break;
      }
    if (!dominated) kept.push_back(std::move(g));
  }
  std::sort(kept.begin(), kept.end());
  return kept;
}

// -------------------------------------------------------------- MonomialIdeal

MonomialIdeal::MonomialIdeal(int n, std::vector<Exponent> generators) : n_(n) {
  if (n < 1) fail(ErrorKind::invalid_input, "ambient dimension must be >= 1");
  if (generators.empty()) fail(ErrorKind::invalid_input, "the zero ideal is not supported");
  for (const auto& g : generators) {
    if (static_cast<int>(g.size()) != n) fail(ErrorKind::invalid_input, "generator of wrong length");
    for (auto x : g)
      if (x < 0) fail(ErrorKind::invalid_input, "negative exponent");
  }
  gens_ = antichain_reduce(std::move(generators));
}

MonomialIdeal MonomialIdeal::maximal(int n) { return maximal_power(n, 1); }

MonomialIdeal MonomialIdeal::maximal_power(int n, int k) {
  if (k < 0) fail(ErrorKind::invalid_input, "negative power of the maximal ideal");
  std::vector<Exponent> gens;
  Exponent u(n, 0);
  // all exponents of total degree k
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n - 1) {
      u[i] = left;
      gens.push_back(u);
      return;
    }
    for (int e = left; e >= 0; --e) {
      u[i] = e;
      rec(i + 1, left - e);
    }
  };
  rec(0, k);
  return MonomialIdeal(n, std::move(gens));
}

bool MonomialIdeal::contains(const Exponent& u) const {
  for (const auto& g : gens_)
    if (divides(g, u)) return true;
  return false;
}

bool MonomialIdeal::is_unit() const {
  return std::all_of(gens_.front().begin(), gens_.front().end(), [](auto x) { return x == 0; });
}

std::optional<std::int64_t> MonomialIdeal::pure_power(int axis) const {
  std::optional<std::int64_t> best;
  for (const auto& g : gens_) {
    bool pure = true;
    for (int j = 0; j < n_; ++j)
      if (j != axis && g[j] != 0) pure = false;
    if (pure && (!best || g[axis] < *best)) best = g[axis];
  }
  return best;
}

bool MonomialIdeal::is_m_primary() const {
  for (int i = 0; i < n_; ++i)
    if (!pure_power(i)) return false;
  return true;
}

std::string MonomialIdeal::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) s += ", ";
    s += "[";
    for (int j = 0; j < n_; ++j) {
      if (j) s += ",";
      s += std::to_string(gens_[i][j]);
    }
    s += "]";
  }
  return s + ")";
}

// ------------------------------------------------------- colength and powers

std::vector<Exponent> staircase(const MonomialIdeal& a, std::int64_t max_points) {
  check_primary(a, ErrorKind::infinite_colength);
  if (a.is_unit()) return {};
  const int n = a.n();
  std::vector<std::int64_t> box(n);
  Integer volume = 1;
  for (int i = 0; i < n; ++i) {
    box[i] = *a.pure_power(i);
    volume *= static_cast<long>(box[i]);
  }
  if (volume > max_points)
    fail(ErrorKind::enumeration_budget_exceeded,
         "staircase bounding box has " + volume.get_str() + " points, budget is " + std::to_string(max_points));
  std::vector<Exponent> out;
  Exponent u(n, 0);
  while (true) {
    if (!a.contains(u)) out.push_back(u);
    int j = n - 1;
    while (j >= 0 && u[j] == box[j] - 1) u[j--] = 0;
    if (j < 0) break;
    ++u[j];
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t colength(const MonomialIdeal& a) {
  check_primary(a, ErrorKind::infinite_colength);
  return count_standard(a.generators(), a.n());
}

MonomialIdeal power(const MonomialIdeal& a, int m) {
  if (m < 1) fail(ErrorKind::invalid_input, "power exponent must be >= 1");
  std::vector<Exponent> cur = a.generators();
  for (int step = 1; step < m; ++step) {
    std::vector<Exponent> next;
    next.reserve(cur.size() * a.generators().size());
    for (const auto& g : cur)
      for (const auto& h : a.generators()) {
        Exponent s(g);
        for (std::size_t i = 0; i < s.size(); ++i) s[i] += h[i];
        next.push_back(std::move(s));
      }
    cur = antichain_reduce(std::move(next));
  }
  return MonomialIdeal(a.n(), std::move(cur));
}

// ---------------------------------------------------------- Newton polyhedra

NewtonPolyhedron::NewtonPolyhedron(const MonomialIdeal& a)
    : poly_([&] {
        std::vector<Vec> verts;
        for (const auto& g : a.generators()) verts.push_back(to_vec(g));
        std::vector<IntVec> rays;
        for (int i = 0; i < a.n(); ++i) {
          IntVec e(a.n(), 0);
          e[i] = 1;
          rays.push_back(std::move(e));
        }
        return geom::make_polyhedron(verts, rays);
      }()) {
  for (const auto& h : poly_.facets()) {
    NewtonFacet f;
    f.normal.resize(h.normal.size());
    for (std::size_t i = 0; i < h.normal.size(); ++i) f.normal[i] = -h.normal[i];
    f.offset = -h.offset;
    for (int idx : h.incident) {
      Exponent e;
      for (const auto& x : poly_.vertices()[idx]) e.push_back(to_int64(x.get_num()));
      f.vertices.push_back(std::move(e));
    }
    facets_.push_back(std::move(f));
  }
}

bool NewtonPolyhedron::contains(const Vec& u) const { return poly_.contains(u); }

NewtonPolyhedron newton_polyhedron(const MonomialIdeal& a) { return NewtonPolyhedron(a); }

Rational multiplicity(const MonomialIdeal& a) {
  check_primary(a, ErrorKind::infinite_covolume);
  if (a.is_unit()) return 0;
  NewtonPolyhedron np(a);
  Rational total = 0;
  for (const auto& f : np.facets()) {
    if (!f.compact()) continue;
    std::vector<Vec> pts;
    for (const auto& v : f.vertices) pts.push_back(to_vec(v));
    auto face = geom::convex_hull(pts);
    for (const auto& simplex : geom::triangulate(face)) {
      linalg::Matrix m;
      for (int i : simplex) m.push_back(face.vertices()[i]);
      total += abs(linalg::determinant(std::move(m)));
    }
  }
  return total;
}

MonomialIdeal integral_closure(const MonomialIdeal& a) {
  check_primary(a, ErrorKind::infinite_colength);
  if (a.is_unit()) return a;
  NewtonPolyhedron np(a);
  const int n = a.n();
  std::vector<std::int64_t> box(n);
  for (int i = 0; i < n; ++i) box[i] = *a.pure_power(i);
  std::vector<Exponent> members;
  Exponent u(n, 0);
  while (true) {
    if (np.contains(to_vec(u))) members.push_back(u);
    int j = n - 1;
    while (j >= 0 && u[j] == box[j]) u[j--] = 0;
    if (j < 0) break;
    ++u[j];
  }
  return MonomialIdeal(n, std::move(members));
}

MonomialIdeal valuation_ideal(const Vec& weights, const Rational& k) {
  const int n = static_cast<int>(weights.size());
  if (n < 1) fail(ErrorKind::invalid_weight, "empty weight vector");
  for (const auto& w : weights)
    if (w <= 0) fail(ErrorKind::invalid_weight, "weights must be positive, got " + hatvol::to_string(w));
  if (k <= 0) return MonomialIdeal(n, {Exponent(n, 0)});

  Integer l = k.get_den();
  for (const auto& w : weights) l = lcm(l, Integer(w.get_den()));
  std::vector<Integer> W;
  for (const auto& w : weights) W.push_back(w.get_num() * (l / w.get_den()));
  const Integer K = k.get_num() * (l / k.get_den());

  std::vector<std::int64_t> box(n);
  for (int i = 0; i < n; ++i) {
    Integer c;
    mpz_cdiv_q(c.get_mpz_t(), K.get_mpz_t(), W[i].get_mpz_t());
    box[i] = to_int64(c);
  }
  std::vector<Exponent> gens;
  Exponent u(n, 0);
  while (true) {
    Integer val = 0;
    for (int i = 0; i < n; ++i) val += W[i] * static_cast<long>(u[i]);
    if (val >= K) {
      bool minimal = true;
      for (int i = 0; i < n && minimal; ++i)
        if (u[i] > 0 && val - W[i] >= K) minimal = false;
      if (minimal) gens.push_back(u);
    }
    int j = n - 1;
    while (j >= 0 && u[j] == box[j]) u[j--] = 0;
    if (j < 0) break;
    ++u[j];
  }
  return MonomialIdeal(n, std::move(gens));
}

// --------------------------------------------------------------- enumeration

bool staircase_lex_less(const std::vector<Exponent>& a, const std::vector<Exponent>& b) {
  std::size_t i = 0;
  while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
  if (i == a.size() && i == b.size()) return false;
  if (i == a.size()) return true;   // b holds an extra monomial that a lacks
  if (i == b.size()) return false;
  return b[i] < a[i];  // the smaller monomial is in b only, so a lacks it
}

void for_each_staircase(const StaircaseQuery& q, const EnumerationBudget& budget,
                        const std::function<void(const EnumeratedIdeal&)>& visit) {
  if (q.n != 2 && q.n != 3) fail(ErrorKind::invalid_input, "staircase enumeration supports n = 2 or 3");
  if (q.k < 1) fail(ErrorKind::invalid_input, "k must be >= 1");
  const int limit = q.n == 2 ? budget.max_k_n2 : budget.max_k_n3;
  if (q.k > limit)
    fail(ErrorKind::enumeration_budget_exceeded, "enumeration budget for n=" + std::to_string(q.n) + " is k <= " +
                                                     std::to_string(limit) + ", requested k=" + std::to_string(q.k));
  if (q.inner_degree < 1 || q.inner_degree > q.k)
    fail(ErrorKind::invalid_input, "inner degree must lie in [1, k]");

  const int n = q.n;
  std::vector<Exponent> all;  // degree <= k, lexicographic
  {
    Exponent u(n, 0);
    while (true) {
      if (degree(u) <= q.k) all.push_back(u);
      int j = n - 1;
      while (j >= 0 && u[j] == q.k) u[j--] = 0;
      if (j < 0) break;
      ++u[j];
    }
    std::sort(all.begin(), all.end());
  }
  std::vector<int> region;  // indices of degree < k
  std::vector<int> pos(all.size(), -1);
  for (std::size_t i = 0; i < all.size(); ++i)
    if (degree(all[i]) < q.k) {
      pos[i] = static_cast<int>(region.size());
      region.push_back(static_cast<int>(i));
    }
  auto index_of = [&](const Exponent& u) {
    return static_cast<int>(std::lower_bound(all.begin(), all.end(), u) - all.begin());
  };
  // predecessors (u − e_i) as region positions, for every monomial of degree <= k
  std::vector<std::vector<int>> preds(all.size());
  for (std::size_t i = 0; i < all.size(); ++i)
    for (int c = 0; c < n; ++c)
      if (all[i][c] > 0) {
        Exponent v = all[i];
        --v[c];
        preds[i].push_back(pos[index_of(v)]);
      }

  const int R = static_cast<int>(region.size());
  std::vector<char> in(R, 0);
  std::vector<Exponent> current;
  std::size_t counter = 0;
  std::int64_t included = 0;

  auto emit = [&] {
    std::vector<Exponent> gens;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (pos[i] >= 0 && in[pos[i]]) continue;
      bool minimal = true;
      for (int p : preds[i])
        if (!in[p]) {
          minimal = false;
          break;
        }
      if (minimal) gens.push_back(all[i]);
    }
    EnumeratedIdeal e{counter++, &current, MonomialIdeal(n, std::move(gens))};
    visit(e);
  };

  std::function<void(int)> rec = [&](int r) {
    if (included + (R - r) < q.min_colength) return;
    if (r == R) {
      emit();
      return;
    }
    const Exponent& u = all[region[r]];
    const bool forced = degree(u) < q.inner_degree;
    if (!forced) rec(r + 1);
    bool allowed = true;
    for (int p : preds[region[r]])
      if (!in[p]) allowed = false;
    if (allowed) {
      in[r] = 1;
      ++included;
      current.push_back(u);
      rec(r + 1);
      current.pop_back();
      --included;
      in[r] = 0;
    }
  };
  rec(0);
}

std::vector<MonomialIdeal> enumerate_staircases(const StaircaseQuery& q, const EnumerationBudget& budget) {
  std::vector<MonomialIdeal> out;
  for_each_staircase(q, budget, [&](const EnumeratedIdeal& e) { out.push_back(e.ideal); });
  return out;
}

}  // namespace hatvol::mono
