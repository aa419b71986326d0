#include "hatvol/io.hpp"

#include <fstream>
#include <sstream>

#include "hatvol/errors.hpp"

namespace hatvol::io {

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::invalid_input, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::invalid_input, "malformed JSON in '" + path + "': " + e.what());
  }
}

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  fail(ErrorKind::invalid_input, "expected an integer or a \"p/q\" string, got " + j.dump());
}

std::vector<Vec> points_from_json(const json& j) {
  if (!j.is_array()) fail(ErrorKind::invalid_input, "expected a list of points");
  std::vector<Vec> pts;
  for (const auto& p : j) {
    if (!p.is_array()) fail(ErrorKind::invalid_input, "expected a point (list of coordinates), got " + p.dump());
    Vec v;
    for (const auto& x : p) v.push_back(rational_from_json(x));
    pts.push_back(std::move(v));
  }
  return pts;
}

json to_json(const Rational& q) { return to_string(q); }

json to_json(const Vec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

json exponents_json(const std::vector<mono::Exponent>& gens) {
  std::vector<mono::Exponent> sorted(gens.rbegin(), gens.rend());
  json a = json::array();
  for (const auto& g : sorted) a.push_back(g);
  return a;
}

namespace {

std::vector<IntVec> int_vectors(const json& j, const char* what) {
  if (!j.is_array()) fail(ErrorKind::invalid_input, std::string(what) + " must be a list of integer vectors");
  std::vector<IntVec> out;
  for (const auto& r : j) {
    if (!r.is_array()) fail(ErrorKind::invalid_input, std::string(what) + " entry is not a list: " + r.dump());
    IntVec v;
    for (const auto& x : r) {
      if (!x.is_number_integer()) fail(ErrorKind::invalid_input, std::string(what) + " entry is not an integer: " + x.dump());
      v.push_back(x.get<std::int64_t>());
    }
    out.push_back(std::move(v));
  }
  return out;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::invalid_input, std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

int ModelSpec::n() const {
  if (auto p = std::get_if<models::MonomialPair>(&model)) return p->n;
  if (auto t = std::get_if<models::ToricSingularity>(&model)) return t->n();
  return std::get<models::FanoConeInput>(model).polytope.dim() + 1;
}

ModelSpec parse_model(const json& j) {
  const std::string type = field(j, "type").get<std::string>();
  ModelSpec spec;
  spec.type = type;
  if (type == "monomial_pair") {
    const json& nj = field(j, "n");
    if (!nj.is_number_integer()) fail(ErrorKind::invalid_input, "'n' must be an integer");
    const int n = nj.get<int>();
    Vec coeffs;
    if (j.contains("coeffs")) {
      for (const auto& c : j.at("coeffs")) coeffs.push_back(rational_from_json(c));
    } else {
      coeffs.assign(n > 0 ? n : 0, Rational(0));
    }
    spec.model = models::make_monomial_pair(n, coeffs);
  } else if (type == "toric") {
    auto rays = int_vectors(field(j, "rays"), "rays");
    if (rays.empty()) fail(ErrorKind::invalid_cone, "toric model needs rays");
    spec.model = models::make_toric(static_cast<int>(rays.front().size()), rays);
  } else if (type == "fano_cone") {
    Integer r = 1;
    if (j.contains("r")) r = rational_from_json(j.at("r")).get_num();
    spec.model = models::make_fano_cone_input(points_from_json(field(j, "polytope")), r);
    if (j.contains("q")) spec.q = rational_from_json(j.at("q")).get_num();
  } else {
    fail(ErrorKind::invalid_input, "unknown model type '" + type + "'");
  }
  return spec;
}

mono::MonomialIdeal parse_ideal(const json& j) {
  const json& gens = j.is_array() ? j : field(j, "generators");
  auto vs = int_vectors(gens, "generators");
  if (vs.empty()) fail(ErrorKind::invalid_input, "ideal needs at least one generator");
  int n = static_cast<int>(vs.front().size());
  if (j.is_object() && j.contains("n")) n = j.at("n").get<int>();
  return mono::MonomialIdeal(n, vs);
}

geom::ConvexBody parse_body(const json& j) {
  const json& pts = j.is_array() ? j : field(j, "vertices");
  auto points = points_from_json(pts);
  if (points.empty()) fail(ErrorKind::empty_input, "body has no points");
  return geom::convex_hull(points);
}

json model_json(const ModelSpec& m) {
  json j{{"type", m.type}};
  if (auto p = std::get_if<models::MonomialPair>(&m.model)) {
    j["n"] = p->n;
    j["coeffs"] = to_json(p->coeffs);
  } else if (auto t = std::get_if<models::ToricSingularity>(&m.model)) {
    j["rays"] = t->sigma.rays();
    j["m_sigma"] = to_json(t->m_sigma);
  } else {
    const auto& f = std::get<models::FanoConeInput>(m.model);
    json verts = json::array();
    for (const auto& v : f.polytope.vertices()) verts.push_back(to_json(v));
    j["polytope"] = verts;
    j["r"] = f.r.get_str();
    if (m.q) j["q"] = m.q->get_str();
  }
  return j;
}

json ideal_json(const mono::MonomialIdeal& a) { return json{{"n", a.n()}, {"generators", exponents_json(a.generators())}}; }

json to_json(const inv::NormalizedVolumeResult& r) {
  json j;
  j["exact"] = r.exact;
  j["method"] = inv::method_name(r.method);
  if (r.exact) {
    j["value"] = to_json(r.value);
    j["minimizer"] = to_json(r.minimizer);
  } else {
    j["value"] = r.approx;
    j["minimizer"] = r.minimizer_approx;
  }
  j["value_approx"] = r.approx;
  if (r.lower_bound) j["lower_bound"] = *r.lower_bound;
  j["certificate"] = r.certificate;
  j["iterations"] = r.iterations;
  return j;
}

json to_json(const inv::LctResult& r) {
  return json{{"value", to_json(r.value)},
              {"exact", true},
              {"method", "lp"},
              {"minimizer", to_json(r.minimizing_weight)},
              {"active_constraints", exponents_json(r.active)},
              {"howald", to_json(r.howald)}};
}

json to_json(const inv::ColengthValue& v, inv::ColengthMode mode) {
  json j{{"value", to_json(v.value)},
         {"exact", true},
         {"method", mode == inv::ColengthMode::exact ? "exhaustive" : "valuation_grid"},
         {"mode", inv::mode_name(mode)},
         {"argmin", exponents_json(v.argmin.generators())},
         {"colength", v.colength},
         {"lct", to_json(v.lct)},
         {"candidates", v.candidates}};
  if (mode == inv::ColengthMode::upper) {
    j["weight"] = to_json(v.weight);
    j["level"] = to_json(v.level);
  }
  return j;
}

json to_json(const inv::ColengthScanResult& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json x = to_json(row.v, r.mode);
    x["k"] = row.k;
    x["power_argmin"] = row.power_argmin;
    rows.push_back(x);
  }
  return json{{"c", to_json(r.c)},
              {"mode", inv::mode_name(r.mode)},
              {"exact", true},
              {"method", r.mode == inv::ColengthMode::exact ? "exhaustive" : "valuation_grid"},
              {"rows", rows},
              {"value", to_json(r.liminf_estimate)},
              {"liminf_estimate", to_json(r.liminf_estimate)},
              {"reference_hvol", to_json(r.reference_hvol)},
              {"from_above", r.from_above}};
}

json to_json(const geom::CountingErrorReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back(json{{"k", row.k}, {"count", row.count}, {"error", to_json(row.error)}, {"error_approx", row.error.get_d()}});
  json j{{"volume", to_json(r.volume)}, {"epsilon", to_json(r.epsilon)}, {"rows", rows}, {"exact", true},
         {"method", "lattice_count"}};
  j["k0"] = r.k0 ? json(*r.k0) : json(nullptr);
  j["value"] = j["k0"];
  return j;
}

json to_json(const inv::KssReport& r) {
  json j = to_json(r.hvol);
  j["hvol"] = j["value"];
  j["bound"] = to_json(r.bound);
  j["verdict"] = inv::verdict_name(r.verdict);
  j["oracle"] = r.oracle ? json(*r.oracle) : json(nullptr);
  j["tolerance"] = r.tolerance;
  j["value"] = inv::verdict_name(r.verdict);
  return j;
}

json to_json(const inv::QBoundReport& r) {
  return json{{"value", to_json(r.lhs)},     {"exact", true},         {"method", "closed_form"},
              {"n", r.n},                    {"q", r.q.get_str()},    {"degree", to_json(r.degree)},
              {"lhs", to_json(r.lhs)},       {"rhs", to_json(r.rhs)}, {"holds", r.holds},
              {"asserted", r.asserted},      {"equality", r.equality}};
}

std::string scan_csv(const inv::ColengthScanResult& r) {
  std::ostringstream out;
  out << "k,value_num,value_den,argmin_gens,mode\n";
  for (const auto& row : r.rows) {
    out << row.k << ',' << row.v.value.get_num().get_str() << ',' << row.v.value.get_den().get_str() << ",\""
        << exponents_json(row.v.argmin.generators()).dump() << "\"," << inv::mode_name(r.mode) << '\n';
  }
  return out.str();
}

std::string lattice_csv(const geom::CountingErrorReport& r) {
  std::ostringstream out;
  out << "k,count,error_num,error_den\n";
  for (const auto& row : r.rows)
    out << row.k << ',' << row.count << ',' << row.error.get_num().get_str() << ',' << row.error.get_den().get_str()
        << '\n';
  return out.str();
}

}  // namespace hatvol::io
