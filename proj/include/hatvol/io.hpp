// JSON ingestion of models, ideals and bodies; JSON/CSV serialization of
// results. Rationals travel as "p/q" strings.
#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <variant>

#include "hatvol/geometry.hpp"
#include "hatvol/invariants.hpp"
#include "hatvol/models.hpp"
#include "hatvol/monomial.hpp"

namespace hatvol::io {

using json = nlohmann::json;

json read_json_file(const std::string& path);

Rational rational_from_json(const json& j);
std::vector<Vec> points_from_json(const json& j);
json to_json(const Rational& q);
json to_json(const Vec& v);
json exponents_json(const std::vector<mono::Exponent>& gens);  // x-degree descending

struct ModelSpec {
  std::string type;  // monomial_pair | toric | fano_cone
  std::variant<models::MonomialPair, models::ToricSingularity, models::FanoConeInput> model;
  std::optional<Integer> q;  // fano_cone only
  int n() const;
};

ModelSpec parse_model(const json& j);
mono::MonomialIdeal parse_ideal(const json& j);
geom::ConvexBody parse_body(const json& j);

json model_json(const ModelSpec& m);
json ideal_json(const mono::MonomialIdeal& a);

json to_json(const inv::NormalizedVolumeResult& r);
json to_json(const inv::LctResult& r);
json to_json(const inv::ColengthValue& v, inv::ColengthMode mode);
json to_json(const inv::ColengthScanResult& r);
json to_json(const geom::CountingErrorReport& r);
json to_json(const inv::KssReport& r);
json to_json(const inv::QBoundReport& r);

std::string scan_csv(const inv::ColengthScanResult& r);
std::string lattice_csv(const geom::CountingErrorReport& r);

}  // namespace hatvol::io
