#include "hatvol/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hatvol/acceptance.hpp"

namespace hatvol::cli {

namespace {

const char* const kEquivariantWarning = "equivariant value: upper bound for the unrestricted infimum";

std::int64_t parse_int(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) fail(ErrorKind::invalid_input, "--" + key + " expects an integer, got '" + text + "'");
  return v;
}

double parse_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) fail(ErrorKind::invalid_input, "--" + key + " expects a number, got '" + text + "'");
  return v;
}

// "a..b", "a:b" or a comma list.
std::vector<std::int64_t> parse_k_range(const std::string& text) {
  std::vector<std::int64_t> ks;
  for (const char* sep : {"..", ":"}) {
    auto pos = text.find(sep);
    if (pos == std::string::npos) continue;
    const auto lo = parse_int("k-range", text.substr(0, pos));
    const auto hi = parse_int("k-range", text.substr(pos + std::string(sep).size()));
    if (lo < 1 || hi < lo) fail(ErrorKind::invalid_input, "--k-range '" + text + "' is empty or starts below 1");
    for (auto k = lo; k <= hi; ++k) ks.push_back(k);
    return ks;
  }
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) ks.push_back(parse_int("k-range", part));
  if (ks.empty()) fail(ErrorKind::invalid_input, "--k-range is empty");
  return ks;
}

class Params {
 public:
  explicit Params(const JobSpec& job) : job_(job) {}

  bool has(const std::string& key) const { return job_.params.count(key) > 0; }

  std::string str(const std::string& key, const std::string& fallback) {
    auto it = job_.params.find(key);
    const std::string v = it == job_.params.end() ? fallback : it->second;
    used_[key] = v;
    return v;
  }
  Rational rational(const std::string& key, const Rational& fallback) {
    if (!has(key)) {
      used_[key] = to_string(fallback);
      return fallback;
    }
    Rational q;
    try {
      q = parse_rational(job_.params.at(key));
    } catch (const Error&) {
      fail(ErrorKind::invalid_input, "--" + key + " expects a rational, got '" + job_.params.at(key) + "'");
    }
    used_[key] = to_string(q);
    return q;
  }
  std::int64_t integer(const std::string& key, std::int64_t fallback) {
    const auto v = has(key) ? parse_int(key, job_.params.at(key)) : fallback;
    used_[key] = v;
    return v;
  }
  std::int64_t required_integer(const std::string& key) {
    if (!has(key)) fail(ErrorKind::invalid_input, job_.command + " requires --" + key);
    return integer(key, 0);
  }
  double real(const std::string& key, double fallback) {
    const double v = has(key) ? parse_double(key, job_.params.at(key)) : fallback;
    used_[key] = v;
    return v;
  }
  const json& used() const { return used_; }

 private:
  const JobSpec& job_;
  json used_ = json::object();
};

io::ModelSpec load_model(const JobSpec& job) {
  if (job.model_path.empty()) fail(ErrorKind::invalid_input, job.command + " requires --model");
  return io::parse_model(io::read_json_file(job.model_path));
}

mono::MonomialIdeal load_ideal(const JobSpec& job) {
  if (job.ideal_path.empty()) fail(ErrorKind::invalid_input, job.command + " requires --ideal");
  return io::parse_ideal(io::read_json_file(job.ideal_path));
}

const models::MonomialPair& need_pair(const io::ModelSpec& m, const std::string& command) {
  auto p = std::get_if<models::MonomialPair>(&m.model);
  if (!p) fail(ErrorKind::invalid_input, command + " requires a monomial_pair model, got " + m.type);
  return *p;
}

const models::FanoConeInput& need_fano(const io::ModelSpec& m, const std::string& command) {
  auto f = std::get_if<models::FanoConeInput>(&m.model);
  if (!f) fail(ErrorKind::invalid_input, command + " requires a fano_cone model, got " + m.type);
  return *f;
}

void check_same_dim(const models::MonomialPair& p, const mono::MonomialIdeal& a) {
  if (p.n != a.n())
    fail(ErrorKind::invalid_input, "ideal lives in " + std::to_string(a.n()) + " variables, model has dimension " +
                                       std::to_string(p.n));
}

inv::ColengthMode parse_mode(const std::string& s) {
  if (s == "exact") return inv::ColengthMode::exact;
  if (s == "upper") return inv::ColengthMode::upper;
  fail(ErrorKind::invalid_input, "--mode must be exact or upper, got '" + s + "'");
}

int threads_of(Params& p) {
  const auto t = p.integer("threads", 1);
  if (t < 1 || t > 256) fail(ErrorKind::invalid_input, "--threads must lie in [1, 256]");
  return static_cast<int>(t);
}

inv::ToricOptions toric_options(Params& p) {
  inv::ToricOptions o;
  o.tolerance = p.real("tol", o.tolerance);
  if (!(o.tolerance > 0)) fail(ErrorKind::invalid_input, "--tol must be positive");
  return o;
}

bool fault_injected(Params& p) {
  const std::string f = p.str("inject-fault", "none");
  if (f == "none") return false;
  if (f == "mult-off-by-nfact") return true;
  fail(ErrorKind::invalid_input, "unknown fault '" + f + "'");
}

json job_json(const JobSpec& job) {
  json j{{"command", job.command}};
  if (!job.model_path.empty()) j["model"] = job.model_path;
  if (!job.ideal_path.empty()) j["ideal"] = job.ideal_path;
  if (!job.body_path.empty()) j["body"] = job.body_path;
  j["params"] = job.params;
  return j;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c{"hvol", "lct", "mult", "colength", "hatl",
                                          "scan", "lattice", "cone", "qbound", "verify"};
  return c;
}

ReportRecord run(const JobSpec& job) {
  const auto t0 = std::chrono::steady_clock::now();
  ReportRecord rec;
  rec.job = job_json(job);
  Params p(job);
  const std::string& cmd = job.command;
  json result;

  if (cmd == "hvol") {
    const auto model = load_model(job);
    if (auto pair = std::get_if<models::MonomialPair>(&model.model)) {
      result = io::to_json(inv::hvol_closed_form(*pair));
    } else {
      const auto opts = toric_options(p);
      const auto toric = model.type == "toric" ? std::get<models::ToricSingularity>(model.model)
                                               : models::cone_construction(need_fano(model, cmd));
      result = io::to_json(inv::hvol_toric(toric, opts));
      rec.warnings.push_back(kEquivariantWarning);
    }
    result["model"] = io::model_json(model);
  } else if (cmd == "lct") {
    const auto model = load_model(job);
    const auto& pair = need_pair(model, cmd);
    const auto ideal = load_ideal(job);
    check_same_dim(pair, ideal);
    result = io::to_json(inv::lct(pair, ideal));
  } else if (cmd == "mult") {
    const auto ideal = load_ideal(job);
    std::optional<io::ModelSpec> model;
    if (!job.model_path.empty()) model = load_model(job);
    const auto pair = model ? need_pair(*model, cmd) : models::smooth_point(ideal.n());
    check_same_dim(pair, ideal);
    const auto l = inv::lct(pair, ideal);
    result = json{{"value", io::to_json(mono::multiplicity(ideal))},
                  {"exact", true},
                  {"method", "newton_covolume"},
                  {"lct", io::to_json(l.value)},
                  {"normalized_multiplicity", io::to_json(inv::normalized_multiplicity(pair, ideal))},
                  {"ideal", io::ideal_json(ideal)}};
  } else if (cmd == "colength") {
    const auto ideal = load_ideal(job);
    result = json{{"value", std::to_string(mono::colength(ideal))},
                  {"exact", true},
                  {"method", "staircase"},
                  {"ideal", io::ideal_json(ideal)}};
  } else if (cmd == "hatl") {
    const auto model = load_model(job);
    const auto& pair = need_pair(model, cmd);
    const auto k = p.required_integer("k");
    const Rational c = p.rational("c", inv::default_c(pair.n));
    const auto mode = parse_mode(p.str("mode", "exact"));
    inv::ColengthOptions opts;
    opts.threads = threads_of(p);
    result = io::to_json(inv::normalized_colength(pair, c, static_cast<int>(k), mode, opts), mode);
    if (mode == inv::ColengthMode::exact) rec.warnings.push_back(kEquivariantWarning);
  } else if (cmd == "scan") {
    const auto model = load_model(job);
    const auto& pair = need_pair(model, cmd);
    std::vector<int> ks;
    if (p.has("k-range")) {
      for (auto k : parse_k_range(p.str("k-range", ""))) ks.push_back(static_cast<int>(k));
    } else {
      const auto lo = p.integer("k-min", 2);
      const auto hi = p.required_integer("k-max");
      if (hi < lo) fail(ErrorKind::invalid_input, "--k-max is below --k-min");
      for (auto k = lo; k <= hi; ++k) ks.push_back(static_cast<int>(k));
    }
    const Rational c = p.rational("c", inv::default_c(pair.n));
    const auto mode = parse_mode(p.str("mode", "exact"));
    inv::ColengthOptions opts;
    opts.threads = threads_of(p);
    const auto scan = inv::colength_convergence_scan(pair, c, ks, mode, opts);
    result = io::to_json(scan);
    rec.csv = io::scan_csv(scan);
    if (mode == inv::ColengthMode::exact) rec.warnings.push_back(kEquivariantWarning);
  } else if (cmd == "lattice") {
    if (job.body_path.empty()) fail(ErrorKind::invalid_input, "lattice requires --body");
    const auto body = io::parse_body(io::read_json_file(job.body_path));
    const auto ks = parse_k_range(p.str("k-range", "1..80"));
    const Rational eps = p.rational("epsilon", frac(1, 20));
    const auto rep = geom::counting_error_probe(body, ks, eps);
    result = io::to_json(rep);
    rec.csv = io::lattice_csv(rep);
  } else if (cmd == "cone") {
    const auto model = load_model(job);
    const auto& input = need_fano(model, cmd);
    const double tol = p.real("tol", 1e-6);
    result = io::to_json(inv::kss_via_cone(input, tol));
    rec.warnings.push_back(kEquivariantWarning);
  } else if (cmd == "qbound") {
    const auto model = load_model(job);
    const auto& input = need_fano(model, cmd);
    Integer q;
    if (p.has("q")) {
      q = p.integer("q", 0);
    } else if (model.q) {
      q = *model.q;
      p.str("q", q.get_str());
    } else {
      fail(ErrorKind::invalid_input, "qbound requires --q or a \"q\" field in the model");
    }
    result = io::to_json(inv::q_bound_check(input.polytope, q));
  } else if (cmd == "verify") {
    acceptance::Options opts;
    const std::string suite = p.str("suite", "fast");
    if (suite == "fast") opts.suite = acceptance::Suite::fast;
    else if (suite == "full") opts.suite = acceptance::Suite::full;
    else fail(ErrorKind::invalid_input, "--suite must be fast or full, got '" + suite + "'");
    opts.threads = threads_of(p);
    opts.fault_mult_off_by_nfact = fault_injected(p);
    if (p.has("criteria"))
      for (auto id : parse_k_range(p.str("criteria", ""))) opts.only.push_back(static_cast<int>(id));
    const auto rows = acceptance::run_suite(opts);
    json criteria = json::array();
    std::ostringstream text;
    bool all = true;
    for (const auto& r : rows) {
      all &= r.pass;
      criteria.push_back(json{{"id", r.id},
                              {"name", r.name},
                              {"pass", r.pass},
                              {"measured", r.measured},
                              {"tolerance", r.tolerance},
                              {"notes", r.notes}});
      text << acceptance::format_line(r) << '\n';
    }
    const auto passed = std::count_if(rows.begin(), rows.end(), [](const auto& r) { return r.pass; });
    text << passed << "/" << rows.size() << " criteria passed\n";
    result = json{{"value", all ? "PASS" : "FAIL"}, {"exact", true}, {"method", "acceptance_suite"},
                  {"suite", suite},                 {"criteria", criteria}};
    rec.text = text.str();
    if (!all) rec.exit_code = exit_code_for(ErrorKind::invariant_violation);
  } else {
    fail(ErrorKind::invalid_input, "unknown command '" + cmd + "'");
  }

  result["parameters"] = p.used();
  rec.result = std::move(result);
  rec.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rec;
}

json report_json(const ReportRecord& r) {
  json j = r.result;
  j["job"] = r.job;
  j["warnings"] = r.warnings;
  j["timing_ms"] = r.timing_ms;
  return j;
}

bool validate_report(const json& report, std::string* why) {
  auto bad = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (!report.is_object()) return bad("report is not an object");
  for (const char* key : {"value", "exact", "method", "job", "parameters", "warnings"})
    if (!report.contains(key)) return bad(std::string("missing field '") + key + "'");
  if (!report["exact"].is_boolean()) return bad("'exact' is not a boolean");
  if (!report["method"].is_string()) return bad("'method' is not a string");
  if (!report["job"].contains("command")) return bad("job echo lacks the command");
  const auto& v = report["value"];
  const std::string cmd = report["job"]["command"].get<std::string>();
  if (cmd == "verify" || cmd == "cone") return v.is_string() ? true : bad("verdict is not a string");
  if (cmd == "lattice") return (v.is_null() || v.is_number_integer()) ? true : bad("k0 is not an integer");
  if (report["exact"].get<bool>()) {
    if (!v.is_string()) return bad("exact value is not a \"p/q\" string");
    try {
      parse_rational(v.get<std::string>());
    } catch (const Error&) {
      return bad("exact value does not parse as a rational");
    }
  } else if (!v.is_number()) {
    return bad("inexact value is not a number");
  }
  return true;
}

json error_json(const Error& e) {
  return json{{"error", e.name()}, {"message", e.what()}, {"exit_code", exit_code_for(e.kind())}};
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Normalized volumes, log canonical thresholds and colengths of monomial and toric singularities",
               "hatvol"};
  std::string command;
  app.add_option("command", command, "hvol|lct|mult|colength|hatl|scan|lattice|cone|qbound|verify")
      ->required()
      ->check(CLI::IsMember(commands()));
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> opts;
  auto add = [&](const std::string& key, const std::string& help) {
    opts[key] = app.add_option("--" + key, values[key], help);
  };
  add("model", "model JSON file");
  add("ideal", "ideal JSON file");
  add("body", "convex body JSON file");
  add("out", "write the report to this file instead of stdout");
  add("format", "json|csv (verify also accepts text)");
  add("tol", "relative tolerance");
  add("threads", "worker threads");
  add("c", "colength constant, rational");
  add("k", "staircase degree");
  add("k-min", "first k of a scan");
  add("k-max", "last k of a scan");
  add("mode", "exact|upper");
  add("k-range", "dilations: a..b or a comma list");
  add("epsilon", "counting error threshold, rational");
  add("delta", "Lech inner degree ratio, rational");
  add("q", "Fano index");
  add("suite", "verify suite: fast|full");
  add("criteria", "verify: criterion ids, a..b or a comma list");
  opts["inject-fault"] = app.add_option("--inject-fault", values["inject-fault"])->group("");
  std::string config_path;
  app.add_option("--config", config_path, "key = value config file");

  auto emit_error = [&](const Error& e) {
    err << error_json(e).dump() << '\n';
    return exit_code_for(e.kind());
  };

  try {
    try {
      app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::ParseError& e) {
      fail(ErrorKind::invalid_input, e.what());
    }

    std::map<std::string, std::string> config;
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) fail(ErrorKind::invalid_input, "cannot open config '" + config_path + "'");
      for (const auto& item : CLI::ConfigTOML().from_config(in)) {
        const std::string key = item.fullname();
        if (!opts.count(key)) fail(ErrorKind::invalid_input, "unknown config key '" + key + "'");
        std::string joined;
        for (std::size_t i = 0; i < item.inputs.size(); ++i) joined += (i ? "," : "") + item.inputs[i];
        config[key] = joined;
      }
    }

    JobSpec job;
    job.command = command;
    std::map<std::string, std::string> resolved;
    for (const auto& [key, opt] : opts) {
      if (opt->count() > 0) {
        resolved[key] = values[key];
        continue;
      }
      std::string env = "HATVOL_" + key;
      std::transform(env.begin(), env.end(), env.begin(), [](char ch) { return ch == '-' ? '_' : std::toupper(ch); });
      if (const char* v = std::getenv(env.c_str()); v && *v) {
        resolved[key] = v;
      } else if (config.count(key)) {
        resolved[key] = config[key];
      }
    }
    auto take = [&](const char* key) {
      auto it = resolved.find(key);
      if (it == resolved.end()) return std::string();
      std::string v = it->second;
      resolved.erase(it);
      return v;
    };
    job.model_path = take("model");
    job.ideal_path = take("ideal");
    job.body_path = take("body");
    const std::string out_path = take("out");
    std::string format = take("format");
    job.params = resolved;
    if (format.empty()) format = command == "verify" ? "text" : "json";
    if (format != "json" && format != "csv" && format != "text")
      fail(ErrorKind::invalid_input, "--format must be json or csv, got '" + format + "'");
    if (format == "csv" && command != "scan" && command != "lattice")
      fail(ErrorKind::invalid_input, "csv output is available for scan and lattice only");
    if (format == "text" && command != "verify") fail(ErrorKind::invalid_input, "text output is available for verify only");
    job.format = format;

    const ReportRecord rec = run(job);
    std::string payload;
    if (format == "csv") payload = rec.csv;
    else if (format == "text") payload = rec.text;
    else payload = report_json(rec).dump() + "\n";

    if (out_path.empty()) {
      out << payload;
    } else {
      std::ofstream f(out_path);
      if (!f) fail(ErrorKind::invalid_input, "cannot write '" + out_path + "'");
      f << payload;
    }
    if (rec.exit_code != 0) {
      std::string failed;
      for (const auto& c : rec.result["criteria"])
        if (!c["pass"].get<bool>()) failed += (failed.empty() ? "" : ", ") + std::to_string(c["id"].get<int>());
      return emit_error(Error(ErrorKind::invariant_violation, "acceptance criteria failed: " + failed));
    }
    return 0;
  } catch (const Error& e) {
    return emit_error(e);
  } catch (const std::exception& e) {
    return emit_error(Error(ErrorKind::invariant_violation, std::string("internal error: ") + e.what()));
  }
}

}  // namespace hatvol::cli
