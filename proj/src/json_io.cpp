#include "levysup/json_io.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "levysup/errors.hpp"

namespace levysup {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::set<std::string>& allowed,
                const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    require(allowed.count(it.key()) > 0, Err::Validation,
            "unknown key '" + it.key() + "' in " + where);
}

double get_num(const json& j, const std::string& key, const std::string& where) {
  require(j.contains(key), Err::Validation,
          "missing key '" + key + "' in " + where);
  require(j.at(key).is_number(), Err::Validation,
          "'" + key + "' in " + where + " must be a number");
  return j.at(key).get<double>();
}

int get_int(const json& j, const std::string& key, const std::string& where) {
  require(j.contains(key) && j.at(key).is_number_integer(), Err::Validation,
          "'" + key + "' in " + where + " must be an integer");
  return j.at(key).get<int>();
}

std::vector<double> get_vec(const json& j, const std::string& key,
                            const std::string& where) {
  require(j.contains(key) && j.at(key).is_array(), Err::Validation,
          "'" + key + "' in " + where + " must be an array of numbers");
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    require(v.is_number(), Err::Validation,
            "'" + key + "' in " + where + " must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

cdouble get_complex(const json& v, const std::string& where) {
  require(v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number(),
          Err::Validation, where + " must be a [re, im] pair");
  return cdouble(v[0].get<double>(), v[1].get<double>());
}

PositiveJumps parse_pos(const json& j) {
  check_keys(j, {"rate", "kind", "params"}, "pos_jumps");
  PositiveJumps p;
  p.rate = get_num(j, "rate", "pos_jumps");
  if (p.rate == 0.0 && !j.contains("kind")) return p;
  require(j.contains("kind") && j.at("kind").is_string(), Err::Validation,
          "pos_jumps needs a string 'kind' when rate > 0");
  std::string kind = j.at("kind").get<std::string>();
  json params = j.contains("params") ? j.at("params") : json::object();
  if (kind == "exponential") {
    p.kind = PosKind::Exponential;
    check_keys(params, {"beta"}, "pos_jumps.params");
    p.beta = get_num(params, "beta", "pos_jumps.params");
  } else if (kind == "erlang") {
    p.kind = PosKind::Erlang;
    check_keys(params, {"n", "beta"}, "pos_jumps.params");
    p.n = get_int(params, "n", "pos_jumps.params");
    p.beta = get_num(params, "beta", "pos_jumps.params");
  } else if (kind == "hyperexponential") {
    p.kind = PosKind::Hyperexponential;
    check_keys(params, {"weights", "rates"}, "pos_jumps.params");
    p.weights = get_vec(params, "weights", "pos_jumps.params");
    p.rates = get_vec(params, "rates", "pos_jumps.params");
  } else if (kind == "halfnormal") {
    p.kind = PosKind::HalfNormal;
    check_keys(params, {"beta"}, "pos_jumps.params");
    p.beta = get_num(params, "beta", "pos_jumps.params");
  } else if (kind == "tabulated") {
    p.kind = PosKind::Tabulated;
    check_keys(params, {"x", "f"}, "pos_jumps.params");
    p.tab_x = get_vec(params, "x", "pos_jumps.params");
    p.tab_f = get_vec(params, "f", "pos_jumps.params");
  } else {
    fail(Err::Validation, "unknown pos_jumps kind '" + kind + "'");
  }
  return p;
}

NegativeJumps parse_neg(const json& j) {
  check_keys(j, {"rate", "kind", "params"}, "neg_jumps");
  NegativeJumps g;
  g.rate = get_num(j, "rate", "neg_jumps");
  if (g.rate == 0.0 && !j.contains("kind")) return g;
  require(j.contains("kind") && j.at("kind").is_string(), Err::Validation,
          "neg_jumps needs a string 'kind' when rate > 0");
  std::string kind = j.at("kind").get<std::string>();
  json params = j.contains("params") ? j.at("params") : json::object();
  if (kind == "hyperexponential") {
    g.kind = NegKind::Hyperexponential;
    check_keys(params, {"weights", "rates"}, "neg_jumps.params");
    g.weights = get_vec(params, "weights", "neg_jumps.params");
    g.rates = get_vec(params, "rates", "neg_jumps.params");
  } else if (kind == "erlang") {
    g.kind = NegKind::Erlang;
    check_keys(params, {"d", "b"}, "neg_jumps.params");
    g.d = get_int(params, "d", "neg_jumps.params");
    g.b = get_num(params, "b", "neg_jumps.params");
  } else if (kind == "poleform") {
    g.kind = NegKind::PoleForm;
    check_keys(params, {"terms"}, "neg_jumps.params");
    require(params.contains("terms") && params.at("terms").is_array(),
            Err::Validation, "poleform needs a 'terms' array");
    for (const auto& tj : params.at("terms")) {
      check_keys(tj, {"b", "k", "a"}, "poleform term");
      PoleTerm t;
      require(tj.contains("b"), Err::Validation, "poleform term needs 'b'");
      t.b = get_complex(tj.at("b"), "poleform term 'b'");
      t.k = get_int(tj, "k", "poleform term");
      require(tj.contains("a") && tj.at("a").is_array(), Err::Validation,
              "poleform term needs coefficient array 'a'");
      for (const auto& aj : tj.at("a"))
        t.a.push_back(get_complex(aj, "poleform coefficient"));
      g.poles.push_back(t);
    }
  } else {
    fail(Err::Validation, "unknown neg_jumps kind '" + kind + "'");
  }
  return g;
}

}  // namespace

ModelSpec parse_model(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& e) {
    fail(Err::Validation, std::string("malformed JSON: ") + e.what());
  }
  require(j.is_object(), Err::Validation, "model must be a JSON object");
  check_keys(j, {"drift_a", "sigma", "pos_jumps", "neg_jumps"}, "model");
  ModelSpec m;
  m.drift_a = get_num(j, "drift_a", "model");
  m.sigma = get_num(j, "sigma", "model");
  require(j.contains("pos_jumps") && j.at("pos_jumps").is_object(),
          Err::Validation, "model needs a 'pos_jumps' object");
  require(j.contains("neg_jumps") && j.at("neg_jumps").is_object(),
          Err::Validation, "model needs a 'neg_jumps' object");
  m.pos = parse_pos(j.at("pos_jumps"));
  m.neg = parse_neg(j.at("neg_jumps"));
  validate(m);
  return m;
}

ModelSpec load_model(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Err::ConfigError, "cannot open model file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

std::string serialize_model(const ModelSpec& m) {
  json j;
  j["drift_a"] = m.drift_a;
  j["sigma"] = m.sigma;
  json pj;
  pj["rate"] = m.pos.rate;
  if (m.pos.rate > 0.0) {
    switch (m.pos.kind) {
      case PosKind::Exponential:
        pj["kind"] = "exponential";
        pj["params"] = {{"beta", m.pos.beta}};
        break;
      case PosKind::Erlang:
        pj["kind"] = "erlang";
        pj["params"] = {{"n", m.pos.n}, {"beta", m.pos.beta}};
        break;
      case PosKind::Hyperexponential:
        pj["kind"] = "hyperexponential";
        pj["params"] = {{"weights", m.pos.weights}, {"rates", m.pos.rates}};
        break;
      case PosKind::HalfNormal:
        pj["kind"] = "halfnormal";
        pj["params"] = {{"beta", m.pos.beta}};
        break;
      case PosKind::Tabulated:
        pj["kind"] = "tabulated";
        pj["params"] = {{"x", m.pos.tab_x}, {"f", m.pos.tab_f}};
        break;
    }
  }
  j["pos_jumps"] = pj;
  json nj;
  nj["rate"] = m.neg.rate;
  if (m.neg.rate > 0.0) {
    switch (m.neg.kind) {
      case NegKind::Hyperexponential:
        nj["kind"] = "hyperexponential";
        nj["params"] = {{"weights", m.neg.weights}, {"rates", m.neg.rates}};
        break;
      case NegKind::Erlang:
        nj["kind"] = "erlang";
        nj["params"] = {{"d", m.neg.d}, {"b", m.neg.b}};
        break;
      case NegKind::PoleForm: {
        json terms = json::array();
        for (const PoleTerm& t : m.neg.poles) {
          json tj;
          tj["b"] = {t.b.real(), t.b.imag()};
          tj["k"] = t.k;
          json as = json::array();
          for (const cdouble& a : t.a) as.push_back({a.real(), a.imag()});
          tj["a"] = as;
          terms.push_back(tj);
        }
        nj["kind"] = "poleform";
        nj["params"] = {{"terms", terms}};
        break;
      }
    }
  }
  j["neg_jumps"] = nj;
  return j.dump(2);
}

}  // namespace levysup
