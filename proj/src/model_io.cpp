#include "dualspace/model_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dualspace/errors.hpp"
#include "dualspace/expression_parser.hpp"

namespace dualspace {

namespace {

using nlohmann::json;

void only_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError("missing key '" + key + "' in " + where);
  return obj.at(key);
}

int require_int(const json& obj, const std::string& key, const std::string& where) {
  const json& v = require(obj, key, where);
  if (!v.is_number_integer()) throw ConfigError("'" + key + "' in " + where + " must be an integer");
  return v.get<int>();
}

OperatorPolynomial parse_field(const std::string& src, const std::string& where) {
  try {
    return parse_polynomial(src);
  } catch (const ParseError& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

std::string require_string(const json& v, const std::string& where) {
  if (!v.is_string()) throw ConfigError(where + " must be a string");
  return v.get<std::string>();
}

}  // namespace

std::vector<double> EvolutionSpec::sample_times() const {
  std::vector<double> times;
  times.reserve(static_cast<std::size_t>(steps) + 1);
  for (int k = 0; k <= steps; ++k) times.push_back(t_max * k / steps);
  return times;
}

ModelFile parse_model(const std::string& json_text, std::size_t max_dim) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("model file must be a JSON object");
  only_keys(doc, {"version", "fock", "hamiltonian", "lindblads", "evolution", "observables"},
            "model");

  ModelFile file;
  file.version = require_int(doc, "version", "model");
  if (file.version != kModelFileVersion) {
    throw ConfigError("unsupported model version " + std::to_string(file.version));
  }

  const json& fock = require(doc, "fock", "model");
  if (!fock.is_object()) throw ConfigError("'fock' must be an object");
  only_keys(fock, {"m", "n", "boson_cutoff"}, "fock");
  FockConfig config;
  config.bosons = require_int(fock, "m", "fock");
  config.fermions = require_int(fock, "n", "fock");
  config.boson_cutoff = fock.contains("boson_cutoff") ? require_int(fock, "boson_cutoff", "fock") : 1;
  try {
    config.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("fock: ") + e.what());
  }
  file.model.config = config;
  file.model.max_dim = max_dim;

  if (doc.contains("hamiltonian")) {
    file.hamiltonian_source = require_string(doc.at("hamiltonian"), "hamiltonian");
    file.model.hamiltonian = parse_field(file.hamiltonian_source, "hamiltonian");
  }
  if (doc.contains("lindblads")) {
    const json& list = doc.at("lindblads");
    if (!list.is_array()) throw ConfigError("'lindblads' must be an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = "lindblads[" + std::to_string(i) + "]";
      file.lindblad_sources.push_back(require_string(list[i], where));
      file.model.lindblad_ops.push_back(parse_field(file.lindblad_sources.back(), where));
    }
  }
  if (doc.contains("observables")) {
    const json& list = doc.at("observables");
    if (!list.is_array()) throw ConfigError("'observables' must be an array");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string where = "observables[" + std::to_string(i) + "]";
      file.observable_sources.push_back(require_string(list[i], where));
      file.observables.push_back(parse_field(file.observable_sources.back(), where));
    }
  }
  if (doc.contains("evolution")) {
    const json& ev = doc.at("evolution");
    if (!ev.is_object()) throw ConfigError("'evolution' must be an object");
    only_keys(ev, {"t_max", "steps", "initial_state"}, "evolution");
    EvolutionSpec spec;
    const json& t_max = require(ev, "t_max", "evolution");
    if (!t_max.is_number() || !(t_max.get<double>() > 0.0)) {
      throw ConfigError("'t_max' must be a positive number");
    }
    spec.t_max = t_max.get<double>();
    spec.steps = require_int(ev, "steps", "evolution");
    if (spec.steps < 1) throw ConfigError("'steps' must be at least 1");
    if (ev.contains("initial_state")) {
      spec.initial_state = require_string(ev.at("initial_state"), "initial_state");
    }
    file.evolution = spec;
  }

  const FockSpace space(config, max_dim);
  try {
    space.check_modes(file.model.hamiltonian);
    for (const auto& l : file.model.lindblad_ops) space.check_modes(l);
    for (const auto& o : file.observables) space.check_modes(o);
  } catch (const ParameterError& e) {
    throw ConfigError(e.what());
  }
  file.model.validate();
  if (file.evolution) initial_state(file.evolution->initial_state, space);
  return file;
}

ModelFile load_model(const std::filesystem::path& path, std::size_t max_dim) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open model file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_model(buffer.str(), max_dim);
}

CMatrix initial_state(const std::string& spec, const FockSpace& space) {
  const auto d = static_cast<Eigen::Index>(space.dimension());
  if (spec == "vacuum") {
    CMatrix rho = CMatrix::Zero(d, d);
    rho(0, 0) = 1.0;
    return rho;
  }
  if (spec == "maximally_mixed") return CMatrix::Identity(d, d) / static_cast<double>(d);
  const std::string prefix = "fock:";
  if (spec.rfind(prefix, 0) == 0) {
    json occ;
    try {
      occ = json::parse(spec.substr(prefix.size()));
    } catch (const json::parse_error&) {
      throw ConfigError("malformed occupation list in '" + spec + "'");
    }
    if (!occ.is_array()) throw ConfigError("occupations must be a list in '" + spec + "'");
    MultiIndex idx;
    for (const auto& v : occ) {
      if (!v.is_number_integer()) throw ConfigError("occupations must be integers");
      idx.push_back(v.get<int>());
    }
    std::size_t state = 0;
    try {
      state = space.index_of(idx);
    } catch (const Error& e) {
      throw ConfigError("initial state '" + spec + "': " + e.what());
    }
    CMatrix rho = CMatrix::Zero(d, d);
    const auto s = static_cast<Eigen::Index>(state);
    rho(s, s) = 1.0;
    return rho;
  }
  throw ConfigError("unknown initial state '" + spec + "'");
}

}  // namespace dualspace
