#pragma once

// JSON experiment configuration. Every key is optional except `engine` and
// `protocol`; unknown keys are rejected so typos never fall back to defaults.

#include "dcg/experiment.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dcg {

/// A configuration problem attributable to one key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string key, const std::string& message)
      : std::invalid_argument(key + ": " + message), key_(std::move(key)) {}

  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

inline std::optional<Engine> engine_from_string(std::string_view s) {
  if (s == "CG") return Engine::CG;
  if (s == "MCG") return Engine::MCG;
  if (s == "LMS") return Engine::LMS;
  if (s == "RLS") return Engine::RLS;
  return std::nullopt;
}

inline std::optional<Protocol> protocol_from_string(std::string_view s) {
  if (s == "CTA") return Protocol::CTA;
  if (s == "ATC") return Protocol::ATC;
  if (s == "NonCooperative" || s == "NC") return Protocol::NonCooperative;
  return std::nullopt;
}

inline std::optional<PenaltyKind> penalty_from_string(std::string_view s) {
  if (s == "None") return PenaltyKind::None;
  if (s == "ZA") return PenaltyKind::ZA;
  if (s == "RZA") return PenaltyKind::RZA;
  return std::nullopt;
}

/// Label in the "RZA-ATC-CG" style; non-cooperative runs are prefixed "NC".
inline std::string default_label(const ExperimentConfig& c) {
  std::string out;
  if (c.params.penalty.kind != PenaltyKind::None) out += std::string(to_string(c.params.penalty.kind)) + "-";
  out += c.protocol == Protocol::NonCooperative ? "NC" : std::string(to_string(c.protocol));
  out += "-";
  out += to_string(c.engine);
  return out;
}

namespace detail {

using nlohmann::json;

inline const std::set<std::string>& known_config_keys() {
  static const std::set<std::string> keys{
      "label",     "engine",   "protocol",    "N",           "M",
      "iterations", "runs",    "snr_db",      "input_var",   "seed",
      "threads",   "lambda",   "eta",         "j_max",       "tol",
      "delta",     "mu",       "penalty",     "rho",         "epsilon",
      "rza_printed_form",      "extra_edges", "topology_seed", "topology_file",
      "combiner",  "system",   "sparse_support"};
  return keys;
}

inline std::string read_string(const json& doc, const std::string& key) {
  const auto& v = doc.at(key);
  if (!v.is_string()) throw ConfigError(key, "expected a string");
  return v.get<std::string>();
}

inline int read_int(const json& doc, const std::string& key, int lo) {
  const auto& v = doc.at(key);
  if (!v.is_number_integer()) throw ConfigError(key, "expected an integer");
  const auto n = v.get<long long>();
  if (n < lo || n > std::numeric_limits<int>::max()) {
    throw ConfigError(key, "value " + std::to_string(n) + " out of range (must be >= " +
                               std::to_string(lo) + ")");
  }
  return static_cast<int>(n);
}

inline std::uint64_t read_u64(const json& doc, const std::string& key) {
  const auto& v = doc.at(key);
  if (!v.is_number_unsigned()) throw ConfigError(key, "expected a non-negative integer");
  return v.get<std::uint64_t>();
}

inline double read_double(const json& doc, const std::string& key) {
  const auto& v = doc.at(key);
  if (!v.is_number()) throw ConfigError(key, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ConfigError(key, "expected a finite number");
  return d;
}

inline bool read_bool(const json& doc, const std::string& key) {
  const auto& v = doc.at(key);
  if (!v.is_boolean()) throw ConfigError(key, "expected true or false");
  return v.get<bool>();
}

}  // namespace detail

/// Parses and fully validates a JSON experiment document. Relative
/// `topology_file` paths resolve against `base_dir`.
inline ExperimentConfig parse_config(std::string_view text,
                                     const std::filesystem::path& base_dir = {}) {
  using detail::json;
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ConfigError("config", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config", "top level must be a JSON object");

  for (const auto& item : doc.items()) {
    if (!detail::known_config_keys().contains(item.key())) {
      throw ConfigError(item.key(), "unknown key");
    }
  }
  for (const char* required : {"engine", "protocol"}) {
    if (!doc.contains(required)) throw ConfigError(required, "missing required key");
  }

  ExperimentConfig c;
  const std::string engine = detail::read_string(doc, "engine");
  if (auto e = engine_from_string(engine)) {
    c.engine = *e;
  } else {
    throw ConfigError("engine", "unknown engine \"" + engine + "\" (expected CG, MCG, LMS or RLS)");
  }
  const std::string protocol = detail::read_string(doc, "protocol");
  if (auto p = protocol_from_string(protocol)) {
    c.protocol = *p;
  } else {
    throw ConfigError("protocol",
                      "unknown protocol \"" + protocol + "\" (expected CTA, ATC or NonCooperative)");
  }

  auto has = [&](const char* k) { return doc.contains(k); };
  if (has("N")) c.nodes = detail::read_int(doc, "N", 1);
  if (has("M")) c.taps = detail::read_int(doc, "M", 1);
  if (c.taps > 64) throw ConfigError("M", "filter length must be <= 64");
  if (has("iterations")) c.iterations = detail::read_int(doc, "iterations", 1);
  if (has("runs")) c.runs = detail::read_int(doc, "runs", 1);
  if (has("threads")) c.threads = detail::read_int(doc, "threads", 0);
  if (has("seed")) c.seed = detail::read_u64(doc, "seed");
  if (has("snr_db")) c.snr_db = detail::read_double(doc, "snr_db");
  if (has("input_var")) {
    c.input_var = detail::read_double(doc, "input_var");
    if (!(c.input_var > 0.0)) throw ConfigError("input_var", "must be > 0");
  }

  EngineParams& p = c.params;
  if (has("lambda")) p.lambda = detail::read_double(doc, "lambda");
  if (!(p.lambda > 0.0 && p.lambda <= 1.0)) throw ConfigError("lambda", "must lie in (0, 1]");
  if (has("eta")) p.eta = detail::read_double(doc, "eta");
  if (!p.eta_in_bound()) {
    std::ostringstream os;
    os << "eta = " << p.eta << " violates the line-search bound [" << p.eta_lower() << ", "
       << p.eta_upper() << "] (lambda - 0.5 <= eta <= lambda)";
    throw ConfigError("eta", os.str());
  }
  if (has("j_max")) p.j_max = detail::read_int(doc, "j_max", 1);
  if (has("tol")) p.tol = detail::read_double(doc, "tol");
  if (!(p.tol > 0.0)) throw ConfigError("tol", "must be > 0");
  if (has("delta")) p.delta = detail::read_double(doc, "delta");
  if (!(p.delta > 0.0)) throw ConfigError("delta", "must be > 0");
  if (has("mu")) p.mu = detail::read_double(doc, "mu");
  if (!(p.mu > 0.0)) throw ConfigError("mu", "must be > 0");

  if (has("penalty")) {
    const std::string name = detail::read_string(doc, "penalty");
    if (auto k = penalty_from_string(name)) {
      p.penalty.kind = *k;
    } else {
      throw ConfigError("penalty", "unknown penalty \"" + name + "\" (expected None, ZA or RZA)");
    }
  }
  if (has("rho")) p.penalty.rho = detail::read_double(doc, "rho");
  if (!(p.penalty.rho >= 0.0)) throw ConfigError("rho", "must be >= 0");
  if (has("epsilon")) p.penalty.epsilon = detail::read_double(doc, "epsilon");
  if (!(p.penalty.epsilon > 0.0)) throw ConfigError("epsilon", "must be > 0");
  if (has("rza_printed_form")) p.penalty.rza_printed_form = detail::read_bool(doc, "rza_printed_form");

  if (has("combiner")) {
    const std::string name = detail::read_string(doc, "combiner");
    if (name == "metropolis") c.combiner = CombinerRule::Metropolis;
    else if (name == "uniform") c.combiner = CombinerRule::Uniform;
    else if (name == "identity") c.combiner = CombinerRule::Identity;
    else throw ConfigError("combiner", "unknown combiner \"" + name + "\" (expected metropolis, uniform or identity)");
  }
  if (has("system")) {
    const std::string name = detail::read_string(doc, "system");
    if (name == "dense") c.system = SystemVectorMode::DenseRandom;
    else if (name == "sparse") c.system = SystemVectorMode::Sparse;
    else throw ConfigError("system", "unknown system vector mode \"" + name + "\" (expected dense or sparse)");
  }
  if (has("sparse_support")) c.sparse_support = detail::read_int(doc, "sparse_support", 1);
  if (c.system == SystemVectorMode::Sparse && c.sparse_support > c.taps) {
    throw ConfigError("sparse_support", "must not exceed M = " + std::to_string(c.taps));
  }

  if (has("topology_file")) {
    if (has("extra_edges") || has("topology_seed")) {
      throw ConfigError("topology_file", "cannot be combined with extra_edges or topology_seed");
    }
    std::filesystem::path path = detail::read_string(doc, "topology_file");
    if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
    std::ifstream in(path);
    if (!in) throw ConfigError("topology_file", "cannot open " + path.string());
    try {
      c.topology.graph = read_edge_list(in);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("topology_file", e.what());
    }
    if (c.topology.graph->size() != c.nodes) {
      throw ConfigError("topology_file", "graph has " + std::to_string(c.topology.graph->size()) +
                                             " nodes but N = " + std::to_string(c.nodes));
    }
  } else {
    if (has("extra_edges")) c.topology.extra_edges = detail::read_int(doc, "extra_edges", 0);
    if (has("topology_seed")) c.topology.seed = detail::read_u64(doc, "topology_seed");
    const long long pairs = static_cast<long long>(c.nodes) * (c.nodes - 1) / 2;
    const long long ring = c.nodes >= 3 ? c.nodes : c.nodes - 1;
    if (c.topology.extra_edges > pairs - ring) {
      throw ConfigError("extra_edges", "only " + std::to_string(pairs - ring) +
                                           " non-ring pairs exist for N = " + std::to_string(c.nodes));
    }
  }

  c.label = has("label") ? detail::read_string(doc, "label") : default_label(c);

  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("config", e.what());
  }
  return c;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

}  // namespace dcg
