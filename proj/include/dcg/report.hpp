#pragma once

// Text outputs: learning-curve CSV, key=value metadata sidecars, and the
// operation-count table.

#include "dcg/complexity.hpp"
#include "dcg/experiment.hpp"

#include <iomanip>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dcg {

/// Header `iter,<label1>,...`, then one row per instant with 6-decimal dB values.
inline void write_csv(std::ostream& os, std::span<const MsdTrace> traces) {
  if (traces.empty()) throw std::invalid_argument("write_csv: no traces");
  const std::size_t rows = traces.front().values.size();
  for (const auto& t : traces) {
    if (t.values.size() != rows) throw std::invalid_argument("write_csv: traces differ in length");
    if (t.label.find_first_of(",\n\r\"") != std::string::npos) {
      throw std::invalid_argument("write_csv: label \"" + t.label + "\" contains a CSV delimiter");
    }
  }
  std::ostringstream buf;
  buf.imbue(std::locale::classic());
  buf << "iter";
  for (const auto& t : traces) buf << ',' << t.label;
  buf << '\n' << std::fixed << std::setprecision(6);
  for (std::size_t i = 0; i < rows; ++i) {
    buf << (i + 1);
    for (const auto& t : traces) buf << ',' << t.values[i];
    buf << '\n';
  }
  os << buf.str();
}

using Metadata = std::vector<std::pair<std::string, std::string>>;

inline void write_metadata(std::ostream& os, const Metadata& meta) {
  for (const auto& [k, v] : meta) os << k << '=' << v << '\n';
}

namespace detail {

inline std::string fmt_double(double v) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace detail

/// Flattens one experiment's configuration under `prefix`.
inline void describe_config(Metadata& meta, const std::string& prefix, const ExperimentConfig& c) {
  auto put = [&](const std::string& k, std::string v) { meta.emplace_back(prefix + k, std::move(v)); };
  const auto& p = c.params;
  put("label", c.label);
  put("engine", std::string(to_string(c.engine)));
  put("protocol", std::string(to_string(c.protocol)));
  put("N", std::to_string(c.nodes));
  put("M", std::to_string(c.taps));
  put("iterations", std::to_string(c.iterations));
  put("runs", std::to_string(c.runs));
  put("snr_db", detail::fmt_double(c.snr_db));
  put("input_var", detail::fmt_double(c.input_var));
  put("seed", std::to_string(c.seed));
  put("lambda", detail::fmt_double(p.lambda));
  put("eta", detail::fmt_double(p.eta));
  put("j_max", std::to_string(p.j_max));
  put("tol", detail::fmt_double(p.tol));
  put("delta", detail::fmt_double(p.delta));
  put("mu", detail::fmt_double(p.mu));
  put("penalty", std::string(to_string(p.penalty.kind)));
  put("rho", detail::fmt_double(p.penalty.rho));
  put("epsilon", detail::fmt_double(p.penalty.epsilon));
  put("rza_printed_form", p.penalty.rza_printed_form ? "true" : "false");
  put("combiner", std::string(to_string(c.combiner)));
  if (c.topology.graph) {
    put("topology", "explicit");
  } else {
    put("topology", "ring+chords");
    put("extra_edges", std::to_string(c.topology.extra_edges));
    put("topology_seed", std::to_string(c.topology.seed));
  }
  put("system", std::string(to_string(c.system)));
  if (c.system == SystemVectorMode::Sparse) put("sparse_support", std::to_string(c.sparse_support));
}

/// Definitions every output depends on.
inline void describe_definitions(Metadata& meta) {
  meta.emplace_back("msd_definition", "10*log10(mean over runs of (1/N) sum_k ||w0 - w_k||^2)");
  meta.emplace_back("msd_floor_db", detail::fmt_double(kMsdFloorDb));
  meta.emplace_back("snr_definition", "||w0||^2 * input_var / noise_var");
  meta.emplace_back("dense_system_vector", "iid circular Gaussian entries scaled to unit norm");
  meta.emplace_back("sparse_system_vector", "S entries equal to 1 at seeded positions per run");
  meta.emplace_back("random_streams", "one generator per (seed, run, node, instant)");
}

/// All twelve rows at one (M, J, L).
inline std::string emit_complexity_table(const ComplexityInputs& in) {
  in.validate();
  std::ostringstream os;
  os << "# M=" << in.M << " J=" << in.J << " L=" << in.L << '\n';
  os << std::left << std::setw(14) << "method" << std::right << std::setw(14) << "additions"
     << std::setw(18) << "multiplications" << '\n';
  for (ComplexityMethod m : kAllComplexityMethods) {
    const OperationCount c = complexity_eval(m, in);
    os << std::left << std::setw(14) << to_string(m) << std::right << std::setw(14) << c.additions
       << std::setw(18) << c.multiplications << '\n';
  }
  return os.str();
}

}  // namespace dcg
