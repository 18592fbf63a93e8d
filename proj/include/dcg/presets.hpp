#pragma once

// Named experiment sets reproducing the standard comparisons: CTA family on
// a 2-sparse system, ATC family on the same system, and a cross-protocol
// comparison against LMS and RLS diffusion baselines.

#include "dcg/config.hpp"
#include "dcg/experiment.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dcg {

struct PresetOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> runs;
  std::optional<int> iterations;
  std::optional<int> threads;
};

struct PresetResult {
  std::string name;
  std::vector<ExperimentConfig> configs;
  std::vector<MsdTrace> traces;
};

inline constexpr std::array<std::string_view, 3> kPresetNames{"fig2-cta", "fig3-atc", "fig4-compare"};

// Penalty weights used by the presets, tuned on the 2-sparse desk setup.
// The MCG variants carry the attractor bias across instants and use kPresetMcgRho.
inline constexpr double kPresetZaRho = 2e-3;
inline constexpr double kPresetRzaRho = 5e-4;
inline constexpr double kPresetRzaEpsilon = 0.2;
inline constexpr double kPresetMcgRho = 1e-5;

namespace detail {

inline ExperimentConfig preset_base(const PresetOverrides& o) {
  ExperimentConfig c;
  c.runs = 100;
  c.system = SystemVectorMode::Sparse;
  c.sparse_support = 2;
  if (o.seed) c.seed = *o.seed;
  if (o.runs) c.runs = *o.runs;
  if (o.iterations) c.iterations = *o.iterations;
  if (o.threads) c.threads = *o.threads;
  return c;
}

inline ExperimentConfig variant(ExperimentConfig c, Protocol protocol, Engine engine,
                                PenaltyKind penalty) {
  c.protocol = protocol;
  c.engine = engine;
  c.params.penalty.kind = penalty;
  if (penalty == PenaltyKind::ZA) c.params.penalty.rho = kPresetZaRho;
  if (penalty == PenaltyKind::RZA) {
    c.params.penalty.rho = kPresetRzaRho;
    c.params.penalty.epsilon = kPresetRzaEpsilon;
  }
  if (penalty != PenaltyKind::None && engine == Engine::MCG) c.params.penalty.rho = kPresetMcgRho;
  c.label = default_label(c);
  return c;
}

inline std::vector<ExperimentConfig> protocol_family(const ExperimentConfig& base, Protocol protocol) {
  std::vector<ExperimentConfig> out;
  for (PenaltyKind k : {PenaltyKind::None, PenaltyKind::ZA, PenaltyKind::RZA}) {
    for (Engine e : {Engine::CG, Engine::MCG}) out.push_back(variant(base, protocol, e, k));
  }
  return out;
}

}  // namespace detail

inline std::vector<ExperimentConfig> preset_configs(std::string_view name,
                                                    const PresetOverrides& overrides = {}) {
  const ExperimentConfig base = detail::preset_base(overrides);
  std::vector<ExperimentConfig> out;
  if (name == "fig2-cta") {
    out = detail::protocol_family(base, Protocol::CTA);
  } else if (name == "fig3-atc") {
    out = detail::protocol_family(base, Protocol::ATC);
  } else if (name == "fig4-compare") {
    for (Protocol p : {Protocol::CTA, Protocol::ATC}) {
      for (Engine e : {Engine::CG, Engine::MCG}) {
        out.push_back(detail::variant(base, p, e, PenaltyKind::RZA));
      }
    }
    out.push_back(detail::variant(base, Protocol::ATC, Engine::LMS, PenaltyKind::None));
    out.push_back(detail::variant(base, Protocol::ATC, Engine::RLS, PenaltyKind::None));
  } else {
    std::string known;
    for (auto n : kPresetNames) known += (known.empty() ? "" : ", ") + std::string(n);
    throw ConfigError("preset", "unknown preset \"" + std::string(name) + "\" (expected " + known + ")");
  }
  for (const auto& c : out) c.validate();
  return out;
}

inline PresetResult run_preset(std::string_view name, const PresetOverrides& overrides = {}) {
  PresetResult res;
  res.name = std::string(name);
  res.configs = preset_configs(name, overrides);
  for (const auto& c : res.configs) res.traces.push_back(run_experiment(c));
  return res;
}

}  // namespace dcg
