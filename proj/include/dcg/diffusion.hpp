#pragma once

// One network time instant under combine-then-adapt, adapt-then-combine, or
// no cooperation at all.
//
// Every step reads neighbour estimates from an immutable snapshot taken
// before any node moves, so the per-node loop has no ordering dependence.

#include "dcg/engines.hpp"
#include "dcg/penalties.hpp"
#include "dcg/topology.hpp"

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dcg {

enum class Protocol { CTA, ATC, NonCooperative };

inline std::string_view to_string(Protocol p) {
  switch (p) {
    case Protocol::CTA: return "CTA";
    case Protocol::ATC: return "ATC";
    case Protocol::NonCooperative: return "NonCooperative";
  }
  return "?";
}

using NetworkState = std::vector<NodeState>;

inline NetworkState make_network(int n, Eigen::Index m, double delta) {
  return NetworkState(static_cast<std::size_t>(n), NodeState(m, delta));
}

struct StepReport {
  int breakdowns = 0;
  int inner_iterations = 0;

  void absorb(const UpdateStatus& s) {
    breakdowns += s.breakdown ? 1 : 0;
    inner_iterations += s.iterations;
  }
};

/// sum over l in N_k of a(l, k) * estimates[l].
inline CVector combine(const CombinerMatrix& weights, std::span<const CVector> estimates, int k) {
  if (static_cast<std::size_t>(weights.size()) != estimates.size()) {
    throw DimensionError("combine: " + std::to_string(estimates.size()) + " estimates for " +
                         std::to_string(weights.size()) + " nodes");
  }
  if (k < 0 || k >= weights.size()) throw std::out_of_range("combine: node index out of range");
  const Eigen::Index m = estimates[static_cast<std::size_t>(k)].size();
  CVector acc = CVector::Zero(m);
  for (int l = 0; l < weights.size(); ++l) {
    const double a = weights.a(l, k);
    if (a == 0.0) continue;
    const CVector& e = estimates[static_cast<std::size_t>(l)];
    detail::require_dim(m, e.size(), "combine");
    acc += a * e;
  }
  return acc;
}

namespace detail {

inline std::vector<CVector> snapshot(const NetworkState& net) {
  std::vector<CVector> out;
  out.reserve(net.size());
  for (const auto& s : net) out.push_back(s.w);
  return out;
}

inline void check_step_inputs(const NetworkState& net, const CombinerMatrix& weights,
                              std::span<const Sample> samples) {
  if (samples.size() != net.size()) {
    throw DimensionError("step: " + std::to_string(samples.size()) + " samples for " +
                         std::to_string(net.size()) + " nodes");
  }
  if (static_cast<std::size_t>(weights.size()) != net.size()) {
    throw DimensionError("step: combiner size does not match node count");
  }
}

}  // namespace detail

/// Combine previous estimates into phi, adapt from phi, then apply the
/// sparsity correction to the adapted estimate.
inline StepReport cta_step(NetworkState& net, const CombinerMatrix& weights,
                           std::span<const Sample> samples, const EngineParams& params,
                           Engine engine) {
  detail::check_step_inputs(net, weights, samples);
  const std::vector<CVector> previous = detail::snapshot(net);
  StepReport report;
  for (std::size_t k = 0; k < net.size(); ++k) {
    NodeState& s = net[k];
    s.phi = combine(weights, previous, static_cast<int>(k));
    report.absorb(adapt(s, samples[k], params, engine, StartFrom::Combined));
    apply_sparsity_correction(s.w, params.penalty);
  }
  return report;
}

/// Adapt every node from its own previous estimate, combine the adapted
/// estimates, then apply the sparsity correction to the combination.
inline StepReport atc_step(NetworkState& net, const CombinerMatrix& weights,
                           std::span<const Sample> samples, const EngineParams& params,
                           Engine engine) {
  detail::check_step_inputs(net, weights, samples);
  StepReport report;
  std::vector<CVector> adapted;
  adapted.reserve(net.size());
  for (std::size_t k = 0; k < net.size(); ++k) {
    report.absorb(adapt(net[k], samples[k], params, engine, StartFrom::Previous));
    adapted.push_back(net[k].w);
  }
  for (std::size_t k = 0; k < net.size(); ++k) {
    NodeState& s = net[k];
    s.phi = adapted[k];
    s.w = combine(weights, adapted, static_cast<int>(k));
    apply_sparsity_correction(s.w, params.penalty);
  }
  return report;
}

/// Every node adapts on its own data only.
inline StepReport noncooperative_step(NetworkState& net, std::span<const Sample> samples,
                                      const EngineParams& params, Engine engine) {
  if (samples.size() != net.size()) throw DimensionError("step: sample count mismatch");
  StepReport report;
  for (std::size_t k = 0; k < net.size(); ++k) {
    report.absorb(adapt(net[k], samples[k], params, engine, StartFrom::Previous));
    apply_sparsity_correction(net[k].w, params.penalty);
  }
  return report;
}

inline StepReport network_step(Protocol protocol, NetworkState& net, const CombinerMatrix& weights,
                               std::span<const Sample> samples, const EngineParams& params,
                               Engine engine) {
  switch (protocol) {
    case Protocol::CTA: return cta_step(net, weights, samples, params, engine);
    case Protocol::ATC: return atc_step(net, weights, samples, params, engine);
    case Protocol::NonCooperative: return noncooperative_step(net, samples, params, engine);
  }
  return {};
}

}  // namespace dcg
