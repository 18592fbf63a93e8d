#pragma once

// Monte-Carlo learning-curve experiments.
//
// Each run draws a fresh system vector and fresh data streams, drives the
// configured protocol for `iterations` instants, and records the linear
// network MSD. Runs are averaged pointwise in the linear domain and the
// result is reported in dB.

#include "dcg/diffusion.hpp"
#include "dcg/engines.hpp"
#include "dcg/signal.hpp"
#include "dcg/topology.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace dcg {

inline constexpr double kMsdFloorDb = -320.0;

enum class SystemVectorMode { DenseRandom, Sparse };
enum class CombinerRule { Metropolis, Uniform, Identity };

inline std::string_view to_string(SystemVectorMode m) {
  return m == SystemVectorMode::Sparse ? "sparse" : "dense";
}

inline std::string_view to_string(CombinerRule r) {
  switch (r) {
    case CombinerRule::Metropolis: return "metropolis";
    case CombinerRule::Uniform: return "uniform";
    case CombinerRule::Identity: return "identity";
  }
  return "?";
}

struct TopologySpec {
  int extra_edges = 20;
  std::uint64_t seed = 7;
  /// When set, used instead of the generated ring-plus-chords graph.
  std::optional<Topology> graph;
};

struct ExperimentConfig {
  std::string label;
  int nodes = 20;
  int taps = 10;  ///< filter length M
  int iterations = 1000;
  int runs = 100;
  double snr_db = 30.0;
  double input_var = 1.0;
  Protocol protocol = Protocol::ATC;
  Engine engine = Engine::CG;
  EngineParams params;
  TopologySpec topology;
  CombinerRule combiner = CombinerRule::Metropolis;
  SystemVectorMode system = SystemVectorMode::DenseRandom;
  int sparse_support = 2;
  std::uint64_t seed = 1;
  int threads = 0;  ///< 0 picks std::thread::hardware_concurrency()

  void validate() const {
    auto positive = [](int v, const char* name) {
      if (v < 1) throw std::invalid_argument(std::string(name) + " must be >= 1");
    };
    positive(nodes, "N");
    positive(taps, "M");
    positive(iterations, "iterations");
    positive(runs, "runs");
    if (taps > 64) throw std::invalid_argument("M must be <= 64");
    if (!std::isfinite(snr_db)) throw std::invalid_argument("snr_db must be finite");
    if (!(input_var > 0.0)) throw std::invalid_argument("input_var must be > 0");
    if (threads < 0) throw std::invalid_argument("threads must be >= 0");
    if (system == SystemVectorMode::Sparse && (sparse_support < 1 || sparse_support > taps)) {
      throw std::invalid_argument("sparse_support must satisfy 1 <= S <= M");
    }
    if (topology.graph && topology.graph->size() != nodes) {
      throw std::invalid_argument("topology graph has " + std::to_string(topology.graph->size()) +
                                  " nodes but N = " + std::to_string(nodes));
    }
    if (!topology.graph) {
      const long long pairs = static_cast<long long>(nodes) * (nodes - 1) / 2;
      const long long ring = nodes >= 3 ? nodes : nodes - 1;
      if (topology.extra_edges < 0 || topology.extra_edges > pairs - ring) {
        throw std::invalid_argument("extra_edges = " + std::to_string(topology.extra_edges) +
                                    " exceeds the " + std::to_string(pairs - ring) +
                                    " available non-ring pairs");
      }
    }
    params.validate();
  }
};

struct MsdTrace {
  std::string label;
  std::vector<double> values;  ///< dB, one per instant
};

/// (1/N) sum_k ||w0 - w_k||^2, linear.
inline double network_msd_linear(std::span<const CVector> estimates, const CVector& w0) {
  if (estimates.empty()) throw DimensionError("network_msd: no estimates");
  double acc = 0.0;
  for (const auto& w : estimates) {
    detail::require_dim(w0.size(), w.size(), "network_msd");
    acc += (w0 - w).squaredNorm();
  }
  return acc / static_cast<double>(estimates.size());
}

inline double to_db(double linear) {
  if (std::isnan(linear)) return std::numeric_limits<double>::quiet_NaN();
  if (linear <= 0.0) return kMsdFloorDb;
  return std::max(10.0 * std::log10(linear), kMsdFloorDb);
}

inline double network_msd(std::span<const CVector> estimates, const CVector& w0) {
  return to_db(network_msd_linear(estimates, w0));
}

inline double network_msd(const NetworkState& net, const CVector& w0) {
  std::vector<CVector> est;
  est.reserve(net.size());
  for (const auto& s : net) est.push_back(s.w);
  return network_msd(std::span<const CVector>(est), w0);
}

inline Topology resolve_topology(const ExperimentConfig& cfg) {
  if (cfg.topology.graph) return *cfg.topology.graph;
  return build_topology(cfg.nodes, cfg.topology.extra_edges, cfg.topology.seed);
}

inline CombinerMatrix resolve_combiner(const ExperimentConfig& cfg, const Topology& t) {
  switch (cfg.combiner) {
    case CombinerRule::Metropolis: return metropolis_weights(t);
    case CombinerRule::Uniform: return CombinerMatrix::uniform(t);
    case CombinerRule::Identity: return CombinerMatrix::identity(t.size());
  }
  return metropolis_weights(t);
}

/// System vector of run `run` under the configured mode.
inline CVector system_vector(const ExperimentConfig& cfg, std::uint64_t run) {
  const std::uint64_t key = rng::stream_key(cfg.seed, run, 0, 0, rng::Purpose::SystemVector);
  return cfg.system == SystemVectorMode::Sparse ? make_sparse_vector(cfg.taps, cfg.sparse_support, key)
                                                : make_dense_vector(cfg.taps, key);
}

struct RunOutcome {
  std::vector<double> msd_linear;
  int breakdowns = 0;
};

/// Executes Monte-Carlo run `run` against a prebuilt combiner.
inline RunOutcome run_single(const ExperimentConfig& cfg, const CombinerMatrix& weights,
                             std::uint64_t run) {
  SignalModel model;
  model.w0 = system_vector(cfg, run);
  model.input_var = cfg.input_var;
  model.noise_var = snr_to_noise_var(cfg.snr_db, model.w0, cfg.input_var);
  model.seed = cfg.seed;

  NetworkState net = make_network(cfg.nodes, cfg.taps, cfg.params.delta);
  std::vector<Sample> samples(static_cast<std::size_t>(cfg.nodes));
  std::vector<CVector> estimates(static_cast<std::size_t>(cfg.nodes));
  RunOutcome out;
  out.msd_linear.reserve(static_cast<std::size_t>(cfg.iterations));
  for (int i = 1; i <= cfg.iterations; ++i) {
    for (int k = 0; k < cfg.nodes; ++k) {
      samples[static_cast<std::size_t>(k)] = generate_sample(model, run, k, i);
    }
    out.breakdowns += network_step(cfg.protocol, net, weights, samples, cfg.params, cfg.engine).breakdowns;
    for (std::size_t k = 0; k < net.size(); ++k) estimates[k] = net[k].w;
    out.msd_linear.push_back(network_msd_linear(estimates, model.w0));
  }
  return out;
}

inline RunOutcome run_single(const ExperimentConfig& cfg, std::uint64_t run) {
  cfg.validate();
  const Topology t = resolve_topology(cfg);
  return run_single(cfg, resolve_combiner(cfg, t), run);
}

struct ExperimentResult {
  MsdTrace trace;
  std::vector<double> msd_linear;  ///< run-averaged, linear
  long long breakdowns = 0;
};

/// Runs all Monte-Carlo runs (in parallel when threads > 1) and averages
/// them in run order, so the result does not depend on scheduling.
inline ExperimentResult run_experiment_detailed(const ExperimentConfig& cfg) {
  cfg.validate();
  const Topology topo = resolve_topology(cfg);
  const CombinerMatrix weights = resolve_combiner(cfg, topo);

  std::vector<RunOutcome> outcomes(static_cast<std::size_t>(cfg.runs));
  unsigned workers = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(cfg.runs));

  if (workers <= 1) {
    for (int r = 0; r < cfg.runs; ++r) {
      outcomes[static_cast<std::size_t>(r)] = run_single(cfg, weights, static_cast<std::uint64_t>(r));
    }
  } else {
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (int r = next.fetch_add(1); r < cfg.runs; r = next.fetch_add(1)) {
          try {
            outcomes[static_cast<std::size_t>(r)] =
                run_single(cfg, weights, static_cast<std::uint64_t>(r));
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  }

  ExperimentResult res;
  res.trace.label = cfg.label;
  res.msd_linear.assign(static_cast<std::size_t>(cfg.iterations), 0.0);
  for (const auto& o : outcomes) {
    for (std::size_t i = 0; i < o.msd_linear.size(); ++i) res.msd_linear[i] += o.msd_linear[i];
    res.breakdowns += o.breakdowns;
  }
  res.trace.values.reserve(res.msd_linear.size());
  for (double& v : res.msd_linear) {
    v /= static_cast<double>(cfg.runs);
    res.trace.values.push_back(to_db(v));
  }
  return res;
}

inline MsdTrace run_experiment(const ExperimentConfig& cfg) {
  return run_experiment_detailed(cfg).trace;
}

/// Mean of the last `window` linear values of a dB trace, back in dB.
inline double steady_state_db(const MsdTrace& trace, std::size_t window = 100) {
  if (trace.values.empty()) throw std::invalid_argument("steady_state_db: empty trace");
  const std::size_t n = std::min(window, trace.values.size());
  double acc = 0.0;
  for (std::size_t i = trace.values.size() - n; i < trace.values.size(); ++i) {
    acc += std::pow(10.0, trace.values[i] / 10.0);
  }
  return to_db(acc / static_cast<double>(n));
}

/// 1-based instant at which the trace first drops to `threshold_db` or below.
inline std::optional<int> iterations_to_reach(const MsdTrace& trace, double threshold_db) {
  for (std::size_t i = 0; i < trace.values.size(); ++i) {
    if (trace.values[i] <= threshold_db) return static_cast<int>(i + 1);
  }
  return std::nullopt;
}

}  // namespace dcg
