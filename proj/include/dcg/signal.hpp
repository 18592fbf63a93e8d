#pragma once

// Data generation for the linear model d = w0^H x + n.
//
// Every random draw comes from a stream keyed by (seed, run, node, instant),
// so samples do not depend on the order in which nodes or runs are visited.

#include "dcg/engines.hpp"
#include "dcg/numerics.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace dcg {

namespace rng {

/// splitmix64 finalizer.
constexpr std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t combine(std::uint64_t seed, std::uint64_t value) {
  return mix(seed ^ mix(value));
}

enum class Purpose : std::uint64_t { Sample = 1, SystemVector = 2 };

constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t run, std::uint64_t node,
                                   std::uint64_t instant, Purpose purpose) {
  std::uint64_t k = combine(seed, static_cast<std::uint64_t>(purpose));
  k = combine(k, run);
  k = combine(k, node);
  return combine(k, instant);
}

/// Circular complex Gaussian with E|z|^2 = variance.
template <typename Gen>
Complex complex_gaussian(Gen& gen, double variance) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5 * variance));
  const double re = nd(gen);
  const double im = nd(gen);
  return {re, im};
}

}  // namespace rng

struct SignalModel {
  CVector w0;
  double input_var = 1.0;
  double noise_var = 0.0;
  std::uint64_t seed = 0;

  void validate() const {
    if (w0.size() < 1) throw std::invalid_argument("signal model: empty system vector");
    if (!(input_var > 0.0)) throw std::invalid_argument("signal model: input variance must be > 0");
    if (!(noise_var >= 0.0)) throw std::invalid_argument("signal model: noise variance must be >= 0");
  }
};

/// Exactly S entries equal to one at seeded-random positions, zeros elsewhere.
inline CVector make_sparse_vector(int m, int s, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("make_sparse_vector: M must be >= 1");
  if (s < 1 || s > m) {
    throw std::invalid_argument("make_sparse_vector: need 1 <= S <= M, got S=" + std::to_string(s) +
                                ", M=" + std::to_string(m));
  }
  std::vector<int> positions(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) positions[static_cast<std::size_t>(i)] = i;
  std::mt19937_64 gen(seed);
  CVector w = CVector::Zero(m);
  for (int i = 0; i < s; ++i) {
    std::uniform_int_distribution<int> pick(i, m - 1);
    std::swap(positions[static_cast<std::size_t>(i)], positions[static_cast<std::size_t>(pick(gen))]);
    w(positions[static_cast<std::size_t>(i)]) = Complex(1.0, 0.0);
  }
  return w;
}

/// i.i.d. circular Gaussian entries scaled to unit norm.
inline CVector make_dense_vector(int m, std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("make_dense_vector: M must be >= 1");
  std::mt19937_64 gen(seed);
  CVector w(m);
  for (int i = 0; i < m; ++i) w(i) = rng::complex_gaussian(gen, 1.0);
  return w / w.norm();
}

/// sigma_n^2 = ||w0||^2 sigma_x^2 10^(-snr/10).
inline double snr_to_noise_var(double snr_db, const CVector& w0, double input_var) {
  if (!std::isfinite(snr_db)) throw std::invalid_argument("snr_to_noise_var: SNR must be finite");
  const double signal = w0.squaredNorm() * input_var;
  if (signal == 0.0) {
    throw std::invalid_argument("snr_to_noise_var: SNR is undefined for a zero system vector");
  }
  return signal * std::pow(10.0, -snr_db / 10.0);
}

/// Draws (x, d) for node k at instant i of the given run.
inline Sample generate_sample(const SignalModel& model, std::uint64_t run, int k, int i) {
  const auto m = model.w0.size();
  std::mt19937_64 gen(rng::stream_key(model.seed, run, static_cast<std::uint64_t>(k),
                                      static_cast<std::uint64_t>(i), rng::Purpose::Sample));
  Sample s{CVector(m), Complex(0.0, 0.0)};
  for (Eigen::Index j = 0; j < m; ++j) s.x(j) = rng::complex_gaussian(gen, model.input_var);
  const Complex noise = model.noise_var > 0.0 ? rng::complex_gaussian(gen, model.noise_var)
                                              : Complex(0.0, 0.0);
  s.d = model.w0.dot(s.x) + noise;
  return s;
}

}  // namespace dcg
