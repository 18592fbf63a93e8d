#pragma once

// Sparsity penalties: zero-attracting (l1) and reweighted zero-attracting
// (log-sum) terms, their values and their subgradients with respect to w*.

#include "dcg/numerics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dcg {

enum class PenaltyKind { None, ZA, RZA };

struct PenaltyParams {
  PenaltyKind kind = PenaltyKind::None;
  double rho = 5e-4;
  double epsilon = 0.1;
  /// Use sgn(w)/(1 + eps*||w||_1) for the RZA attractor instead of the
  /// exact derivative of the log-sum penalty. Comparison runs only.
  bool rza_printed_form = false;

  void validate() const {
    if (!(rho >= 0.0) || !std::isfinite(rho)) {
      throw std::invalid_argument("penalty: rho must be finite and >= 0");
    }
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
      throw std::invalid_argument("penalty: epsilon must be finite and > 0");
    }
  }
};

inline std::string_view to_string(PenaltyKind k) {
  switch (k) {
    case PenaltyKind::None: return "None";
    case PenaltyKind::ZA: return "ZA";
    case PenaltyKind::RZA: return "RZA";
  }
  return "?";
}

/// Complex sign: z/|z|, with sgn(0) = 0.
inline Complex csign(Complex z) {
  const double m = std::abs(z);
  return m == 0.0 ? Complex(0.0, 0.0) : z / m;
}

inline CVector za_subgradient(const CVector& w) {
  CVector out(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) out(i) = csign(w(i));
  return out;
}

/// Componentwise sgn(w_i) / (eps + |w_i|); every entry has modulus <= 1/eps.
inline CVector rza_subgradient(const CVector& w, double epsilon) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("rza_subgradient: epsilon must be > 0");
  CVector out(w.size());
  for (Eigen::Index i = 0; i < w.size(); ++i) out(i) = csign(w(i)) / (epsilon + std::abs(w(i)));
  return out;
}

/// sgn(w) / (1 + eps*||w||_1), the normalization shared across entries.
inline CVector rza_subgradient_printed(const CVector& w, double epsilon) {
  const double l1 = w.cwiseAbs().sum();
  return za_subgradient(w) / (1.0 + epsilon * l1);
}

/// rho * ||w||_1 (ZA) or rho * sum log(1 + |w_i|/eps) (RZA); zero for None.
inline double penalty_value(const CVector& w, const PenaltyParams& p) {
  switch (p.kind) {
    case PenaltyKind::None: return 0.0;
    case PenaltyKind::ZA: return p.rho * w.cwiseAbs().sum();
    case PenaltyKind::RZA: {
      double s = 0.0;
      for (Eigen::Index i = 0; i < w.size(); ++i) s += std::log1p(std::abs(w(i)) / p.epsilon);
      return p.rho * s;
    }
  }
  return 0.0;
}

/// d f / d w* without the rho factor.
inline CVector penalty_subgradient(const CVector& w, const PenaltyParams& p) {
  switch (p.kind) {
    case PenaltyKind::None: return CVector::Zero(w.size());
    case PenaltyKind::ZA: return za_subgradient(w);
    case PenaltyKind::RZA:
      return p.rza_printed_form ? rza_subgradient_printed(w, p.epsilon)
                                : rza_subgradient(w, p.epsilon);
  }
  return CVector::Zero(w.size());
}

/// w <- w - rho * df/dw*. No-op for PenaltyKind::None.
inline void apply_sparsity_correction(CVector& w, const PenaltyParams& p) {
  if (p.kind == PenaltyKind::None) return;
  w -= p.rho * penalty_subgradient(w, p);
}

}  // namespace dcg
