#pragma once

// Per-node adaptive estimators: conjugate gradient with an inner loop per
// time instant, the one-step-per-sample modified CG, and LMS / RLS
// baselines. All of them mutate exactly one NodeState.

#include "dcg/numerics.hpp"
#include "dcg/penalties.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dcg {

enum class Engine { CG, MCG, LMS, RLS };

inline std::string_view to_string(Engine e) {
  switch (e) {
    case Engine::CG: return "CG";
    case Engine::MCG: return "MCG";
    case Engine::LMS: return "LMS";
    case Engine::RLS: return "RLS";
  }
  return "?";
}

/// Where an adaptation step starts: the node's own previous estimate, or the
/// combined neighbourhood estimate stored in NodeState::phi.
enum class StartFrom { Previous, Combined };

struct Sample {
  CVector x;
  Complex d;
};

struct EngineParams {
  double lambda = 0.98;  ///< forgetting factor of the R and b recursions
  double eta = 0.6;      ///< MCG line-search scale, lambda - 0.5 <= eta <= lambda
  int j_max = 5;         ///< CG inner iterations per time instant
  double tol = 1e-6;     ///< relative residual at which the inner loop stops
  double delta = 0.01;   ///< R starts at delta*I (RLS: P starts at I/delta)
  double mu = 0.05;      ///< LMS step size
  PenaltyParams penalty;

  double eta_lower() const { return lambda - 0.5; }
  double eta_upper() const { return lambda; }
  bool eta_in_bound() const { return eta >= eta_lower() && eta <= eta_upper(); }

  void validate() const {
    if (!(lambda > 0.0 && lambda <= 1.0)) {
      throw std::invalid_argument("lambda must lie in (0, 1]");
    }
    if (!eta_in_bound()) {
      std::ostringstream os;
      os << "eta = " << eta << " violates the line-search bound [" << eta_lower() << ", "
         << eta_upper() << "] (lambda - 0.5 <= eta <= lambda)";
      throw std::invalid_argument(os.str());
    }
    if (j_max < 1) throw std::invalid_argument("j_max must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be > 0");
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be > 0");
    if (!(mu > 0.0)) throw std::invalid_argument("mu must be > 0");
    penalty.validate();
  }
};

struct NodeState {
  CMatrix R;    ///< exponentially weighted correlation estimate
  CVector b;    ///< exponentially weighted cross-correlation estimate
  CVector w;    ///< published estimate
  CVector g;    ///< residual b - R w (MCG keeps it recursively)
  CVector p;    ///< search direction
  CVector phi;  ///< intermediate (combined or adapted) estimate
  CMatrix P;    ///< inverse correlation, RLS only

  NodeState() = default;

  NodeState(Eigen::Index m, double delta)
      : R(delta * CMatrix::Identity(m, m)),
        b(CVector::Zero(m)),
        w(CVector::Zero(m)),
        g(CVector::Zero(m)),
        p(CVector::Zero(m)),
        phi(CVector::Zero(m)),
        P((1.0 / delta) * CMatrix::Identity(m, m)) {}

  Eigen::Index dim() const { return w.size(); }

  bool operator==(const NodeState&) const = default;
};

struct UpdateStatus {
  int iterations = 0;
  bool breakdown = false;
};

struct CgIterate {
  int j;                     ///< 1-based iteration index
  const CVector& w;          ///< estimate after iteration j
  const CVector& direction;  ///< direction used to produce it
  const CVector& residual;   ///< residual after iteration j
};

struct NoObserver {
  void operator()(const CgIterate&) const {}
};

struct CgResult {
  CVector w;
  CVector g;
  CVector p;
  int iterations = 0;
  bool breakdown = false;
};

/// Conjugate gradient on R w = b starting from w_init.
///
/// Stops once ||g|| <= tol*||b|| or after j_max iterations. A non-positive
/// curvature p^H R p ends the loop with the current estimate and sets
/// `breakdown`.
template <typename Observer = NoObserver>
CgResult cg_inner_solve(const CMatrix& R, const CVector& b, const CVector& w_init, int j_max,
                        double tol, Observer&& observe = {}) {
  detail::require_square(R, "cg_inner_solve");
  detail::require_dim(R.rows(), b.size(), "cg_inner_solve");
  detail::require_dim(R.rows(), w_init.size(), "cg_inner_solve");

  CgResult out;
  out.w = w_init;
  out.g = b - R * w_init;
  out.p = out.g;
  const double threshold = tol * b.norm();
  double gg = out.g.squaredNorm();
  CVector Rp(b.size());
  CVector used(b.size());

  while (out.iterations < j_max && std::sqrt(gg) > threshold) {
    Rp.noalias() = R * out.p;
    const double curvature = out.p.dot(Rp).real();
    if (!(curvature > 0.0)) {
      out.breakdown = true;
      break;
    }
    const double alpha = gg / curvature;
    out.w += alpha * out.p;
    out.g -= alpha * Rp;
    const double gg_next = out.g.squaredNorm();
    const double beta = gg_next / gg;
    ++out.iterations;
    used = out.p;
    observe(CgIterate{out.iterations, out.w, used, out.g});
    out.p = out.g + beta * out.p;
    gg = gg_next;
  }
  return out;
}

namespace detail {

inline const CVector& start_point(const NodeState& s, StartFrom from) {
  return from == StartFrom::Combined ? s.phi : s.w;
}

inline void absorb_sample(NodeState& s, const Sample& sample, double lambda) {
  s.R = corr_update(s.R, sample.x, lambda);
  s.b = cross_update(s.b, sample.d, sample.x, lambda);
}

}  // namespace detail

/// Folds the sample into (R, b) and re-solves with the CG inner loop.
inline UpdateStatus cg_time_update(NodeState& s, const Sample& sample, const EngineParams& params,
                                   StartFrom from = StartFrom::Previous) {
  detail::require_dim(s.dim(), sample.x.size(), "cg_time_update");
  detail::absorb_sample(s, sample, params.lambda);
  CgResult r = cg_inner_solve(s.R, s.b, detail::start_point(s, from), params.j_max, params.tol);
  s.w = std::move(r.w);
  s.g = std::move(r.g);
  s.p = std::move(r.p);
  return {r.iterations, r.breakdown};
}

/// One modified-CG step per sample: scaled line search along the previous
/// direction, recursive residual, and a Polak-Ribiere direction (clamped at
/// zero).
inline UpdateStatus mcg_time_update(NodeState& s, const Sample& sample, const EngineParams& params,
                                    StartFrom from = StartFrom::Previous) {
  detail::require_dim(s.dim(), sample.x.size(), "mcg_time_update");
  constexpr double kMinCurvature = 1e-12;
  UpdateStatus status{1, false};

  const Complex error = sample.d - s.w.dot(sample.x);  // d - w^H x with the previous w
  const CVector start = detail::start_point(s, from);
  detail::absorb_sample(s, sample, params.lambda);

  const CVector Rp = s.R * s.p;
  const double curvature = s.p.dot(Rp).real();
  Complex alpha(0.0, 0.0);
  if (curvature < kMinCurvature) {
    status.breakdown = true;
  } else {
    alpha = params.eta * s.p.dot(s.g) / curvature;
  }

  s.w = start + alpha * s.p;
  CVector g_next = params.lambda * s.g - alpha * Rp + std::conj(error) * sample.x;

  const double gg_prev = s.g.squaredNorm();
  double beta = 0.0;
  if (gg_prev > 0.0) {
    beta = std::max(0.0, (g_next - s.g).dot(g_next).real() / gg_prev);
  }
  s.p = g_next + beta * s.p;
  s.g = std::move(g_next);
  return status;
}

/// w <- w_start + mu x conj(d - w_start^H x). R and b are untouched.
inline UpdateStatus lms_update(NodeState& s, const Sample& sample, double mu,
                               StartFrom from = StartFrom::Previous) {
  detail::require_dim(s.dim(), sample.x.size(), "lms_update");
  const CVector& start = detail::start_point(s, from);
  const Complex error = sample.d - start.dot(sample.x);
  s.w = start + mu * std::conj(error) * sample.x;
  return {1, false};
}

/// Exponentially weighted RLS on the inverse correlation P.
inline UpdateStatus rls_update(NodeState& s, const Sample& sample, double lambda,
                               StartFrom from = StartFrom::Previous) {
  detail::require_dim(s.dim(), sample.x.size(), "rls_update");
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("rls_update: lambda must lie in (0, 1]");
  }
  const CVector Px = s.P * sample.x;
  const double denom = lambda + sample.x.dot(Px).real();
  const CVector gain = Px / denom;
  const Complex error = sample.d - detail::start_point(s, from).dot(sample.x);
  s.w = detail::start_point(s, from) + std::conj(error) * gain;

  CMatrix next = (s.P - gain * Px.adjoint()) / lambda;
  // keep P Hermitian: average the two triangles, then mirror
  for (Eigen::Index j = 0; j < next.cols(); ++j) {
    for (Eigen::Index i = j + 1; i < next.rows(); ++i) {
      next(i, j) = 0.5 * (next(i, j) + std::conj(next(j, i)));
    }
  }
  mirror_lower(next);
  s.P = std::move(next);
  return {1, false};
}

/// Dispatches one adaptation step for the chosen engine.
inline UpdateStatus adapt(NodeState& s, const Sample& sample, const EngineParams& params,
                          Engine engine, StartFrom from) {
  switch (engine) {
    case Engine::CG: return cg_time_update(s, sample, params, from);
    case Engine::MCG: return mcg_time_update(s, sample, params, from);
    case Engine::LMS: return lms_update(s, sample, params.mu, from);
    case Engine::RLS: return rls_update(s, sample, params.lambda, from);
  }
  return {};
}

}  // namespace dcg
