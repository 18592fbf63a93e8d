// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
// Experiments run at desk scale: N=20, M=10, 1000 instants, 20 runs, 30 dB SNR.

#include "dcg/dcg.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using dcg::CMatrix;
using dcg::CVector;
using dcg::Engine;
using dcg::ExperimentConfig;
using dcg::PenaltyKind;
using dcg::Protocol;

namespace {

constexpr int kRuns = 20;
constexpr double kSteadyWindow = 100;

struct Verdict {
  bool pass = true;
  std::string detail;
};

int g_failures = 0;

void report(int id, const std::string& name, const Verdict& v) {
  std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << id << ". " << name << ": " << v.detail << std::endl;
  if (!v.pass) ++g_failures;
}

std::string fmt(double v, int precision = 2) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(precision);
  os << v;
  return os.str();
}

std::string fmt_iter(std::optional<int> it) { return it ? std::to_string(*it) : "never"; }

ExperimentConfig desk(Protocol protocol, Engine engine) {
  ExperimentConfig c;
  c.runs = kRuns;
  c.protocol = protocol;
  c.engine = engine;
  c.label = dcg::default_label(c);
  return c;
}

ExperimentConfig sparse(ExperimentConfig c, PenaltyKind kind, double rho, double epsilon) {
  c.system = dcg::SystemVectorMode::Sparse;
  c.sparse_support = 2;
  c.params.penalty = {kind, rho, epsilon};
  c.label = dcg::default_label(c);
  return c;
}

double steady(const dcg::MsdTrace& t) { return dcg::steady_state_db(t, static_cast<std::size_t>(kSteadyWindow)); }

// Experiments are cached by a textual key so criteria can share runs.
std::map<std::string, dcg::MsdTrace> g_cache;

const dcg::MsdTrace& run(const std::string& key, const ExperimentConfig& c) {
  auto it = g_cache.find(key);
  if (it == g_cache.end()) it = g_cache.emplace(key, dcg::run_experiment(c)).first;
  return it->second;
}

// 1 ---------------------------------------------------------------------------

Verdict cg_oracle_equivalence() {
  std::mt19937_64 gen(20240601);
  const Eigen::Index m = 10;
  double worst = 0.0;
  int max_iters = 0;
  int over = 0;
  std::vector<std::pair<CMatrix, CVector>> systems;
  for (int t = 0; t < 100; ++t) {
    systems.emplace_back(oracle::random_hpd_uniform(gen, m, 1e3), oracle::random_cvector(gen, m));
  }
  const auto start = std::chrono::steady_clock::now();
  for (const auto& [R, b] : systems) {
    const auto res = dcg::cg_inner_solve(R, b, CVector::Zero(m), static_cast<int>(m), 1e-13);
    const CVector ref = dcg::direct_solve(R, b);
    const double rel = (res.w - ref).norm() / ref.norm();
    worst = std::max(worst, rel);
    max_iters = std::max(max_iters, res.iterations);
    if (rel > 1e-6 || res.iterations > m || res.breakdown) ++over;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Verdict v;
  v.pass = over == 0 && secs < 1.0;
  std::ostringstream err;
  err << std::scientific << std::setprecision(2) << worst;
  v.detail = "worst relative error " + err.str() + " (limit 1e-6), max iterations " +
             std::to_string(max_iters) + " (limit 10), " + std::to_string(over) + " failures, " +
             fmt(secs * 1e3, 1) + " ms (limit 1000 ms)";
  return v;
}

// 2 ---------------------------------------------------------------------------

Verdict cooperation_gain() {
  const double atc = steady(run("ATC-CG", desk(Protocol::ATC, Engine::CG)));
  const double nc = steady(run("NC-CG", desk(Protocol::NonCooperative, Engine::CG)));
  Verdict v;
  v.pass = atc <= nc - 3.0;
  v.detail = "ATC-CG " + fmt(atc) + " dB vs NC-CG " + fmt(nc) + " dB, gain " + fmt(nc - atc) +
             " dB (need >= 3)";
  return v;
}

// 3 ---------------------------------------------------------------------------

constexpr double kRhoGrid[] = {1e-4, 5e-4, 2e-3};
constexpr double kEpsilonGrid[] = {0.05, 0.1, 0.2};

struct Tuned {
  double db = std::numeric_limits<double>::infinity();
  double rho = 0.0;
  double epsilon = 0.0;
};

Tuned tune(Protocol protocol, PenaltyKind kind) {
  Tuned best;
  const ExperimentConfig base = desk(protocol, Engine::CG);
  const std::vector<double> eps = kind == PenaltyKind::RZA
                                      ? std::vector<double>(std::begin(kEpsilonGrid), std::end(kEpsilonGrid))
                                      : std::vector<double>{0.1};
  for (double rho : kRhoGrid) {
    for (double e : eps) {
      const auto cfg = sparse(base, kind, rho, e);
      const double db = steady(run(cfg.label + " rho=" + fmt(rho, 5) + " eps=" + fmt(e, 3), cfg));
      if (db < best.db) best = {db, rho, e};
    }
  }
  return best;
}

Verdict sparsity_ordering() {
  Verdict v;
  for (Protocol p : {Protocol::ATC, Protocol::CTA}) {
    const auto plain_cfg = sparse(desk(p, Engine::CG), PenaltyKind::None, 0.0, 0.1);
    const double plain = steady(run(plain_cfg.label + " sparse", plain_cfg));
    const Tuned za = tune(p, PenaltyKind::ZA);
    const Tuned rza = tune(p, PenaltyKind::RZA);
    const bool ok = rza.db < za.db && za.db < plain && rza.db <= plain - 1.0;
    v.pass = v.pass && ok;
    if (!v.detail.empty()) v.detail += "; ";
    v.detail += std::string(dcg::to_string(p)) + ": RZA " + fmt(rza.db) + " (rho " + fmt(rza.rho, 4) + ", eps " +
                fmt(rza.epsilon, 2) + ") < ZA " + fmt(za.db) + " (rho " + fmt(za.rho, 4) + ") < plain " + fmt(plain) +
                ", RZA gain " + fmt(plain - rza.db) + " dB";
  }
  return v;
}

// 4 ---------------------------------------------------------------------------

Verdict protocol_ordering() {
  const auto atc_cfg = sparse(desk(Protocol::ATC, Engine::CG), PenaltyKind::RZA, dcg::kPresetRzaRho,
                              dcg::kPresetRzaEpsilon);
  const auto cta_cfg = sparse(desk(Protocol::CTA, Engine::CG), PenaltyKind::RZA, dcg::kPresetRzaRho,
                              dcg::kPresetRzaEpsilon);
  const auto atc = dcg::iterations_to_reach(run("preset ATC-RZA", atc_cfg), -20.0);
  const auto cta = dcg::iterations_to_reach(run("preset CTA-RZA", cta_cfg), -20.0);
  Verdict v;
  v.pass = atc && (!cta || *atc <= *cta);
  v.detail = "instants to -20 dB: RZA-ATC-CG " + fmt_iter(atc) + ", RZA-CTA-CG " + fmt_iter(cta) + " (rho " +
             fmt(dcg::kPresetRzaRho, 4) + ", eps " + fmt(dcg::kPresetRzaEpsilon, 2) + ")";
  return v;
}

// 5 ---------------------------------------------------------------------------

Verdict baseline_ordering() {
  const auto& cg = run("ATC-CG", desk(Protocol::ATC, Engine::CG));
  const auto cg_hit = dcg::iterations_to_reach(cg, -15.0);
  std::optional<int> lms_best;
  double mu_best = 0.0;
  for (double mu : {0.01, 0.05, 0.1}) {
    auto c = desk(Protocol::ATC, Engine::LMS);
    c.params.mu = mu;
    const auto hit = dcg::iterations_to_reach(run("ATC-LMS mu=" + fmt(mu, 3), c), -15.0);
    if (hit && (!lms_best || *hit < *lms_best)) {
      lms_best = hit;
      mu_best = mu;
    }
  }
  const double cg_ss = steady(cg);
  const double rls_ss = steady(run("ATC-RLS", desk(Protocol::ATC, Engine::RLS)));
  const bool faster = cg_hit && (!lms_best || *cg_hit < *lms_best);
  const bool close = std::abs(cg_ss - rls_ss) <= 3.0;
  Verdict v;
  v.pass = faster && close;
  v.detail = std::string(faster ? "ok" : "violated") + " convergence: ATC-CG reaches -15 dB at " + fmt_iter(cg_hit) +
             ", best ATC-LMS (mu " + fmt(mu_best, 2) + ") at " + fmt_iter(lms_best) + "; " +
             (close ? "ok" : "violated") + " steady state: ATC-CG " + fmt(cg_ss) + " dB vs ATC-RLS " + fmt(rls_ss) +
             " dB, gap " + fmt(std::abs(cg_ss - rls_ss)) + " dB (limit 3)";
  return v;
}

// 6 ---------------------------------------------------------------------------

Verdict mcg_sanity() {
  const double cg = steady(run("ATC-CG", desk(Protocol::ATC, Engine::CG)));
  const double mcg = steady(run("ATC-MCG", desk(Protocol::ATC, Engine::MCG)));
  const dcg::ComplexityInputs in{10, 5, 20};
  const auto cg_cost = dcg::complexity_eval(dcg::ComplexityMethod::ATC_CG, in);
  const auto mcg_cost = dcg::complexity_eval(dcg::ComplexityMethod::ATC_MCG, in);
  Verdict v;
  // an MCG curve below the CG curve is within tolerance; only a worse one is bounded
  v.pass = mcg <= cg + 3.0 && mcg_cost.multiplications < cg_cost.multiplications;
  v.detail = "ATC-MCG " + fmt(mcg) + " dB vs ATC-CG " + fmt(cg) + " dB (MCG minus CG " + fmt(mcg - cg) +
             " dB, limit +3); multiplications at M=10 J=5 L=20: MCG " + std::to_string(mcg_cost.multiplications) +
             " < CG " + std::to_string(cg_cost.multiplications);
  return v;
}

// 7 ---------------------------------------------------------------------------

Verdict complexity_formulas() {
  using M = dcg::ComplexityMethod;
  struct Expect {
    M method;
    std::int64_t m, j, l, adds, mults;
  };
  // Hand evaluations of the published rows (ZA-MCG multiplication rows scaled by L).
  const Expect table[] = {
      {M::CTA_CG, 1, 1, 1, 8, 12},
      {M::ATC_CG, 1, 1, 1, 7, 11},
      {M::CTA_MCG, 1, 1, 1, 8, 12},
      {M::ATC_MCG, 1, 1, 1, 10, 13},
      {M::ZA_CTA_CG, 1, 1, 1, 9, 13},
      {M::ZA_ATC_CG, 1, 1, 1, 9, 13},
      {M::ZA_CTA_MCG, 1, 1, 1, 9, 13},
      {M::ZA_ATC_MCG, 1, 1, 1, 11, 14},
      {M::RZA_CTA_CG, 1, 1, 1, 10, 14},
      {M::RZA_ATC_CG, 1, 1, 1, 10, 13},
      {M::RZA_CTA_MCG, 1, 1, 1, 10, 14},
      {M::RZA_ATC_MCG, 1, 1, 1, 12, 15},
      {M::CTA_CG, 10, 5, 20, 28100, 38700},
      {M::ATC_CG, 10, 5, 20, 18280, 38500},
      {M::CTA_MCG, 10, 5, 20, 7720, 9780},
      {M::ATC_MCG, 10, 5, 20, 9740, 13580},
      {M::ZA_CTA_CG, 10, 5, 20, 28300, 38900},
      {M::ZA_ATC_CG, 10, 5, 20, 28300, 38900},
      {M::ZA_CTA_MCG, 10, 5, 20, 7920, 9980},
      {M::ZA_ATC_MCG, 10, 5, 20, 9940, 13780},
      {M::RZA_CTA_CG, 10, 5, 20, 30100, 40700},
      {M::RZA_ATC_CG, 10, 5, 20, 30280, 40500},
      {M::RZA_CTA_MCG, 10, 5, 20, 8120, 10180},
      {M::RZA_ATC_MCG, 10, 5, 20, 10140, 13980},
      {M::CTA_CG, 32, 3, 8, 62392, 94184},
      {M::ATC_CG, 32, 3, 8, 38064, 93928},
      {M::CTA_MCG, 32, 3, 8, 26848, 35064},
      {M::ATC_MCG, 32, 3, 8, 35048, 51192},
      {M::ZA_CTA_CG, 32, 3, 8, 62648, 94440},
      {M::ZA_ATC_CG, 32, 3, 8, 62648, 94440},
      {M::ZA_CTA_MCG, 32, 3, 8, 27104, 35320},
      {M::ZA_ATC_MCG, 32, 3, 8, 35304, 51448},
      {M::RZA_CTA_CG, 32, 3, 8, 63928, 95720},
      {M::RZA_ATC_CG, 32, 3, 8, 64176, 95464},
      {M::RZA_CTA_MCG, 32, 3, 8, 27360, 35576},
      {M::RZA_ATC_MCG, 32, 3, 8, 35560, 51704},
  };

  int bad = 0;
  std::string first_bad;
  for (const auto& e : table) {
    const auto got = dcg::complexity_eval(e.method, {e.m, e.j, e.l});
    if (got.additions != e.adds || got.multiplications != e.mults) {
      if (bad++ == 0) {
        first_bad = std::string(dcg::to_string(e.method)) + " at (" + std::to_string(e.m) + "," +
                    std::to_string(e.j) + "," + std::to_string(e.l) + ") gave " + std::to_string(got.additions) +
                    "/" + std::to_string(got.multiplications);
      }
    }
  }
  Verdict v;
  v.pass = bad == 0;
  v.detail = std::to_string(std::size(table) - static_cast<std::size_t>(bad)) + "/" + std::to_string(std::size(table)) +
             " cells exact, CTA-CG additions at (10,5,20) = " +
             std::to_string(dcg::complexity_eval(M::CTA_CG, {10, 5, 20}).additions) +
             (bad ? "; first mismatch " + first_bad : "");
  return v;
}

// 8 ---------------------------------------------------------------------------

// Standalone single-node engine, driven the same way as one experiment run.
std::vector<double> standalone_run(const ExperimentConfig& cfg, std::uint64_t run_index) {
  dcg::SignalModel model;
  model.w0 = dcg::system_vector(cfg, run_index);
  model.input_var = cfg.input_var;
  model.noise_var = dcg::snr_to_noise_var(cfg.snr_db, model.w0, cfg.input_var);
  model.seed = cfg.seed;
  dcg::NodeState node(cfg.taps, cfg.params.delta);
  std::vector<double> msd;
  for (int i = 1; i <= cfg.iterations; ++i) {
    dcg::adapt(node, dcg::generate_sample(model, run_index, 0, i), cfg.params, cfg.engine, dcg::StartFrom::Previous);
    dcg::apply_sparsity_correction(node.w, cfg.params.penalty);
    msd.push_back((model.w0 - node.w).squaredNorm());
  }
  return msd;
}

Verdict reduction_identities() {
  int checks = 0;
  int mismatches = 0;
  auto expect_same = [&](const std::vector<double>& a, const std::vector<double>& b) {
    ++checks;
    if (a != b) ++mismatches;
  };
  constexpr Engine kEngines[] = {Engine::CG, Engine::MCG, Engine::LMS, Engine::RLS};

  for (Engine e : kEngines) {
    for (Protocol p : {Protocol::CTA, Protocol::ATC}) {
      auto c = sparse(desk(p, e), PenaltyKind::RZA, 5e-4, 0.1);
      c.nodes = 1;
      c.topology.extra_edges = 0;
      for (std::uint64_t r = 0; r < 3; ++r) expect_same(dcg::run_single(c, r).msd_linear, standalone_run(c, r));
    }
  }

  for (Engine e : kEngines) {
    auto nc = desk(Protocol::NonCooperative, e);
    nc.runs = 3;
    const auto reference = dcg::run_experiment(nc).values;
    for (Protocol p : {Protocol::CTA, Protocol::ATC}) {
      auto c = nc;
      c.protocol = p;
      c.combiner = dcg::CombinerRule::Identity;
      expect_same(dcg::run_experiment(c).values, reference);
    }
  }

  for (Engine e : {Engine::CG, Engine::MCG}) {
    for (Protocol p : {Protocol::CTA, Protocol::ATC}) {
      auto plain = sparse(desk(p, e), PenaltyKind::None, 0.0, 0.1);
      plain.runs = 3;
      const auto reference = dcg::run_experiment(plain).values;
      for (PenaltyKind k : {PenaltyKind::ZA, PenaltyKind::RZA}) {
        auto c = plain;
        c.params.penalty = {k, 0.0, 0.1};
        expect_same(dcg::run_experiment(c).values, reference);
      }
    }
  }

  Verdict v;
  v.pass = mismatches == 0;
  v.detail = std::to_string(checks - mismatches) + "/" + std::to_string(checks) +
             " bit-identical traces (single node, identity combiner, zero penalty weight)";
  return v;
}

// 9 ---------------------------------------------------------------------------

Verdict invariant_suite() {
  std::mt19937_64 gen(9090);
  std::vector<std::string> broken;

  // combiner weights
  bool combiners_ok = true;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const int n = 2 + static_cast<int>(seed % 25);
    const int room = n * (n - 1) / 2 - (n >= 3 ? n : 1);
    const auto topo = dcg::build_topology(n, static_cast<int>(seed * 7) % (room + 1), seed);
    const auto metro = dcg::metropolis_weights(topo);
    const auto uni = dcg::CombinerMatrix::uniform(topo);
    for (int k = 0; k < n; ++k) {
      double cm = 0.0;
      double cu = 0.0;
      for (int l = 0; l < n; ++l) {
        const double a = metro.a(l, k);
        if (a < 0.0 || (a != 0.0 && !topo.linked(l, k)) || a != metro.a(k, l)) combiners_ok = false;
        if (uni.a(l, k) < 0.0 || (uni.a(l, k) != 0.0 && !topo.linked(l, k))) combiners_ok = false;
        cm += a;
        cu += uni.a(l, k);
      }
      if (std::abs(cm - 1.0) > 1e-14 || std::abs(cu - 1.0) > 1e-14) combiners_ok = false;
    }
  }
  if (!combiners_ok) broken.push_back("combiner stochasticity/symmetry");

  // CG conjugacy and residual tracking
  bool conj_ok = true;
  for (int t = 0; t < 50; ++t) {
    const Eigen::Index m = 2 + t % 9;
    const CMatrix R = oracle::random_hpd(gen, m, 100.0);
    const CVector b = oracle::random_cvector(gen, m);
    std::vector<CVector> dirs;
    std::vector<CVector> residuals;
    dcg::cg_inner_solve(R, b, CVector::Zero(m), static_cast<int>(m), 1e-12, [&](const dcg::CgIterate& it) {
      dirs.push_back(it.direction);
      if ((it.residual - (b - R * it.w)).norm() > 1e-9 * b.norm()) conj_ok = false;
      residuals.push_back(it.residual);
    });
    const double rn = R.norm();
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (std::abs(dirs[i].dot(R * dirs[j])) > 1e-6 * dirs[i].norm() * dirs[j].norm() * rn) conj_ok = false;
      }
    }
  }
  if (!conj_ok) broken.push_back("CG conjugacy residuals");

  // line-search scale bound
  bool eta_ok = true;
  for (double lambda = 0.5; lambda <= 1.0 + 1e-12; lambda += 0.05) {
    for (double eta = 0.0; eta <= 1.0 + 1e-12; eta += 0.02) {
      dcg::EngineParams p;
      p.lambda = std::min(lambda, 1.0);
      p.eta = eta;
      const bool inside = eta >= p.lambda - 0.5 && eta <= p.lambda;
      bool accepted = true;
      try {
        p.validate();
      } catch (const std::invalid_argument&) {
        accepted = false;
      }
      if (accepted != inside) eta_ok = false;
    }
  }
  try {
    dcg::EngineParams p;
    p.eta = 0.4;
    p.validate();
    eta_ok = false;
  } catch (const std::invalid_argument& e) {
    if (std::string(e.what()).find("[0.48, 0.98]") == std::string::npos) eta_ok = false;
  }
  if (!eta_ok) broken.push_back("line-search scale bound");

  // penalty subgradients against central differences
  bool fd_ok = true;
  std::normal_distribution<double> nd(0.0, 1.0);
  for (PenaltyKind kind : {PenaltyKind::ZA, PenaltyKind::RZA}) {
    const dcg::PenaltyParams p{kind, 0.3, 0.2};
    for (int t = 0; t < 50; ++t) {
      CVector w(6);
      for (Eigen::Index i = 0; i < w.size(); ++i) {
        double x = nd(gen);
        if (std::abs(x) < 0.05) x = std::copysign(0.05, x);
        w(i) = x;
      }
      const CVector grad = p.rho * dcg::penalty_subgradient(w, p);
      for (Eigen::Index i = 0; i < w.size(); ++i) {
        CVector up = w;
        CVector dn = w;
        up(i) += 1e-6;
        dn(i) -= 1e-6;
        const double fd = (dcg::penalty_value(up, p) - dcg::penalty_value(dn, p)) / 2e-6;
        if (std::abs(fd - grad(i).real()) > 1e-5) fd_ok = false;
      }
    }
  }
  if (!fd_ok) broken.push_back("penalty finite differences");

  Verdict v;
  v.pass = broken.empty();
  if (v.pass) {
    v.detail = "combiner weights, CG conjugacy and residuals, line-search bound and penalty gradients all hold";
  } else {
    v.detail = "broken:";
    for (const auto& b : broken) v.detail += " " + b + ";";
  }
  return v;
}

}  // namespace

int main() {
  std::cout << "acceptance at N=20 M=10 iterations=1000 runs=" << kRuns << " snr=30 dB" << std::endl;
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"CG matches direct solve", cg_oracle_equivalence},
      {"cooperation gain", cooperation_gain},
      {"sparsity ordering", sparsity_ordering},
      {"ATC converges no later than CTA", protocol_ordering},
      {"baseline ordering against LMS and RLS", baseline_ordering},
      {"MCG accuracy and cost", mcg_sanity},
      {"complexity formulas", complexity_formulas},
      {"reduction identities", reduction_identities},
      {"invariant suite", invariant_suite},
  };
  int id = 0;
  for (const auto& [name, check] : criteria) {
    ++id;
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    report(id, name, v);
  }
  std::cout << (g_failures == 0 ? "all criteria passed" : std::to_string(g_failures) + " criterion(s) failed")
            << std::endl;
  return g_failures == 0 ? 0 : 1;
}
