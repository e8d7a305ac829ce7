// Acceptance gate: one pass/fail line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "nsbox/certify.hpp"
#include "nsbox/estimators.hpp"
#include "nsbox/nonlinear.hpp"
#include "nsbox/ops.hpp"
#include "nsbox/quadrature.hpp"
#include "nsbox/solver.hpp"

using namespace nsbox;
using namespace nsbox::testing;
using Cplx3 = std::array<std::complex<double>, 3>;

namespace {

double now_s() {
  using clk = std::chrono::steady_clock;
  static const auto t0 = clk::now();
  return std::chrono::duration<double>(clk::now() - t0).count();
}

struct Failure {
  std::string what;
  bool ok = true;
  // collects the first few violations; keeps the pass path branch-free
  void expect(bool cond, const char* fmt, double a = 0.0, double b = 0.0) {
    if (cond) return;
    ok = false;
    if (what.size() > 300) return;
    char buf[160];
    std::snprintf(buf, sizeof(buf), fmt, a, b);
    if (!what.empty()) what += "; ";
    what += buf;
  }
};

// ---- shared fixtures --------------------------------------------------------

struct SmallRun {
  BoxSpec box;
  SpectralField u0{BoxSpec{kTwoPi, 1.0, 0.5}, 1};
  ConstantBundle bundle;
  EpsilonBudget budget;
  Trajectory traj;
  double rhs = 0.0;
};

struct Shared {
  SobolevConstantTable table;
  std::optional<SmallRun> half_alpha_run;  // alpha = 1/2 reference, with snapshots
};

// datum scaled so the data-smallness lhs sits at exactly half its threshold
SmallRun make_small_run(double alpha, const SobolevConstantTable& table,
                        bool snapshots) {
  SmallRun r;
  r.box = BoxSpec{kTwoPi, 1.0, alpha};
  r.budget = EpsilonBudget::defaults(r.box.viscosity);
  r.bundle = assemble_bundle(alpha, r.box.length, r.budget.eps1, r.budget.eps2, table);
  r.rhs = std::pow(r.budget.nu_bar / r.bundle.k2, 2.0);

  SpectralField u0 = random_divfree_field(r.box, 16, 2400 + int(alpha * 8), 2.5);
  u0 *= std::sqrt(0.5 * r.rhs / hs_norm_sq(u0, alpha));
  r.u0 = u0;

  SolverConfig cfg;
  cfg.truncation = 16;
  cfg.dt = 4e-3;
  cfg.t_end = 1.0;
  cfg.sample_every = 5;
  cfg.store_snapshots = snapshots;
  r.traj = integrate(u0, Forcing::zero(), cfg, r.box);
  return r;
}

// ---- criteria ---------------------------------------------------------------

bool crit_spectral_identities(std::string& detail) {
  Failure f;
  const double t_start = now_s();
  const double boxes[3] = {0.5 * kTwoPi, kTwoPi, 2.0 * kTwoPi};
  for (int i = 0; i < 100; ++i) {
    const BoxSpec box{boxes[i % 3], 1.0, 0.5};
    const int m = 2 + i % 7;
    const SpectralField u = random_field(box, m, 100 + i, 1.5 + (i % 4) * 0.5);
    const SpectralField v = random_field(box, m, 900 + i, 2.0);
    const double lam = box.stokes_factor();

    // fractional Stokes powers shift the norm index
    const double sig = 0.25 + 0.125 * (i % 5);
    const double s = -1.0 + 0.25 * (i % 9);
    const double lhs = hs_norm(stokes_power(u, sig), s);
    const double rhs = std::pow(lam, sig) * hs_norm(u, s + 2.0 * sig);
    f.expect(rel_close(lhs, rhs, 1e-12), "stokes shift %.3e vs %.3e", lhs, rhs);

    // gradient quadrature and Parseval; oversample 2 already integrates the
    // quadratic integrand exactly
    const double gq = lp_norm(gradient(u), 2.0, 2);
    const double gn = std::pow(box.length, 1.5) * std::sqrt(lam) * hs_norm(u, 1.0);
    f.expect(rel_close(gq, gn, 1e-10), "gradient norm %.3e vs %.3e", gq, gn);
    const double pq = lp_norm(u, 2.0, 2);
    const double pn = std::pow(box.length, 1.5) * hs_norm(u, 0.0);
    f.expect(rel_close(pq, pn, 1e-10), "Parseval %.3e vs %.3e", pq, pn);

    // duality pairing split (Cauchy-Schwarz at any index shift)
    const double t = 0.3;
    const double mid = 0.5 * (s + 0.5);
    const double pair = std::abs(duality_inner(u, v, s, 0.5));
    const double bound = hs_norm(u, mid + t) * hs_norm(v, mid - t);
    f.expect(pair <= bound * (1.0 + 1e-12), "duality %.3e > %.3e", pair, bound);

    // midpoint interpolation with constant one
    const double a = hs_norm(u, s), b = hs_norm(u, s + 1.0);
    const double c = hs_norm(u, s + 0.5);
    f.expect(c <= std::sqrt(a * b) * (1.0 + 1e-12), "interp %.3e > %.3e", c,
             std::sqrt(a * b));
  }
  // equality cases on a single mode
  const BoxSpec box{kTwoPi, 1.0, 0.5};
  const SpectralField one = single_mode_field(
      box, 3, Mode{2, -1, 1}, Cplx3{{{0.3, 0.1}, {0.0, -0.2}, {0.5, 0.0}}});
  const double a = hs_norm(one, 0.2), b = hs_norm(one, 1.2), c = hs_norm(one, 0.7);
  f.expect(rel_close(c, std::sqrt(a * b), 1e-12), "single-mode interp %.3e vs %.3e", c,
           std::sqrt(a * b));

  const double elapsed = now_s() - t_start;
  f.expect(elapsed < 10.0, "runtime %.1fs exceeds 10s", elapsed);
  detail = f.ok ? "" : f.what;
  return f.ok;
}

bool crit_convolution_oracle(std::string& detail) {
  Failure f;
  const double t_start = now_s();
  const BoxSpec box{kTwoPi, 1.0, 0.5};
  for (int m = 1; m <= 4; ++m) {
    const SpectralField a = random_field(box, m, 200 + m, 1.0);
    const SpectralField b = random_field(box, m, 300 + m, 1.0);
    const SpectralField fast = nonlinear_term(a, b, 2 * m);
    const SpectralField slow = oracle_advect(a, b, 2 * m);
    double scale = 0.0;
    slow.for_each([&](const Mode&, const ModeArray<3>::Entry& e) {
      for (const auto& z : e) scale = std::max(scale, std::abs(z));
    });
    const double dist = max_coeff_distance(fast, slow);
    f.expect(dist <= 1e-12 * scale, "advection conv m dist %.3e scale %.3e", dist,
             scale);

    const SpectralField u = random_divfree_field(box, m, 400 + m, 1.0);
    const double tn = tensor_product_norm(u, 1.5);
    const double on = hs_norm(oracle_tensor(u), 1.5);
    f.expect(rel_close(tn, on, 1e-12), "tensor norm %.3e vs %.3e", tn, on);
  }
  const double elapsed = now_s() - t_start;
  f.expect(elapsed < 30.0, "runtime %.1fs exceeds 30s", elapsed);
  detail = f.ok ? "" : f.what;
  return f.ok;
}

bool crit_heat_exactness(std::string& detail) {
  Failure f;
  const BoxSpec box{kTwoPi, 1.0, 0.5};

  SolverConfig cfg;
  cfg.truncation = 8;
  cfg.dt = 0.01;
  cfg.t_end = 1.0;
  cfg.sample_every = 1000000;
  cfg.disable_nonlinear = true;
  const SpectralField u0 = random_divfree_field(box, 8, 500);
  SpectralField last(box, 8);
  const Trajectory traj = integrate(
      u0, Forcing::zero(), cfg, box,
      [&](const DiagnosticsSample&, const SpectralField& s) { last = s; });
  f.expect(traj.status == RunStatus::completed, "heat run did not complete");
  const SpectralField exact = heat_evolve(leray_project(u0), 1.0);
  const double err = hs_norm(last - exact, 0.5);
  const double ref = hs_norm(exact, 0.5);
  f.expect(err <= 1e-8 * ref, "heat error %.3e vs scale %.3e", err, ref);

  // order check with the quadratic term back on
  const SpectralField w0 = random_divfree_field(box, 4, 510, 2.0, 2.0);
  auto terminal = [&](double dt) {
    SolverConfig c;
    c.truncation = 4;
    c.dt = dt;
    c.t_end = 0.5;
    c.sample_every = 1000000;
    SpectralField out(box, 4);
    integrate(w0, Forcing::zero(), c, box,
              [&](const DiagnosticsSample&, const SpectralField& s) { out = s; });
    return out;
  };
  const SpectralField fine = terminal(0.5 / 1024.0);
  const double ea = hs_norm(terminal(0.5 / 16.0) - fine, 0.5);
  const double eb = hs_norm(terminal(0.5 / 32.0) - fine, 0.5);
  const double ratio = eb > 0.0 ? ea / eb : 0.0;
  f.expect(ratio >= 12.0 && ratio <= 20.0, "halving ratio %.2f outside [12,20]", ratio);
  detail = f.ok ? "" : f.what;
  return f.ok;
}

bool crit_energy_residual(std::string& detail) {
  Failure f;
  const BoxSpec box{kTwoPi, 1.0, 0.5};
  const SpectralField u0 = random_divfree_field(box, 6, 600, 2.0, 0.7);
  const Forcing force = Forcing::constant(random_divfree_field(box, 4, 610, 2.0, 0.4));
  SolverConfig cfg;
  cfg.truncation = 6;
  cfg.dt = 5e-3;
  cfg.t_end = 0.5;
  cfg.sample_every = 5;
  const Trajectory traj = integrate(u0, force, cfg, box);
  f.expect(traj.status == RunStatus::completed, "forced run did not complete");
  double worst = 0.0;
  for (const auto& s : traj.samples) worst = std::max(worst, std::abs(s.energy_residual));
  f.expect(worst <= 1e-6, "energy residual %.3e exceeds 1e-6", worst);
  detail = f.ok ? "" : f.what;
  return f.ok;
}

bool crit_small_data_bound(std::string& detail, Shared& shared) {
  Failure f;
  for (double alpha : {0.5, 0.75, 1.0}) {
    const bool keep = alpha == 0.5;
    SmallRun run = make_small_run(alpha, shared.table, keep);
    f.expect(run.traj.status == RunStatus::completed, "run at alpha %.2f stopped",
             alpha);

    const auto a4 = check_smallness_A4(run.u0, Forcing::zero(), 1.0, run.bundle,
                                       run.budget);
    f.expect(a4.passed && rel_close(a4.lhs, 0.5 * a4.rhs, 1e-12),
             "datum scaling lhs %.3e vs half rhs %.3e", a4.lhs, 0.5 * a4.rhs);

    const BoundCheck bc = smallness_run_check(run.traj, run.bundle, run.budget);
    f.expect(bc.ok, "run bound: worst lhs %.6e vs rhs %.6e", bc.worst_lhs, bc.rhs);
    // the sup part alone, at every sample
    for (const auto& s : run.traj.samples)
      f.expect(2.0 * s.x <= run.rhs, "sup bound %.6e vs %.6e", 2.0 * s.x, run.rhs);

    if (keep) shared.half_alpha_run = std::move(run);
  }
  detail = f.ok ? "" : f.what;
  return f.ok;
}

bool crit_stability_envelope(std::string& detail, Shared& shared) {
  Failure f;
  if (!shared.half_alpha_run)
    shared.half_alpha_run = make_small_run(0.5, shared.table, true);
  const SmallRun& ref = *shared.half_alpha_run;

  // perturbation sized so the proximity lhs sits at 0.8 of its threshold
  SpectralField w = random_divfree_field(ref.box, 16, 2600, 2.5);
  const double int_u = trapezoid_to(ref.traj.samples, &DiagnosticsSample::u, 1.0);
  const double target = 0.8 * ref.rhs * std::exp(-ref.bundle.k3 * int_u);
  w *= std::sqrt(target / hs_norm_sq(w, ref.box.alpha));
  SpectralField v0 = ref.u0;
  v0.axpy(1.0, w);

  const auto a1 = check_proximity_A1(ref.traj, v0, Forcing::zero(), 1.0, ref.bundle,
                                     ref.budget);
  f.expect(a1.passed && rel_close(a1.lhs, 0.8 * a1.rhs, 1e-10),
           "perturbation scaling lhs %.3e vs 0.8 rhs %.3e", a1.lhs, 0.8 * a1.rhs);

  SolverConfig cfg = ref.traj.config;
  cfg.store_snapshots = true;
  const Trajectory vtraj = integrate(v0, Forcing::zero(), cfg, ref.box);
  f.expect(vtraj.status == RunStatus::completed, "perturbed run stopped");

  const Trajectory diff = difference_trajectory(ref.traj, vtraj);
  const auto p1 = p1_check(diff, ref.bundle, ref.budget);
  f.expect(p1.passed, "per-sample propagation lhs %.6e vs rhs %.6e", p1.lhs, p1.rhs);

  const EnvelopeReport env = gronwall_envelope(diff, ref.bundle, ref.budget, 0.05);
  f.expect(env.violations.empty(), "envelope violations: %.0f",
           double(env.violations.size()));
  detail = f.ok ? "" : f.what;
  return f.ok;
}

bool crit_caloric_lifetime(std::string& detail, Shared& shared) {
  Failure f;
  const BoxSpec box{kTwoPi, 1.0, 0.5};
  const EpsilonBudget budget = EpsilonBudget::defaults(box.viscosity);
  const ConstantBundle bundle =
      assemble_bundle(box.alpha, box.length, budget.eps1, budget.eps2, shared.table);

  // fully low-frequency single mode, datum at half the "Moreover" threshold
  const double mu = box.viscosity - budget.eps1 - budget.eps2;
  const double dcoef = mu - budget.sigma * mu;
  const double bound = std::pow(dcoef / bundle.k2, 2.0);
  const double csq = 0.5 * bound;  // X(0) = |c|^2 for a |k| = 1 mode
  const Mode k{1, 0, 0};
  const SpectralField u0 = single_mode_field(
      box, 2, k, Cplx3{{{0.0, 0.0}, {std::sqrt(csq), 0.0}, {0.0, 0.0}}});

  // closed-form crossing of the two sides under pure heat decay
  const double pre = std::pow(bundle.k2 / dcoef, 2.0) / (2.0 * budget.delta);
  const double w0 = std::pow(tensor_product_norm(u0, 1.0 + box.alpha), 2.0);
  const double g0 = std::pow(lp_norm(gradient(u0), 3.0 / (2.0 - box.alpha), 3), 4.0);
  const double rate = 4.0 * box.viscosity * double(mode_sq(k));
  auto decay_int = [&](double t) { return (1.0 - std::exp(-rate * t)) / rate; };
  auto gap = [&](double t) {
    return std::exp(-bundle.k3 * (g0 * decay_int(t) + budget.delta * t)) -
           pre * w0 * decay_int(t);
  };
  double hi = 1e-6;
  while (gap(hi) > 0.0 && hi < 1e9) hi *= 2.0;
  f.expect(hi < 1e9, "no closed-form crossing below 1e9");
  double lo = 0.0;
  while (hi - lo > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    (gap(mid) > 0.0 ? lo : hi) = mid;
  }
  const double t_star = lo;

  // heat integrands decay on a 1/(4 nu) time scale while the crossing sits
  // far out; cells must resolve the former, so size the grid off t_star
  const int cells = std::max(64, int(std::ceil(1.3 * t_star / 0.125)));
  const CaloricResult cal =
      caloric_lower_bound(u0, 1, bundle, budget, 1.3 * t_star, cells);
  f.expect(cal.report.passed, "caloric certificate failed");
  f.expect(std::abs(cal.t0 - t_star) <= 1e-4 * t_star,
           "lifetime %.8e vs closed form %.8e", cal.t0, t_star);

  // solver run up to T0 against the a-priori bound on X + sigma int Y
  if (cal.t0 > 0.0) {
    SolverConfig cfg;
    cfg.truncation = 2;
    cfg.dt = cal.t0 / 400.0;
    cfg.t_end = cal.t0;
    cfg.sample_every = 5;
    const Trajectory traj = integrate(u0, Forcing::zero(), cfg, box);
    f.expect(traj.status == RunStatus::completed, "lifetime run stopped early");
    double iy = 0.0, worst = 0.0;
    const auto& s = traj.samples;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i > 0) iy += 0.5 * (s[i - 1].y + s[i].y) * (s[i].t - s[i - 1].t);
      worst = std::max(worst, s[i].x + budget.sigma * iy);
    }
    f.expect(worst <= bound, "run bound %.6e vs %.6e", worst, bound);
  }
  detail = f.ok ? "" : f.what;
  return f.ok;
}

bool crit_aposteriori_schedule(std::string& detail, Shared& shared) {
  Failure f;
  const BoxSpec box{kTwoPi, 1.0, 0.5};
  const EpsilonBudget budget = EpsilonBudget::defaults(box.viscosity);
  const ConstantBundle bundle =
      assemble_bundle(box.alpha, box.length, budget.eps1, budget.eps2, shared.table);
  const double rhs = std::pow(budget.nu_bar / bundle.k2, 2.0);

  SpectralField u0 = random_divfree_field(box, 16, 2800, 3.0);
  u0 *= std::sqrt(0.25 * rhs / hs_norm_sq(u0, box.alpha));

  SolverConfig base;
  base.truncation = 8;
  base.dt = 5e-3;
  base.t_end = 0.25;
  base.sample_every = 10;
  const ConditionCResult res = verify_condition_C(u0, Forcing::zero(), 0.25, bundle,
                                                  budget, {8, 16, 32}, base);
  f.expect(res.reports.size() == 3, "expected 3 reports, got %.0f",
           double(res.reports.size()));
  if (res.residual_integrals.size() == 3) {
    const auto& ri = res.residual_integrals;
    f.expect(ri[0] > ri[1] && ri[1] > ri[2],
             "residuals not strictly decreasing: first %.3e last %.3e", ri[0], ri[2]);
    f.expect(ri[2] >= 0.0, "negative residual %.3e", ri[2]);
  }
  f.expect(res.granted_n.has_value() && *res.granted_n <= 32,
           "no certificate granted at n <= 32");
  detail = f.ok ? "" : f.what;
  return f.ok;
}

bool crit_constant_consistency(std::string& detail) {
  Failure f;
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    const double alpha = 0.5 + 0.5 * u01(rng);
    const double length = 0.5 + 9.5 * u01(rng);
    const double eps1 = 0.05 + 0.4 * u01(rng);
    const double eps2 = 0.05 + 0.4 * u01(rng);
    SobolevConstantTable table;
    for (double beta : {1.0 - alpha, 1.0, alpha - 0.5}) {
      SobolevEntry e;
      e.estimate_lower = 1.0 + 2.0 * u01(rng);
      e.safety_factor = 1.0;
      table.set(beta, e);
    }
    const ConstantBundle b =
        assemble_bundle(alpha, length, eps1, eps2, table);
    const double c1ma = table.effective(1.0 - alpha);
    const double c1 = table.effective(1.0);
    const double camh = table.effective(alpha - 0.5);
    const double w = kTwoPi / length;

    const double k3_closed = std::pow(eps1, -3.0) * (27.0 / 128.0) *
                             std::pow(kTwoPi, -12.0) * std::pow(c1ma * c1, 4.0) *
                             std::pow(w, 2.0 * (1.0 - 2.0 * alpha)) *
                             std::pow(1.0 + camh * std::pow(kTwoPi, alpha - 2.0), 4.0);
    f.expect(rel_close(b.k3_assembled, k3_closed, 1e-12),
             "assembled k3 %.6e vs closed %.6e", b.k3_assembled, k3_closed);
    f.expect(rel_close(b.k3_sec12, k3_closed, 1e-12), "k3 %.6e vs closed %.6e",
             b.k3_sec12, k3_closed);

    const double k4_closed = std::pow(length / kTwoPi, 2.0) / (4.0 * eps2);
    f.expect(rel_close(b.k4, k4_closed, 1e-12), "k4 %.6e vs closed %.6e", b.k4,
             k4_closed);

    f.expect(rel_close(b.k2_assembled / b.k2_sec12, std::pow(kTwoPi, -3.0), 1e-12),
             "k2 variant ratio %.6e", b.k2_assembled / b.k2_sec12, 0.0);
  }

  // exact length invariance of k3 at the endpoint index
  SobolevConstantTable table;
  for (double beta : {0.5, 1.0, 0.0}) {
    SobolevEntry e;
    e.estimate_lower = 1.7 + beta;
    e.safety_factor = 1.0;
    table.set(beta, e);
  }
  const ConstantBundle ba = assemble_bundle(0.5, 0.5 * kTwoPi, 0.1, 0.1, table);
  const ConstantBundle bb = assemble_bundle(0.5, kTwoPi, 0.1, 0.1, table);
  const ConstantBundle bc = assemble_bundle(0.5, 2.0 * kTwoPi, 0.1, 0.1, table);
  f.expect(ba.k3 == bb.k3 && bb.k3 == bc.k3, "k3 not length-invariant: %.17g vs %.17g",
           ba.k3, bc.k3);
  detail = f.ok ? "" : f.what;
  return f.ok;
}

bool crit_estimator(std::string& detail) {
  Failure f;
  const double flat = estimate_sobolev_constant(0.0, 200, 7);
  const double exact = std::pow(kTwoPi, 1.5);
  f.expect(std::abs(flat - exact) <= 1e-6, "beta 0 estimate %.12g vs %.12g", flat,
           exact);

  const double e1 = estimate_sobolev_constant(0.5, 100, 11);
  const double e2 = estimate_sobolev_constant(0.5, 300, 11);
  const double e3 = estimate_sobolev_constant(0.5, 900, 11);
  f.expect(e1 <= e2 && e2 <= e3, "budget growth shrank the estimate %.6g > %.6g", e1,
           e3);

  const double r1 = estimate_sobolev_constant(0.5, 250, 42);
  const double r2 = estimate_sobolev_constant(0.5, 250, 42);
  f.expect(r1 == r2, "estimate not reproducible: %.17g vs %.17g", r1, r2);
  detail = f.ok ? "" : f.what;
  return f.ok;
}

bool crit_dilation_tiling(std::string& detail) {
  Failure f;
  const BoxSpec small{0.5 * kTwoPi, 1.0, 0.5};
  const SpectralField u = random_divfree_field(small, 5, 3000);

  const SpectralField stretched = dilate(u, 2.5);
  f.expect(max_coeff_distance(stretched, u) == 0.0, "dilation moved coefficients");
  f.expect(hs_norm(stretched, 0.7) == hs_norm(u, 0.7), "dilation changed a norm");
  f.expect(stretched.box().length == 2.5 * small.length, "dilation box length wrong");

  SobolevConstantTable table;
  for (double beta : {0.5, 1.0, 0.0}) {
    SobolevEntry e;
    e.estimate_lower = 1.3 + 0.4 * beta;
    e.safety_factor = 1.0;
    table.set(beta, e);
  }
  const EpsilonBudget budget = EpsilonBudget::defaults(small.viscosity);
  const ConstantBundle bundle =
      assemble_bundle(small.alpha, small.length, budget.eps1, budget.eps2, table);

  SpectralField u0 = u;
  u0 *= 1e-3 / hs_norm(u0, small.alpha);

  const SpectralField tiled = tile_field(u0, 3);
  double embed = 0.0;
  std::size_t off = 0;
  tiled.for_each([&](const Mode& k, const ModeArray<3>::Entry& e) {
    if (k[0] % 3 == 0 && k[1] % 3 == 0 && k[2] % 3 == 0) {
      const auto ref = u0.coeff_or_zero(Mode{k[0] / 3, k[1] / 3, k[2] / 3});
      for (int c = 0; c < 3; ++c) embed = std::max(embed, std::abs(e[c] - ref[c]));
    } else {
      for (int c = 0; c < 3; ++c)
        if (e[c] != 0.0) ++off;
    }
  });
  f.expect(embed == 0.0, "tiling embed error %.3e", embed);
  f.expect(off == 0, "tiling filled %.0f off-lattice coefficients", double(off));

  const auto r = check_corollary2(u0, 3.0 * small.length, bundle, budget);
  f.expect(double(r.inputs["a4_equivalence_deviation"]) <= 1e-12,
           "criterion deviation %.3e", double(r.inputs["a4_equivalence_deviation"]));
  const auto a4 = check_smallness_A4(u0, Forcing::zero(), 1.0, bundle, budget);
  f.expect(r.passed == a4.passed, "criteria disagree");
  f.expect(rel_close(r.lhs / small.length, std::sqrt(a4.lhs), 1e-12),
           "lhs mismatch %.6e vs %.6e", r.lhs / small.length, std::sqrt(a4.lhs));
  f.expect(rel_close(r.rhs / small.length, budget.nu_bar / bundle.k2_sec12, 1e-12),
           "rhs mismatch %.6e vs %.6e", r.rhs / small.length,
           budget.nu_bar / bundle.k2_sec12);
  detail = f.ok ? "" : f.what;
  return f.ok;
}

}  // namespace

int main() {
  Shared shared;
  for (double beta : {0.0, 0.25, 0.5, 1.0}) shared.table.ensure(beta, 300, 1);

  struct Row {
    const char* label;
    bool ok;
    std::string detail;
  };
  std::vector<Row> rows;
  auto add = [&](const char* label, auto&& fn) {
    Row r{label, false, {}};
    try {
      r.ok = fn(r.detail);
    } catch (const std::exception& e) {
      r.ok = false;
      r.detail = std::string("exception: ") + e.what();
    }
    rows.push_back(std::move(r));
  };

  add("spectral identities", [](std::string& d) { return crit_spectral_identities(d); });
  add("convolution oracle", [](std::string& d) { return crit_convolution_oracle(d); });
  add("heat exactness and order", [](std::string& d) { return crit_heat_exactness(d); });
  add("energy balance residual", [](std::string& d) { return crit_energy_residual(d); });
  add("small-data run bound", [&](std::string& d) { return crit_small_data_bound(d, shared); });
  add("stability envelope", [&](std::string& d) { return crit_stability_envelope(d, shared); });
  add("caloric lifetime", [&](std::string& d) { return crit_caloric_lifetime(d, shared); });
  add("a-posteriori schedule", [&](std::string& d) { return crit_aposteriori_schedule(d, shared); });
  add("constant consistency", [](std::string& d) { return crit_constant_consistency(d); });
  add("Sobolev estimator", [](std::string& d) { return crit_estimator(d); });
  add("dilation and tiling", [](std::string& d) { return crit_dilation_tiling(d); });

  int failures = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Row& r = rows[i];
    if (!r.ok) ++failures;
    std::printf("criterion %2zu: %s  %s%s%s\n", i + 1, r.ok ? "PASS" : "FAIL", r.label,
                r.detail.empty() ? "" : " | ", r.detail.c_str());
  }
  return failures == 0 ? 0 : 1;
}
