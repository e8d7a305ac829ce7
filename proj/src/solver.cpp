#include "nsbox/solver.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "nsbox/nonlinear.hpp"
#include "nsbox/ops.hpp"
#include "nsbox/quadrature.hpp"
#include "nsbox/io_util.hpp"

namespace nsbox {

void SolverConfig::validate() const {
  if (truncation < 1 || low_cutoff < 1 || truncation < low_cutoff)
    throw std::invalid_argument("SolverConfig: need m >= k0 >= 1");
  if (!(dt > 0.0)) throw std::invalid_argument("SolverConfig: dt must be positive");
  if (!(t_end > 0.0)) throw std::invalid_argument("SolverConfig: t_end must be positive");
  if (!(adapt >= 0.0)) throw std::invalid_argument("SolverConfig: adapt must be >= 0");
  if (oversample < 2) throw std::invalid_argument("SolverConfig: oversample must be >= 2");
  if (sample_every < 1) throw std::invalid_argument("SolverConfig: sample_every >= 1");
  if (!(blowup_factor > 0.0))
    throw std::invalid_argument("SolverConfig: blowup_factor must be positive");
}

std::string run_status_name(RunStatus s) {
  switch (s) {
    case RunStatus::completed: return "completed";
    case RunStatus::norm_exceeded: return "norm_exceeded";
    case RunStatus::step_failure: return "step_failure";
  }
  throw std::logic_error("bad status value");
}

namespace {

// exp(-nu lambda_k tau) applied per mode; keeps divergence-free exactly.
SpectralField viscous_decay(const SpectralField& f, double tau) {
  SpectralField out = f;
  const double a = f.box().viscosity * f.box().stokes_factor() * tau;
  out.transform([&](const Mode& k, ModeArray<3>::Entry& e) {
    const double d = std::exp(-a * mode_sq(k));
    for (auto& z : e) z *= d;
  });
  out.set_divergence_free(f.divergence_free());
  return out;
}

struct Stepper {
  const Forcing& forcing;
  const SolverConfig& cfg;
  const BoxSpec& box;

  // Projected non-stiff right-hand side P P_m (f - B(u,u)).
  SpectralField nonstiff(const SpectralField& u, double t) const {
    SpectralField r = forcing.at(t, box, cfg.truncation);
    if (!cfg.disable_nonlinear) r -= convective_term(u, cfg.truncation);
    return leray_project(r);
  }

  // One integrating-factor RK4 step of width h.
  SpectralField step(const SpectralField& u, double t, double h) const {
    const SpectralField k1 = nonstiff(u, t);

    SpectralField ua = u;
    ua.axpy(0.5 * h, k1);
    ua = viscous_decay(ua, 0.5 * h);
    const SpectralField k2 = nonstiff(ua, t + 0.5 * h);

    const SpectralField uh2 = viscous_decay(u, 0.5 * h);
    SpectralField ub = uh2;
    ub.axpy(0.5 * h, k2);
    const SpectralField k3 = nonstiff(ub, t + 0.5 * h);

    SpectralField uc = viscous_decay(uh2, 0.5 * h);
    uc.axpy(h, viscous_decay(k3, 0.5 * h));
    const SpectralField k4 = nonstiff(uc, t + h);

    SpectralField out = viscous_decay(uh2, 0.5 * h);
    out.axpy(h / 6.0, viscous_decay(k1, h));
    out.axpy(h / 3.0, viscous_decay(k2, 0.5 * h));
    out.axpy(h / 3.0, viscous_decay(k3, 0.5 * h));
    out.axpy(h / 6.0, k4);
    return leray_project(out);
  }

  // Advance concretely from t to t+dt.  With adapt == 0 this is one step;
  // otherwise substeps are halved until the step-doubling error estimate
  // meets the target.
  SpectralField advance(const SpectralField& u0, double t, double dt) const {
    if (cfg.adapt == 0.0) return step(u0, t, dt);
    SpectralField u = u0;
    double done = 0.0;
    double h = dt;
    const double alpha = box.alpha;
    while (done < dt - 1e-15 * dt) {
      h = std::min(h, dt - done);
      const SpectralField coarse = step(u, t + done, h);
      SpectralField fine = step(u, t + done, 0.5 * h);
      fine = step(fine, t + done + 0.5 * h, 0.5 * h);
      const double scale = std::max(1.0, hs_norm(fine, alpha));
      const double err = hs_norm(fine - coarse, alpha) / scale;
      if (err > cfg.adapt && h > dt / 64.0) {
        h *= 0.5;  // reject and retry shorter
        continue;
      }
      u = fine;
      done += h;
      if (err < 0.03 * cfg.adapt) h = std::min(2.0 * h, dt);
    }
    return u;
  }
};

DiagnosticsSample make_sample(const SpectralField& u, double t, const Stepper& st) {
  const BoxSpec& box = u.box();
  const double lam = box.stokes_factor();
  DiagnosticsSample s;
  s.t = t;
  s.norm_alpha = hs_norm(u, box.alpha);
  s.norm_alpha_plus_1 = hs_norm(u, box.alpha + 1.0);
  s.x = 0.5 * s.norm_alpha * s.norm_alpha;
  s.y = lam * s.norm_alpha_plus_1 * s.norm_alpha_plus_1;
  s.u = std::pow(lp_norm(gradient(u), 3.0 / (2.0 - box.alpha), st.cfg.oversample), 4.0);
  s.h = st.forcing.sq_norm_at(t, box.alpha - 1.0);

  // Instantaneous defect of the energy balance
  //   d/dt (1/2 |u|_0^2) + nu (4pi^2/L^2) |u|_1^2 = <f, u>_0,
  // an identity for the projected system; the time derivative comes from the
  // computed right-hand side, so the residual isolates operator-level error.
  const SpectralField fm = st.forcing.at(t, box, st.cfg.truncation);
  SpectralField udot = st.nonstiff(u, t);
  udot.axpy(-box.viscosity, stokes_power(u, 1.0));
  s.energy_residual = hs_inner(udot, u, 0.0) +
                      box.viscosity * lam * hs_norm_sq(u, 1.0) -
                      hs_inner(fm, u, 0.0);
  return s;
}

}  // namespace

SpectralField heat_evolve(const SpectralField& u0, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("heat_evolve: t must be >= 0");
  return viscous_decay(u0, t);
}

Trajectory integrate(const SpectralField& u0, const Forcing& forcing,
                     const SolverConfig& cfg, const BoxSpec& box,
                     const SampleHook& hook) {
  box.validate();
  cfg.validate();
  if (!u0.box().same_geometry(box))
    throw std::invalid_argument("integrate: datum box length mismatch");
  if (const BoxSpec* fb = forcing.box_or_null(); fb && !fb->same_geometry(box))
    throw std::invalid_argument("integrate: forcing box length mismatch");

  Trajectory traj;
  traj.box = box;
  traj.config = cfg;
  traj.forcing = forcing;

  SpectralField u = leray_project(project_to(u0, cfg.truncation));
  // carry the run's box parameters (nu, alpha may differ from the datum file's)
  if (!(u.box() == box)) {
    SpectralField rebox(box, cfg.truncation);
    for (std::size_t i = 0; i < u.stored_count(); ++i) rebox.slot(i) = u.slot(i);
    rebox.set_divergence_free(true);
    u = rebox;
  }
  traj.initial = u;

  const double n0 = hs_norm(u, box.alpha);
  traj.blowup_threshold = cfg.blowup_factor * (n0 > 0.0 ? n0 : 1.0);

  const Stepper st{forcing, cfg, box};
  const long nsteps = std::lround(std::ceil(cfg.t_end / cfg.dt - 1e-9));

  auto emit = [&](const SpectralField& state, double t) {
    DiagnosticsSample s = make_sample(state, t, st);
    traj.samples.push_back(s);
    if (cfg.store_snapshots) traj.snapshots.push_back(state);
    if (hook) hook(s, state);
    return s;
  };

  emit(u, 0.0);
  traj.stop_time = 0.0;

  for (long i = 1; i <= nsteps; ++i) {
    const double t_prev = (i - 1) * cfg.dt;
    const double t_now = std::min(double(i) * cfg.dt, cfg.t_end);
    u = st.advance(u, t_prev, t_now - t_prev);

    if (!u.finite()) {
      traj.status = RunStatus::step_failure;
      return traj;  // last good state is the one already sampled
    }
    traj.stop_time = t_now;

    if (i % cfg.sample_every == 0 || i == nsteps) {
      const DiagnosticsSample s = emit(u, t_now);
      if (s.norm_alpha > traj.blowup_threshold) {
        traj.status = RunStatus::norm_exceeded;
        return traj;
      }
    }
  }
  traj.status = RunStatus::completed;
  return traj;
}

Trajectory difference_trajectory(const Trajectory& tu, const Trajectory& tv) {
  if (!(tu.box == tv.box))
    throw std::invalid_argument("difference_trajectory: box mismatch");
  if (tu.config.truncation != tv.config.truncation)
    throw std::invalid_argument("difference_trajectory: truncation mismatch");
  if (tu.snapshots.size() != tu.samples.size() ||
      tv.snapshots.size() != tv.samples.size())
    throw std::invalid_argument("difference_trajectory: runs must store snapshots");
  const std::size_t n = std::min(tu.samples.size(), tv.samples.size());
  for (std::size_t i = 0; i < n; ++i)
    if (tu.samples[i].t != tv.samples[i].t)
      throw std::invalid_argument("difference_trajectory: sample grids differ");

  Trajectory out;
  out.box = tu.box;
  out.config = tu.config;
  out.status = tu.status == RunStatus::completed ? tv.status : tu.status;
  out.blowup_threshold = tu.blowup_threshold;
  out.forcing = tu.forcing.difference(tv.forcing);
  const double lam = out.box.stokes_factor();
  const double alpha = out.box.alpha;

  for (std::size_t i = 0; i < n; ++i) {
    SpectralField w = tu.snapshots[i];
    w -= tv.snapshots[i];
    if (i == 0) out.initial = w;

    DiagnosticsSample s;
    s.t = tu.samples[i].t;
    s.norm_alpha = hs_norm(w, alpha);
    s.norm_alpha_plus_1 = hs_norm(w, alpha + 1.0);
    s.x = 0.5 * s.norm_alpha * s.norm_alpha;
    s.y = lam * s.norm_alpha_plus_1 * s.norm_alpha_plus_1;
    s.u = tu.samples[i].u;  // reference-run gradient diagnostic
    s.h = out.forcing.sq_norm_at(s.t, alpha - 1.0);
    out.samples.push_back(s);
    out.snapshots.push_back(std::move(w));
    out.stop_time = s.t;
  }
  return out;
}

SpectralField galerkin_residual(const SpectralField& u_n, int n) {
  if (n < 1) throw std::invalid_argument("galerkin_residual: n must be >= 1");
  if (u_n.truncation() > n)
    throw std::invalid_argument("galerkin_residual: field wider than its cube");
  const int out_m = 2 * u_n.truncation();
  if (out_m <= n) {
    SpectralField zero(u_n.box(), 1);
    return zero;  // product support never leaves the cube
  }
  return high_pass(nonlinear_term(u_n, u_n, out_m), n);
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  std::string csv = "t,X,Y,U,H,energy_residual,norm_alpha,norm_alpha_plus_1\n";
  char line[512];
  for (const auto& s : traj.samples) {
    std::snprintf(line, sizeof(line),
                  "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", s.t, s.x, s.y,
                  s.u, s.h, s.energy_residual, s.norm_alpha, s.norm_alpha_plus_1);
    csv += line;
  }
  atomic_write_file(path, csv);
}

nlohmann::ordered_json trajectory_manifest(const Trajectory& traj,
                                           const nlohmann::ordered_json& table_snapshot) {
  nlohmann::ordered_json j;
  j["box"] = {{"length", traj.box.length},
              {"viscosity", traj.box.viscosity},
              {"alpha", traj.box.alpha}};
  j["config"] = {{"truncation", traj.config.truncation},
                 {"low_cutoff", traj.config.low_cutoff},
                 {"dt", traj.config.dt},
                 {"t_end", traj.config.t_end},
                 {"adapt", traj.config.adapt},
                 {"oversample", traj.config.oversample},
                 {"sample_every", traj.config.sample_every},
                 {"blowup_factor", traj.config.blowup_factor},
                 {"store_snapshots", traj.config.store_snapshots},
                 {"disable_nonlinear", traj.config.disable_nonlinear}};
  j["status"] = run_status_name(traj.status);
  j["stop_time"] = traj.stop_time;
  j["blowup_threshold"] = traj.blowup_threshold;
  j["samples"] = traj.samples.size();
  if (!table_snapshot.is_null()) j["constant_table"] = table_snapshot;
  return j;
}

}  // namespace nsbox
