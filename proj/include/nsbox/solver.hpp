#pragma once

#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nsbox/field.hpp"
#include "nsbox/forcing.hpp"

namespace nsbox {

struct SolverConfig {
  int truncation = 8;   // Galerkin cube half-width m
  int low_cutoff = 1;   // k0 for low/high frequency splits
  double dt = 1e-3;
  double t_end = 1.0;
  double adapt = 0.0;   // > 0: per-step local error target (substep halving)
  int oversample = 3;   // quadrature factor for the L^p gradient diagnostic
  int sample_every = 10;
  double blowup_factor = 1e3;  // escape threshold relative to |u0|_alpha
  bool store_snapshots = false;
  bool disable_nonlinear = false;  // pure Stokes/heat mode for validation

  void validate() const;
};

struct DiagnosticsSample {
  double t = 0.0;
  double x = 0.0;  // 1/2 |w|_{alpha}^2
  double y = 0.0;  // (4pi^2/L^2) |w|_{alpha+1}^2
  double u = 0.0;  // |grad u_ref|^4 in L^{3/(2-alpha)}
  double h = 0.0;  // |h(t)|_{alpha-1}^2
  double energy_residual = 0.0;
  double norm_alpha = 0.0;
  double norm_alpha_plus_1 = 0.0;
};

enum class RunStatus { completed, norm_exceeded, step_failure };
std::string run_status_name(RunStatus s);

struct Trajectory {
  BoxSpec box;
  SolverConfig config;
  RunStatus status = RunStatus::completed;
  double stop_time = 0.0;
  double blowup_threshold = 0.0;
  SpectralField initial;
  Forcing forcing;
  std::vector<DiagnosticsSample> samples;
  std::vector<SpectralField> snapshots;  // sample-aligned when store_snapshots
};

// Exact per-mode viscous decay u_k(0) exp(-nu lambda_k t).
SpectralField heat_evolve(const SpectralField& u0, double t);

// Called at every diagnostic sample with the current state; lets callers
// accumulate derived quantities (residual tails etc.) without storing fields.
using SampleHook = std::function<void(const DiagnosticsSample&, const SpectralField&)>;

// Advance the truncated system
//   du/dt + nu A u + P P_m B(u,u) = P P_m f
// with the viscous part integrated exactly per mode and the rest by RK4 on
// the integrating-factor-transformed variable.  Every stage is projected;
// the run stops early on norm escape or nonfinite state.
Trajectory integrate(const SpectralField& u0, const Forcing& forcing,
                     const SolverConfig& cfg, const BoxSpec& box,
                     const SampleHook& hook = {});

// Per-sample diagnostics of w = u - v: X, Y from the stored snapshots, U
// copied from the reference run u, H from the forcing difference f - g.
// Both inputs must carry snapshots on identical sample grids.
Trajectory difference_trajectory(const Trajectory& u, const Trajectory& v);

// Tail of the quadratic term outside the computing cube: the part of
// B(u_n, u_n) the truncated system never sees, exact on modes up to 2n.
SpectralField galerkin_residual(const SpectralField& u_n, int n);

void write_trajectory_csv(const std::string& path, const Trajectory& traj);

nlohmann::ordered_json trajectory_manifest(
    const Trajectory& traj,
    const nlohmann::ordered_json& table_snapshot = nlohmann::ordered_json());

}  // namespace nsbox
