#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nsbox/bundle.hpp"
#include "nsbox/solver.hpp"

namespace nsbox {

// Splitting of the viscosity among the absorption steps.  Which partial sums
// must stay below nu depends on the statement being certified, so validation
// is per mode rather than in a constructor.
struct EpsilonBudget {
  double nu_bar = 0.0;
  double eps1 = 0.0;
  double eps2 = 0.0;
  double sigma = 0.5;  // caloric split of the dissipation
  double delta = 0.0;  // caloric exponential-decay margin

  static EpsilonBudget defaults(double nu);

  void require_proximity_mode(double nu) const;  // nu_bar + eps1 + eps2 < nu
  void require_smallness_mode(double nu) const;  // nu_bar + eps2 < nu
  void require_caloric_mode(double nu) const;    // eps1 + eps2 < nu, sigma in (0,1), delta > 0

  nlohmann::ordered_json to_json() const;
};

enum class Criterion { A1, A2, A3, A4, C, P1 };
std::string criterion_name(Criterion c);

struct CertificateReport {
  Criterion criterion = Criterion::A4;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;   // rhs - lhs, recorded even on failure
  bool passed = false;   // lhs < rhs, strictly; ties fail
  nlohmann::ordered_json inputs;
  std::vector<std::string> caveats;

  nlohmann::ordered_json to_json() const;
};

// Trapezoid rule over the sample grid up to time T (linear interpolation
// into a partial last interval).  T must not exceed the last sample time.
double trapezoid_to(const std::vector<DiagnosticsSample>& samples,
                    double DiagnosticsSample::* field, double T);

// |a - b|_{s}^2 formed coefficient-wise (exact zero for identical data).
double datum_distance_sq(const SpectralField& a, const SpectralField& b, double s);

// ---- criteria -------------------------------------------------------------

// Smallness of the data alone:  |u0|_a^2 + K4 int |f|_{a-1}^2  <  (nu_bar/K2)^2.
CertificateReport check_smallness_A4(const SpectralField& u0, const Forcing& f,
                                     double T, const ConstantBundle& bundle,
                                     const EpsilonBudget& budget,
                                     const SobolevConstantTable* table = nullptr);

// Proximity of (v0, g) to a computed reference trajectory:
//   (|u0-v0|_a^2 + K4 int |f-g|_{a-1}^2) exp(K3 int U)  <  (nu_bar/K2)^2.
CertificateReport check_proximity_A1(const Trajectory& u_traj, const SpectralField& v0,
                                     const Forcing& g, double T,
                                     const ConstantBundle& bundle,
                                     const EpsilonBudget& budget,
                                     const SobolevConstantTable* table = nullptr);

// Same numerator with the cruder exponent built from interpolation:
//   exp(K3 C_I^4 (4pi^2/L^2)^{2(a-1)} sup|u|_a^2 int |u|_{1+a}^2).
CertificateReport check_proximity_A2(const Trajectory& u_traj, const SpectralField& v0,
                                     const Forcing& g, double T,
                                     const ConstantBundle& bundle,
                                     const EpsilonBudget& budget,
                                     const SobolevConstantTable* table = nullptr);

// Lifetime lower bound from the heat flow of the low frequencies.
struct CaloricResult {
  double t0 = 0.0;
  int k0_used = 0;
  double mu = 0.0;
  CertificateReport report;
};
CaloricResult caloric_lower_bound(const SpectralField& u0, int k0,
                                  const ConstantBundle& bundle,
                                  const EpsilonBudget& budget, double t_max,
                                  int resolution,
                                  const SobolevConstantTable* table = nullptr);

// A-posteriori certification from computed Galerkin runs over a resolution
// schedule; every n is evaluated (the certificate names the first pass).
struct ConditionCResult {
  std::vector<CertificateReport> reports;   // one per schedule entry
  std::vector<double> residual_integrals;   // int |tail|_{a-1}^2, per entry
  std::optional<int> granted_n;
};
ConditionCResult verify_condition_C(const SpectralField& u0, const Forcing& f, double T,
                                    const ConstantBundle& bundle,
                                    const EpsilonBudget& budget,
                                    const std::vector<int>& schedule,
                                    const SolverConfig& base,
                                    const SobolevConstantTable* table = nullptr);

// Per-sample closed-form bound on the difference diagnostics.
struct EnvelopeReport {
  std::vector<double> envelope;  // (X0 + K4 int H) exp(K3 int U) per sample
  std::vector<double> observed;  // X + mu int Y per sample
  std::vector<std::size_t> violations;
  double mu = 0.0;
  double tol = 0.0;
};
EnvelopeReport gronwall_envelope(const Trajectory& diff_traj,
                                 const ConstantBundle& bundle,
                                 const EpsilonBudget& budget, double tol = 0.05);

// Per-sample smallness propagation for a difference trajectory:
//   2 sup X + (nu - nu_bar - eps1 - eps2) int Y  <=  (nu_bar/K2)^2.
CertificateReport p1_check(const Trajectory& diff_traj, const ConstantBundle& bundle,
                           const EpsilonBudget& budget,
                           const SobolevConstantTable* table = nullptr);

// The analogous per-sample bound for a single small-data run (dissipation
// coefficient nu - nu_bar - eps2); used to audit A4 predictions.
struct BoundCheck {
  double worst_lhs = 0.0;
  double rhs = 0.0;
  std::size_t worst_index = 0;
  bool ok = false;
};
BoundCheck smallness_run_check(const Trajectory& traj, const ConstantBundle& bundle,
                                const EpsilonBudget& budget);

// Small-on-a-small-box criterion: L0 |u0|_{a,L0} < 2 pi nu_bar / (sqrt2 Cs Cs Cs),
// plus construction and verification of the L-periodic tiling.
CertificateReport check_corollary2(const SpectralField& u0, double length,
                                   const ConstantBundle& bundle_l0,
                                   const EpsilonBudget& budget,
                                   const SobolevConstantTable* table = nullptr);

// Batch index: one CSV row per certificate.
std::string certificates_index_csv(const std::vector<CertificateReport>& reports);

}  // namespace nsbox
