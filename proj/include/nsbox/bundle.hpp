#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "nsbox/field.hpp"
#include "nsbox/sobolev_table.hpp"

namespace nsbox {

// Two published factorizations of the stability constants exist; they agree
// for k3 and k4 but the compact closed form of k2 misses a (2pi)^-3 measure
// factor relative to the step-by-step assembly.  Both are computed; `variant`
// selects which k2/k3 the certificates consume (default: the larger, hence
// more conservative, closed form).
enum class BundleVariant { sec12, assembled };

std::string variant_name(BundleVariant v);
BundleVariant variant_from_name(const std::string& s);

struct ConstantBundle {
  double k2 = 0.0;
  double k3 = 0.0;
  double k4 = 0.0;
  double k_28 = 0.0;
  double k_29 = 0.0;
  std::optional<double> c_i;
  BundleVariant variant = BundleVariant::sec12;

  struct Inputs {
    double alpha = 0.0;
    double length = 0.0;
    double eps1 = 0.0;
    double eps2 = 0.0;
    double cs_one_minus_alpha = 0.0;
    double cs_one = 0.0;
    double cs_alpha_minus_half = 0.0;
  } inputs;

  // Both factorizations, kept for cross-checks and report provenance.
  double k2_sec12 = 0.0;
  double k2_assembled = 0.0;
  double k3_sec12 = 0.0;
  double k3_assembled = 0.0;

  nlohmann::ordered_json to_json() const;
};

// Pure function of (alpha, L, eps1, eps2) and the three table constants
// C_S(1-alpha), C_S(1), C_S(alpha-1/2); throws if any is missing.
ConstantBundle assemble_bundle(double alpha, double length, double eps1, double eps2,
                               const SobolevConstantTable& table,
                               BundleVariant variant = BundleVariant::sec12);

// sqrt(2) (4pi^2/L^2)^{alpha+1/2} |u_lo (x) u_lo|_{1+alpha,L}; the forcing-like
// term the low-frequency split contributes to the perturbed system.
double k5(const SpectralField& u_lo, double alpha);

}  // namespace nsbox
