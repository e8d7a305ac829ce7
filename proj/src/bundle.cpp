#include "nsbox/bundle.hpp"

#include <cmath>
#include <stdexcept>

#include "nsbox/nonlinear.hpp"

namespace nsbox {

std::string variant_name(BundleVariant v) {
  return v == BundleVariant::sec12 ? "sec12" : "assembled";
}

BundleVariant variant_from_name(const std::string& s) {
  if (s == "sec12") return BundleVariant::sec12;
  if (s == "assembled") return BundleVariant::assembled;
  throw std::invalid_argument("unknown bundle variant: " + s);
}

nlohmann::ordered_json ConstantBundle::to_json() const {
  nlohmann::ordered_json j;
  j["variant"] = variant_name(variant);
  j["k2"] = k2;
  j["k3"] = k3;
  j["k4"] = k4;
  j["k_28"] = k_28;
  j["k_29"] = k_29;
  if (c_i)
    j["c_i"] = *c_i;
  else
    j["c_i"] = nullptr;
  j["inputs"] = {{"alpha", inputs.alpha},
                 {"length", inputs.length},
                 {"eps1", inputs.eps1},
                 {"eps2", inputs.eps2},
                 {"cs_one_minus_alpha", inputs.cs_one_minus_alpha},
                 {"cs_one", inputs.cs_one},
                 {"cs_alpha_minus_half", inputs.cs_alpha_minus_half}};
  j["cross_check"] = {{"k2_sec12", k2_sec12},
                      {"k2_assembled", k2_assembled},
                      {"k3_sec12", k3_sec12},
                      {"k3_assembled", k3_assembled},
                      {"k2_ratio_assembled_over_sec12",
                       k2_sec12 > 0.0 ? k2_assembled / k2_sec12 : 0.0}};
  return j;
}

ConstantBundle assemble_bundle(double alpha, double length, double eps1, double eps2,
                               const SobolevConstantTable& table,
                               BundleVariant variant) {
  if (!(alpha >= 0.5 && alpha <= 1.0))
    throw std::invalid_argument("assemble_bundle: alpha outside [1/2, 1]");
  if (!(length > 0.0)) throw std::invalid_argument("assemble_bundle: bad length");
  if (!(eps1 > 0.0 && eps2 > 0.0))
    throw std::invalid_argument("assemble_bundle: eps1, eps2 must be positive");

  const double cs_1ma = table.effective(1.0 - alpha);
  const double cs_1 = table.effective(1.0);
  const double cs_amh = table.effective(alpha - 0.5);

  const double w = kTwoPi / length;           // 2pi/L
  const double lam = w * w;                   // 4pi^2/L^2
  const double two_pi_m3 = std::pow(kTwoPi, -3.0);

  ConstantBundle b;
  b.variant = variant;
  b.inputs = {alpha, length, eps1, eps2, cs_1ma, cs_1, cs_amh};

  // Stepwise product constants of the two embedding chains.
  b.k_28 = w * two_pi_m3 * cs_1ma * cs_1;
  b.k_29 = std::pow(w, alpha - 2.0) * cs_amh;

  b.k2_assembled = std::sqrt(2.0) * b.k_28 * b.k_29 * std::pow(lam, -0.5 * alpha);
  b.k2_sec12 = std::sqrt(2.0) * cs_1ma * cs_1 * cs_amh / w;

  b.k3_assembled = std::pow(eps1, -3.0) * (27.0 / 128.0) * std::pow(b.k_28, 4.0) *
                   std::pow(lam, -2.0 * alpha - 1.0) *
                   std::pow(1.0 + b.k_29 * std::pow(length, alpha - 2.0), 4.0);
  b.k3_sec12 = std::pow(eps1, -3.0) * (27.0 / 128.0) * std::pow(kTwoPi, -12.0) *
               std::pow(cs_1ma * cs_1, 4.0) * std::pow(w, 2.0 * (1.0 - 2.0 * alpha)) *
               std::pow(1.0 + cs_amh * std::pow(kTwoPi, alpha - 2.0), 4.0);

  b.k4 = (1.0 / (4.0 * eps2)) / lam;

  b.k2 = variant == BundleVariant::sec12 ? b.k2_sec12 : b.k2_assembled;
  b.k3 = variant == BundleVariant::sec12 ? b.k3_sec12 : b.k3_assembled;
  return b;
}

double k5(const SpectralField& u_lo, double alpha) {
  const double lam = u_lo.box().stokes_factor();
  return std::sqrt(2.0) * std::pow(lam, alpha + 0.5) *
         tensor_product_norm(u_lo, 1.0 + alpha);
}

}  // namespace nsbox
