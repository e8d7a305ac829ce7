#pragma once

#include <optional>
#include <vector>

#include "nsbox/field.hpp"

namespace nsbox {

// Time-dependent right-hand side.  Three shapes cover the artifact's needs:
// zero, coefficient fields with polynomial time amplitudes
// f(t) = sum_p F_p (t/t_scale)^p, and a snapshot sequence interpolated
// linearly in time.  Fields are Leray-projected on construction (the data
// class the stability theory assumes is divergence-free).
class Forcing {
 public:
  Forcing() = default;  // zero

  static Forcing zero() { return Forcing(); }
  static Forcing constant(SpectralField f);
  static Forcing polynomial(std::vector<SpectralField> coeffs, double t_scale);
  static Forcing snapshots(std::vector<double> times, std::vector<SpectralField> fields);

  bool is_zero() const { return kind_ == Kind::zero; }

  // P_trunc f(t) on the given cube (pads or drops silently).
  SpectralField at(double t, const BoxSpec& box, int truncation) const;

  // |f(t)|_{s,L}^2 over the full stored support.
  double sq_norm_at(double t, double s) const;

  // Exact int_{t0}^{t1} |f(t)|_{s,L}^2 dt (the integrand is polynomial in t
  // for every representation, so no quadrature error enters certificates).
  double integral_sq_norm(double t0, double t1, double s) const;

  // f - g as a new forcing.  Supported shape pairs: either side zero,
  // poly-poly with equal t_scale, snap-snap on the identical time grid.
  // Anything else throws rather than silently approximating.
  Forcing difference(const Forcing& g) const;

  const BoxSpec* box_or_null() const;
  int max_truncation() const;

 private:
  enum class Kind { zero, poly, snap };
  Kind kind_ = Kind::zero;
  // poly: coeffs_[p] multiplies (t/t_scale_)^p.  snap: times_/coeffs_ pairs.
  std::vector<SpectralField> coeffs_;
  std::vector<double> times_;
  double t_scale_ = 1.0;

  SpectralField value_at(double t) const;
};

}  // namespace nsbox
