#pragma once

#include <cmath>

#include "nsbox/field.hpp"

namespace nsbox {

// Homogeneous Sobolev seminorm |u|_{s,L} = (sum_{k!=0} |k|^{2s} |u_k|^2)^{1/2}.
// The weight is dimensionless; box geometry enters only through the Stokes
// factors applied elsewhere.
template <int NC>
double hs_norm_sq(const ModeArray<NC>& f, double s) {
  KahanSum acc;
  f.for_each([&](const Mode& k, const typename ModeArray<NC>::Entry& e) {
    const double w = std::pow(mode_sq(k), s);
    double a = 0.0;
    for (int c = 0; c < NC; ++c) a += std::norm(e[c]);
    acc.add(w * a);
  });
  return 2.0 * acc.value();
}

template <int NC>
double hs_norm(const ModeArray<NC>& f, double s) {
  return std::sqrt(hs_norm_sq(f, s));
}

namespace detail {
// Weighted pairing sum_k |k|^{2s} a_k . conj(b_k); real by the reality
// invariant.  Different truncations are allowed (zero padding is silent).
template <int NC>
double weighted_inner(const ModeArray<NC>& a, const ModeArray<NC>& b, double s) {
  if (!(a.box() == b.box()))
    throw std::invalid_argument("inner product: box parameters do not match");
  const ModeArray<NC>& big = a.truncation() >= b.truncation() ? a : b;
  const ModeArray<NC>& small = a.truncation() >= b.truncation() ? b : a;
  const bool swapped = a.truncation() < b.truncation();
  KahanSum acc;
  big.for_each([&](const Mode& k, const typename ModeArray<NC>::Entry& eb) {
    const auto es = small.coeff_or_zero(k);
    const double w = std::pow(mode_sq(k), s);
    double re = 0.0;
    for (int c = 0; c < NC; ++c) {
      const Cplx& x = swapped ? es[c] : eb[c];
      const Cplx& y = swapped ? eb[c] : es[c];
      re += x.real() * y.real() + x.imag() * y.imag();
    }
    acc.add(w * re);
  });
  return 2.0 * acc.value();
}
}  // namespace detail

template <int NC>
double hs_inner(const ModeArray<NC>& a, const ModeArray<NC>& b, double s) {
  return detail::weighted_inner(a, b, s);
}

// Pairing with weight |k|^alpha on a and |k|^beta on b; bounded by
// |a|_{alpha+t} |b|_{beta-t} for any split t (Cauchy-Schwarz).
template <int NC>
double duality_inner(const ModeArray<NC>& a, const ModeArray<NC>& b, double alpha,
                     double beta) {
  return detail::weighted_inner(a, b, 0.5 * (alpha + beta));
}

// Coefficient-wise multiplication by lambda_k^a, lambda_k = (4pi^2/L^2)|k|^2.
SpectralField stokes_power(const SpectralField& f, double a);

// u_k -> u_k - (k.u_k) k / |k|^2; output flagged divergence-free.
SpectralField leray_project(const SpectralField& f);

// Per-mode differentiation: (grad u)_k[i*3+j] = i(2pi/L) k_j u_k[i].
MatrixModes gradient(const ModeArray<3>& f);

// (div u)_k = i(2pi/L) k . u_k.
ScalarModes divergence(const SpectralField& f);

// Largest |k . u_k| over stored modes; a drift monitor for the flag.
double max_divergence(const SpectralField& f);

// Componentwise cutoff |k_i| <= k0; low_pass + high_pass = identity.
SpectralField low_pass(const SpectralField& f, int k0);
SpectralField high_pass(const SpectralField& f, int k0);

// Same field on the box of side delta*L; coefficients are untouched.
SpectralField dilate(const SpectralField& f, double delta);

// Copy into a different mode cube.  Growing pads with zeros; shrinking
// requires that no dropped coefficient is nonzero unless allow_drop is set.
SpectralField retruncate(const SpectralField& f, int new_truncation,
                         bool allow_drop = false);

// P_m f as a field stored on the cube of half-width m (band projection plus
// storage resize in one go).
SpectralField project_to(const SpectralField& f, int truncation);

// An L0-periodic field viewed on the box of side ratio*L0: coefficients land
// at index multiples of ratio, everything in between is zero.
SpectralField tile_field(const SpectralField& f, int ratio);

}  // namespace nsbox
