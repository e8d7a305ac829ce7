#pragma once

// Shared fixtures: deterministic random fields and brute-force convolution
// oracles the fast spectral products are pinned against.

#include <cmath>
#include <complex>
#include <random>

#include "nsbox/field.hpp"
#include "nsbox/ops.hpp"

namespace nsbox::testing {

inline bool rel_close(double a, double b, double tol) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) <= tol * scale;
}

// Gaussian coefficients damped by |k|^{-decay}; not divergence-free.
inline SpectralField random_field(const BoxSpec& box, int m, std::uint64_t seed,
                                  double decay = 2.0, double amplitude = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  SpectralField f(box, m);
  f.transform([&](const Mode& k, SpectralField::Entry& e) {
    const double damp = amplitude * std::pow(double(mode_sq(k)), -0.5 * decay);
    for (auto& z : e) z = damp * std::complex<double>(g(rng), g(rng));
  });
  return f;
}

inline SpectralField random_divfree_field(const BoxSpec& box, int m,
                                          std::uint64_t seed, double decay = 2.0,
                                          double amplitude = 1.0) {
  return leray_project(random_field(box, m, seed, decay, amplitude));
}

inline ScalarModes random_scalar(const BoxSpec& box, int m, std::uint64_t seed,
                                 double decay = 2.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  ScalarModes f(box, m);
  f.transform([&](const Mode& k, ScalarModes::Entry& e) {
    const double damp = std::pow(double(mode_sq(k)), -0.5 * decay);
    e[0] = damp * std::complex<double>(g(rng), g(rng));
  });
  return f;
}

// Field with support {k, -k} only.
inline SpectralField single_mode_field(const BoxSpec& box, int m, const Mode& k,
                                       const std::array<std::complex<double>, 3>& c) {
  SpectralField f(box, m);
  f.set_coeff(k, c);
  return f;
}

// Direct O(m^6) convolution of (a . grad) b, no dealiasing shortcuts.
inline SpectralField oracle_advect(const SpectralField& a, const SpectralField& b,
                                   int out_m) {
  SpectralField out(a.box(), out_m);
  const double w = kTwoPi / a.box().length;
  const int mb = b.truncation();
  const std::complex<double> iw(0.0, w);
  out.transform([&](const Mode& k, SpectralField::Entry& e) {
    for (int q1 = -mb; q1 <= mb; ++q1)
      for (int q2 = -mb; q2 <= mb; ++q2)
        for (int q3 = -mb; q3 <= mb; ++q3) {
          const Mode q{q1, q2, q3};
          const Mode p{k[0] - q1, k[1] - q2, k[2] - q3};
          if (!a.in_cube(p)) continue;
          const auto ap = a.coeff_or_zero(p);
          const auto bq = b.coeff_or_zero(q);
          const std::complex<double> adotq =
              ap[0] * double(q1) + ap[1] * double(q2) + ap[2] * double(q3);
          const std::complex<double> factor = iw * adotq;
          for (int c = 0; c < 3; ++c) e[c] += factor * bq[c];
        }
  });
  return out;
}

// Direct convolution of the tensor coefficients (u (x) u)_k.
inline MatrixModes oracle_tensor(const SpectralField& u) {
  MatrixModes out(u.box(), 2 * u.truncation());
  const int m = u.truncation();
  out.transform([&](const Mode& k, MatrixModes::Entry& e) {
    for (int q1 = -m; q1 <= m; ++q1)
      for (int q2 = -m; q2 <= m; ++q2)
        for (int q3 = -m; q3 <= m; ++q3) {
          const Mode q{q1, q2, q3};
          const Mode p{k[0] - q1, k[1] - q2, k[2] - q3};
          if (!u.in_cube(p)) continue;
          const auto up = u.coeff_or_zero(p);
          const auto uq = u.coeff_or_zero(q);
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) e[i * 3 + j] += up[i] * uq[j];
        }
  });
  return out;
}

inline double max_coeff_distance(const ModeArray<3>& a, const ModeArray<3>& b) {
  double worst = 0.0;
  a.for_each([&](const Mode& k, const ModeArray<3>::Entry& ea) {
    const auto eb = b.coeff_or_zero(k);
    for (int c = 0; c < 3; ++c) worst = std::max(worst, std::abs(ea[c] - eb[c]));
  });
  b.for_each([&](const Mode& k, const ModeArray<3>::Entry& eb) {
    const auto ea = a.coeff_or_zero(k);
    for (int c = 0; c < 3; ++c) worst = std::max(worst, std::abs(ea[c] - eb[c]));
  });
  return worst;
}

}  // namespace nsbox::testing
