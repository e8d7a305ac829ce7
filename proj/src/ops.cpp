#include "nsbox/ops.hpp"

#include <algorithm>

namespace nsbox {

SpectralField stokes_power(const SpectralField& f, double a) {
  SpectralField out = f;
  const double fac = std::pow(f.box().stokes_factor(), a);
  out.transform([&](const Mode& k, ModeArray<3>::Entry& e) {
    const double w = fac * std::pow(mode_sq(k), a);
    for (auto& z : e) z *= w;
  });
  return out;
}

SpectralField leray_project(const SpectralField& f) {
  SpectralField out = f;
  out.transform([](const Mode& k, ModeArray<3>::Entry& e) {
    const double kk = mode_sq(k);
    const Cplx kdot = double(k[0]) * e[0] + double(k[1]) * e[1] + double(k[2]) * e[2];
    const Cplx s = kdot / kk;
    for (int i = 0; i < 3; ++i) e[i] -= s * double(k[i]);
  });
  out.set_divergence_free(true);
  return out;
}

MatrixModes gradient(const ModeArray<3>& f) {
  MatrixModes out(f.box(), f.truncation());
  const double w = kTwoPi / f.box().length;
  for (std::size_t i = 0; i < f.stored_count(); ++i) {
    const Mode k = f.slot_mode(i);
    const auto& u = f.slot(i);
    auto& g = out.slot(i);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) g[a * 3 + b] = Cplx(0.0, w * k[b]) * u[a];
  }
  return out;
}

ScalarModes divergence(const SpectralField& f) {
  ScalarModes out(f.box(), f.truncation());
  const double w = kTwoPi / f.box().length;
  for (std::size_t i = 0; i < f.stored_count(); ++i) {
    const Mode k = f.slot_mode(i);
    const auto& u = f.slot(i);
    const Cplx kdot = double(k[0]) * u[0] + double(k[1]) * u[1] + double(k[2]) * u[2];
    out.slot(i)[0] = Cplx(0.0, w) * kdot;
  }
  return out;
}

double max_divergence(const SpectralField& f) {
  double worst = 0.0;
  f.for_each([&](const Mode& k, const ModeArray<3>::Entry& u) {
    const Cplx kdot = double(k[0]) * u[0] + double(k[1]) * u[1] + double(k[2]) * u[2];
    worst = std::max(worst, std::abs(kdot));
  });
  return worst;
}

SpectralField low_pass(const SpectralField& f, int k0) {
  if (k0 < 1) throw std::invalid_argument("low_pass: cutoff must be >= 1");
  SpectralField out = f;
  out.transform([&](const Mode& k, ModeArray<3>::Entry& e) {
    if (std::abs(k[0]) > k0 || std::abs(k[1]) > k0 || std::abs(k[2]) > k0)
      e = ModeArray<3>::Entry{};
  });
  return out;
}

SpectralField high_pass(const SpectralField& f, int k0) {
  if (k0 < 1) throw std::invalid_argument("high_pass: cutoff must be >= 1");
  SpectralField out = f;
  out.transform([&](const Mode& k, ModeArray<3>::Entry& e) {
    if (std::abs(k[0]) <= k0 && std::abs(k[1]) <= k0 && std::abs(k[2]) <= k0)
      e = ModeArray<3>::Entry{};
  });
  return out;
}

SpectralField dilate(const SpectralField& f, double delta) {
  if (!(delta > 0.0)) throw std::invalid_argument("dilate: delta must be positive");
  BoxSpec b = f.box();
  b.length *= delta;
  SpectralField out(b, f.truncation());
  for (std::size_t i = 0; i < f.stored_count(); ++i) out.slot(i) = f.slot(i);
  out.set_divergence_free(f.divergence_free());
  return out;
}

SpectralField tile_field(const SpectralField& f, int ratio) {
  if (ratio < 1) throw std::invalid_argument("tile_field: ratio must be >= 1");
  BoxSpec big = f.box();
  big.length *= ratio;
  SpectralField out(big, ratio * f.truncation());
  out.set_divergence_free(f.divergence_free());
  f.for_each([&](const Mode& k, const ModeArray<3>::Entry& e) {
    out.set_coeff(Mode{ratio * k[0], ratio * k[1], ratio * k[2]}, e);
  });
  return out;
}

SpectralField project_to(const SpectralField& f, int truncation) {
  if (truncation >= f.truncation()) return retruncate(f, truncation);
  return retruncate(low_pass(f, truncation), truncation, true);
}

SpectralField retruncate(const SpectralField& f, int new_truncation, bool allow_drop) {
  SpectralField out(f.box(), new_truncation);
  out.set_divergence_free(f.divergence_free());
  if (new_truncation >= f.truncation()) {
    f.for_each([&](const Mode& k, const ModeArray<3>::Entry& e) { out.set_coeff(k, e); });
    return out;
  }
  f.for_each([&](const Mode& k, const ModeArray<3>::Entry& e) {
    if (out.in_cube(k)) {
      out.set_coeff(k, e);
    } else if (!allow_drop && (e[0] != 0.0 || e[1] != 0.0 || e[2] != 0.0)) {
      throw std::invalid_argument("retruncate: nonzero coefficient outside target cube");
    }
  });
  return out;
}

}  // namespace nsbox
