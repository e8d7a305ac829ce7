#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace nsbox {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Integer wavevector on the periodic box.
using Mode = std::array<int, 3>;

inline double mode_sq(const Mode& k) {
  return double(k[0]) * k[0] + double(k[1]) * k[1] + double(k[2]) * k[2];
}

// Geometry and fluid parameters shared by every field and operator.
// length is the box side L, viscosity is nu, alpha the regularity index
// of the space the certificates live in.
struct BoxSpec {
  double length = kTwoPi;
  double viscosity = 1.0;
  double alpha = 0.5;

  void validate() const {
    if (!(length > 0.0)) throw std::invalid_argument("BoxSpec: length must be positive");
    if (!(viscosity > 0.0)) throw std::invalid_argument("BoxSpec: viscosity must be positive");
    if (!(alpha >= 0.5 && alpha <= 1.0))
      throw std::invalid_argument("BoxSpec: alpha must lie in [1/2, 1]");
  }

  // Per-mode Stokes eigenvalue is stokes_factor() * |k|^2.
  double stokes_factor() const {
    const double w = kTwoPi / length;
    return w * w;
  }

  bool same_geometry(const BoxSpec& o) const { return length == o.length; }
  bool operator==(const BoxSpec&) const = default;
};

}  // namespace nsbox
