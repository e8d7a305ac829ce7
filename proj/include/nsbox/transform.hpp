#pragma once

#include <cstddef>
#include <vector>

#include "nsbox/field.hpp"

namespace nsbox {

// Smallest n >= atleast whose prime factors are in {2,3,5}.
int good_fft_size(int atleast);

namespace detail {
// In-place 3D c2c transform of an n^3 cube, sign = -1 forward / +1 backward
// (unnormalized, matching the usual e^{sign * i k.x} convention).
void fft3(Cplx* data, int n, int sign);
}  // namespace detail

// Real-space samples of a band-limited field on the uniform n^3 grid
// x_j = j*L/n.  Component-major layout: values[c*n^3 + idx] with
// idx = (ix*n + iy)*n + iz.
template <int NC>
struct PhysicalSample {
  BoxSpec box;
  int grid_n = 0;
  std::vector<double> values;

  std::size_t points() const { return std::size_t(grid_n) * grid_n * grid_n; }

  double value_sq(std::size_t point) const {
    double s = 0.0;
    const std::size_t np = points();
    for (int c = 0; c < NC; ++c) {
      const double v = values[std::size_t(c) * np + point];
      s += v * v;
    }
    return s;
  }
};

// Exact pointwise evaluation by zero-padded inverse FFT.  grid_n must be at
// least 2m+2 so every stored mode maps to a distinct grid frequency.
template <int NC>
PhysicalSample<NC> sample_physical(const ModeArray<NC>& f, int grid_n);

extern template PhysicalSample<1> sample_physical(const ModeArray<1>&, int);
extern template PhysicalSample<3> sample_physical(const ModeArray<3>&, int);
extern template PhysicalSample<9> sample_physical(const ModeArray<9>&, int);

}  // namespace nsbox
