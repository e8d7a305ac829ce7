#include "nsbox/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace nsbox {

template <int NC>
double lp_norm(const PhysicalSample<NC>& s, double p) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  const std::size_t np = s.points();
  KahanSum acc;
  if (p == 2.0) {
    for (std::size_t j = 0; j < np; ++j) acc.add(s.value_sq(j));
  } else {
    const double half_p = 0.5 * p;
    for (std::size_t j = 0; j < np; ++j) acc.add(std::pow(s.value_sq(j), half_p));
  }
  const double h = s.box.length / s.grid_n;
  return std::pow(h * h * h * acc.value(), 1.0 / p);
}

template <int NC>
double lp_norm(const ModeArray<NC>& f, double p, int oversample) {
  if (oversample < 2) throw std::invalid_argument("lp_norm: oversample must be >= 2");
  const int n = oversample * (2 * f.truncation() + 1);
  return lp_norm(sample_physical(f, n), p);
}

template double lp_norm(const PhysicalSample<1>&, double);
template double lp_norm(const PhysicalSample<3>&, double);
template double lp_norm(const PhysicalSample<9>&, double);
template double lp_norm(const ModeArray<1>&, double, int);
template double lp_norm(const ModeArray<3>&, double, int);
template double lp_norm(const ModeArray<9>&, double, int);

}  // namespace nsbox
