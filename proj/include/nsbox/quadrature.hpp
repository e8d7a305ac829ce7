#pragma once

#include "nsbox/transform.hpp"

namespace nsbox {

// L^p norm over the box by uniform-grid quadrature, weight (L/N)^3 per
// point.  Pointwise magnitude is Euclidean over the components, i.e. the
// Frobenius norm for matrix-valued integrands.  Exact for band-limited
// integrands when p is an even integer and the grid resolves |f|^p;
// otherwise an oversample-controlled approximation.
template <int NC>
double lp_norm(const PhysicalSample<NC>& s, double p);

template <int NC>
double lp_norm(const ModeArray<NC>& f, double p, int oversample = 3);

extern template double lp_norm(const PhysicalSample<1>&, double);
extern template double lp_norm(const PhysicalSample<3>&, double);
extern template double lp_norm(const PhysicalSample<9>&, double);
extern template double lp_norm(const ModeArray<1>&, double, int);
extern template double lp_norm(const ModeArray<3>&, double, int);
extern template double lp_norm(const ModeArray<9>&, double, int);

}  // namespace nsbox
