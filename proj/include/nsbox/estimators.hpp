#pragma once

#include <cstdint>
#include <vector>

#include "nsbox/field.hpp"

namespace nsbox {

// Rayleigh ratio |f|_{L^{beta*}(Q_2pi)} / |f|_{beta,2pi} of a zero-mean
// scalar field on the 2pi box.  Exposed so tests can pin it against
// closed-form candidates.
double sobolev_ratio(const ScalarModes& f, double beta, int oversample = 3);

// Best ratio over a deterministic seed-indexed candidate stream (random
// draws interleaved with perturbative ascent around the incumbent).  budget
// counts ratio evaluations, so the result is nondecreasing in budget and
// bit-reproducible for a fixed (beta, seed, oversample).
double estimate_sobolev_constant(double beta, int budget, std::uint64_t seed,
                                 int oversample = 3);

// Quotient defining the space-time interpolation constant, for a field with
// quadratic-in-time coefficients f(t) = c0 + c1 (t/T) + c2 (t/T)^2:
//   |grad f|_{L^4(0,T; L^{3/(2-alpha)}(Q_2pi))}
//   -----------------------------------------------------------------
//   |f|^{1/2}_{L^inf(0,T; H^alpha)} |f|^{1/2}_{L^2(0,T; H^{1+alpha})}
// Time integrals by composite Simpson on time_nodes points.
double interp_ratio(const std::vector<SpectralField>& time_poly, double alpha,
                    double horizon, int oversample = 3, int time_nodes = 9);

// Same search contract as estimate_sobolev_constant, over time-polynomial
// vector candidates.
double estimate_interp_constant(double alpha, double horizon, int budget,
                                std::uint64_t seed, int oversample = 3);

}  // namespace nsbox
