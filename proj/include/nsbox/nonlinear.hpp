#pragma once

#include "nsbox/field.hpp"

namespace nsbox {

// Exact Fourier coefficients of the transport term a . grad b on the cube
// |k_i| <= out_truncation.  Transforms are padded so no aliased wavenumber
// can land inside the output cube; out_truncation up to trunc(a)+trunc(b)
// is exact (the residual-tail use case needs 2m).
SpectralField nonlinear_term(const SpectralField& a, const SpectralField& b,
                             int out_truncation);

// div(u (x) u), valid when u is divergence-free (equals nonlinear_term(u,u)
// there, at 9 transforms instead of 15).  The integrator's workhorse.
SpectralField convective_term(const SpectralField& u, int out_truncation);

// Alias-free coefficients of the 9-component tensor square u (x) u on the
// cube |k_i| <= 2m.  The zero mode of the product is dropped (all stored
// arrays are zero-mean); homogeneous norms never see it.
MatrixModes tensor_square(const SpectralField& u);

// |u (x) u|_{s,L} from the exact convolution.
double tensor_product_norm(const SpectralField& u, double s);

}  // namespace nsbox
