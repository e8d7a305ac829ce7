#pragma once

#include <string>

#include "nsbox/field.hpp"

namespace nsbox {

// Binary snapshot: little-endian header {magic "NSCF", version u32, L f64,
// m u32, flags u32 (bit 0 = divergence-free)} followed by the stored-half
// coefficients as complex f64 triples in lexicographic (k1,k2,k3) order.
void save_field(const std::string& path, const SpectralField& f);

// Plain-text alternative for small fields / debugging.
void save_field_json(const std::string& path, const SpectralField& f);

// Reads either format (sniffs the magic).  Viscosity and alpha are run
// parameters, not snapshot data, so the caller supplies them.
SpectralField load_field(const std::string& path, double viscosity, double alpha);

}  // namespace nsbox
