#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nsbox/box.hpp"

namespace nsbox {

using Cplx = std::complex<double>;

// Band-limited coefficient array on the mode cube {|k_i| <= m}, NC complex
// components per mode.  Only half of the cube is stored: a mode is kept iff
// (k1,k2,k3) is lexicographically positive.  The mirror coefficient is the
// conjugate (real-valued field) and k=0 is identically zero (zero mean).
//
// Slot order equals lexicographic (k1,k2,k3) order over the stored half,
// which is also the order coefficient files use.
template <int NC>
class ModeArray {
 public:
  using Entry = std::array<Cplx, NC>;

  ModeArray() = default;

  ModeArray(const BoxSpec& box, int truncation) : box_(box), trunc_(truncation) {
    box_.validate();
    if (truncation < 1) throw std::invalid_argument("ModeArray: truncation must be >= 1");
    const std::size_t side = 2 * std::size_t(truncation) + 1;
    data_.assign((side * side * side - 1) / 2, Entry{});
  }

  const BoxSpec& box() const { return box_; }
  int truncation() const { return trunc_; }
  std::size_t stored_count() const { return data_.size(); }

  bool in_cube(const Mode& k) const {
    return std::abs(k[0]) <= trunc_ && std::abs(k[1]) <= trunc_ && std::abs(k[2]) <= trunc_;
  }

  static bool stored_half(const Mode& k) {
    if (k[0] != 0) return k[0] > 0;
    if (k[1] != 0) return k[1] > 0;
    return k[2] > 0;
  }

  // Slot of a stored-half mode; callers must pass a mode with stored_half(k).
  std::size_t slot_of(const Mode& k) const {
    const std::int64_t side = 2 * std::int64_t(trunc_) + 1;
    const std::int64_t idx =
        ((k[0] + trunc_) * side + (k[1] + trunc_)) * side + (k[2] + trunc_);
    return std::size_t(idx - (side * side * side - 1) / 2 - 1);
  }

  Mode slot_mode(std::size_t slot) const {
    const std::int64_t side = 2 * std::int64_t(trunc_) + 1;
    std::int64_t idx = std::int64_t(slot) + (side * side * side - 1) / 2 + 1;
    Mode k;
    k[2] = int(idx % side) - trunc_;
    idx /= side;
    k[1] = int(idx % side) - trunc_;
    k[0] = int(idx / side) - trunc_;
    return k;
  }

  Entry& slot(std::size_t i) { return data_[i]; }
  const Entry& slot(std::size_t i) const { return data_[i]; }

  // Coefficient at any mode of the cube (conjugate mirror applied, zero at k=0).
  Entry coeff(const Mode& k) const {
    if (!in_cube(k)) throw std::out_of_range("ModeArray::coeff: mode outside cube");
    return coeff_or_zero(k);
  }

  Entry coeff_or_zero(const Mode& k) const {
    if (!in_cube(k)) return Entry{};
    if (stored_half(k)) return data_[slot_of(k)];
    const Mode mk{-k[0], -k[1], -k[2]};
    if (!stored_half(mk)) return Entry{};  // k = 0
    Entry e = data_[slot_of(mk)];
    for (auto& z : e) z = std::conj(z);
    return e;
  }

  void set_coeff(const Mode& k, const Entry& v) {
    if (!in_cube(k)) throw std::out_of_range("ModeArray::set_coeff: mode outside cube");
    if (stored_half(k)) {
      data_[slot_of(k)] = v;
      return;
    }
    const Mode mk{-k[0], -k[1], -k[2]};
    if (!stored_half(mk))
      throw std::invalid_argument("ModeArray::set_coeff: k=0 is pinned to zero");
    Entry e = v;
    for (auto& z : e) z = std::conj(z);
    data_[slot_of(mk)] = e;
  }

  template <class F>
  void for_each(F&& f) const {
    for (std::size_t i = 0; i < data_.size(); ++i) f(slot_mode(i), data_[i]);
  }

  template <class F>
  void transform(F&& f) {
    for (std::size_t i = 0; i < data_.size(); ++i) f(slot_mode(i), data_[i]);
  }

  bool finite() const {
    for (const auto& e : data_)
      for (const auto& z : e)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
  }

  void require_compatible(const ModeArray& o) const {
    if (!(box_ == o.box_))
      throw std::invalid_argument("ModeArray: box parameters do not match");
    if (trunc_ != o.trunc_)
      throw std::invalid_argument("ModeArray: truncations do not match");
  }

  ModeArray& operator+=(const ModeArray& o) {
    require_compatible(o);
    for (std::size_t i = 0; i < data_.size(); ++i)
      for (int c = 0; c < NC; ++c) data_[i][c] += o.data_[i][c];
    return *this;
  }

  ModeArray& operator-=(const ModeArray& o) {
    require_compatible(o);
    for (std::size_t i = 0; i < data_.size(); ++i)
      for (int c = 0; c < NC; ++c) data_[i][c] -= o.data_[i][c];
    return *this;
  }

  ModeArray& operator*=(double a) {
    for (auto& e : data_)
      for (auto& z : e) z *= a;
    return *this;
  }

  // this += a * x
  ModeArray& axpy(double a, const ModeArray& x) {
    require_compatible(x);
    for (std::size_t i = 0; i < data_.size(); ++i)
      for (int c = 0; c < NC; ++c) data_[i][c] += a * x.data_[i][c];
    return *this;
  }

  friend ModeArray operator+(ModeArray a, const ModeArray& b) { return a += b; }
  friend ModeArray operator-(ModeArray a, const ModeArray& b) { return a -= b; }
  friend ModeArray operator*(double a, ModeArray x) { return x *= a; }

 protected:
  BoxSpec box_;
  int trunc_ = 0;
  std::vector<Entry> data_;
};

using ScalarModes = ModeArray<1>;

// 3x3 matrix-valued coefficients, row-major: component i*3+j holds either
// d u_i / d x_j (gradients) or u_i u_j (tensor squares).
using MatrixModes = ModeArray<9>;

// Velocity coefficient field.  The divergence_free flag records that the
// field is known to satisfy k . u_k = 0 (set by projection or by checked
// construction); operators that require it trust the flag.
class SpectralField : public ModeArray<3> {
 public:
  SpectralField() = default;
  SpectralField(const BoxSpec& box, int truncation) : ModeArray<3>(box, truncation) {}
  SpectralField(ModeArray<3> base, bool divfree)
      : ModeArray<3>(std::move(base)), divfree_(divfree) {}

  bool divergence_free() const { return divfree_; }
  void set_divergence_free(bool v) { divfree_ = v; }

  SpectralField& operator+=(const SpectralField& o) {
    ModeArray<3>::operator+=(o);
    divfree_ = divfree_ && o.divfree_;
    return *this;
  }
  SpectralField& operator-=(const SpectralField& o) {
    ModeArray<3>::operator-=(o);
    divfree_ = divfree_ && o.divfree_;
    return *this;
  }
  SpectralField& operator*=(double a) {
    ModeArray<3>::operator*=(a);
    return *this;
  }
  SpectralField& axpy(double a, const SpectralField& x) {
    ModeArray<3>::axpy(a, x);
    divfree_ = divfree_ && x.divfree_;
    return *this;
  }

  friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
  friend SpectralField operator*(double a, SpectralField x) { return x *= a; }

 private:
  bool divfree_ = false;
};

// Compensated (Kahan) accumulator; norm and quadrature sums run over up to
// ~10^7 terms and plain summation would eat into the pinned tolerances.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - c_;
    const double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

}  // namespace nsbox
