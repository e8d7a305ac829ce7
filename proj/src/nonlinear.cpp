#include "nsbox/nonlinear.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "nsbox/ops.hpp"
#include "nsbox/transform.hpp"

namespace nsbox {

namespace {

std::size_t wrap_index(const Mode& k, int n) {
  const auto w = [n](int q) { return std::size_t((q % n + n) % n); };
  return (w(k[0]) * n + w(k[1])) * n + w(k[2]);
}

// Inverse transform of the coefficient function fn (defined on the stored
// half of the cube |k_i| <= m, mirror implied) onto the n^3 grid.
template <class Fn>
void synth_real(std::vector<double>& dst, std::vector<Cplx>& buf, int m, int n, Fn&& fn) {
  std::fill(buf.begin(), buf.end(), Cplx(0.0, 0.0));
  Mode k;
  for (k[0] = 0; k[0] <= m; ++k[0])
    for (k[1] = (k[0] == 0) ? 0 : -m; k[1] <= m; ++k[1])
      for (k[2] = (k[0] == 0 && k[1] == 0) ? 1 : -m; k[2] <= m; ++k[2]) {
        const Cplx z = fn(k);
        buf[wrap_index(k, n)] = z;
        buf[wrap_index(Mode{-k[0], -k[1], -k[2]}, n)] = std::conj(z);
      }
  detail::fft3(buf.data(), n, +1);
  for (std::size_t j = 0; j < dst.size(); ++j) dst[j] = buf[j].real();
}

int product_grid(int ma, int mb, int out) {
  int n = ma + mb + out + 1;  // no alias image of a product mode reaches the output cube
  n = std::max({n, 2 * ma + 2, 2 * mb + 2, 2 * out + 2});
  return good_fft_size(n);
}

}  // namespace

SpectralField nonlinear_term(const SpectralField& a, const SpectralField& b,
                             int out_truncation) {
  if (!(a.box() == b.box()))
    throw std::invalid_argument("nonlinear_term: box parameters do not match");
  if (out_truncation < 1)
    throw std::invalid_argument("nonlinear_term: out_truncation must be >= 1");

  const int ma = a.truncation(), mb = b.truncation();
  const int n = product_grid(ma, mb, out_truncation);
  const std::size_t np = std::size_t(n) * n * n;
  const double wb = kTwoPi / b.box().length;

  std::vector<Cplx> buf(np);
  std::array<std::vector<double>, 3> adv;
  for (int j = 0; j < 3; ++j) {
    adv[j].resize(np);
    synth_real(adv[j], buf, ma, n, [&](const Mode& k) { return a.coeff(k)[j]; });
  }

  SpectralField out(a.box(), out_truncation);
  std::vector<double> accum(np), part(np);
  const double scale = 1.0 / double(np);
  for (int i = 0; i < 3; ++i) {
    std::fill(accum.begin(), accum.end(), 0.0);
    for (int j = 0; j < 3; ++j) {
      synth_real(part, buf, mb, n,
                 [&](const Mode& k) { return Cplx(0.0, wb * k[j]) * b.coeff(k)[i]; });
      for (std::size_t q = 0; q < np; ++q) accum[q] += adv[j][q] * part[q];
    }
    for (std::size_t q = 0; q < np; ++q) buf[q] = Cplx(accum[q], 0.0);
    detail::fft3(buf.data(), n, -1);
    for (std::size_t s = 0; s < out.stored_count(); ++s)
      out.slot(s)[i] = buf[wrap_index(out.slot_mode(s), n)] * scale;
  }
  return out;
}

SpectralField convective_term(const SpectralField& u, int out_truncation) {
  if (!u.divergence_free())
    throw std::invalid_argument("convective_term: field must be divergence-free");
  if (out_truncation < 1)
    throw std::invalid_argument("convective_term: out_truncation must be >= 1");

  const int m = u.truncation();
  const int n = product_grid(m, m, out_truncation);
  const std::size_t np = std::size_t(n) * n * n;
  const double w = kTwoPi / u.box().length;

  std::vector<Cplx> buf(np);
  std::array<std::vector<double>, 3> vel;
  for (int j = 0; j < 3; ++j) {
    vel[j].resize(np);
    synth_real(vel[j], buf, m, n, [&](const Mode& k) { return u.coeff(k)[j]; });
  }

  SpectralField out(u.box(), out_truncation);
  const double scale = 1.0 / double(np);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      for (std::size_t q = 0; q < np; ++q) buf[q] = Cplx(vel[i][q] * vel[j][q], 0.0);
      detail::fft3(buf.data(), n, -1);
      for (std::size_t s = 0; s < out.stored_count(); ++s) {
        const Mode k = out.slot_mode(s);
        const Cplx t = buf[wrap_index(k, n)] * scale;
        auto& e = out.slot(s);
        e[i] += Cplx(0.0, w * k[j]) * t;
        if (i != j) e[j] += Cplx(0.0, w * k[i]) * t;
      }
    }
  return out;
}

MatrixModes tensor_square(const SpectralField& u) {
  const int m = u.truncation();
  const int out_m = 2 * m;
  const int n = product_grid(m, m, out_m);
  const std::size_t np = std::size_t(n) * n * n;

  std::vector<Cplx> buf(np);
  std::array<std::vector<double>, 3> vel;
  for (int j = 0; j < 3; ++j) {
    vel[j].resize(np);
    synth_real(vel[j], buf, m, n, [&](const Mode& k) { return u.coeff(k)[j]; });
  }

  MatrixModes out(u.box(), out_m);
  const double scale = 1.0 / double(np);
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      for (std::size_t q = 0; q < np; ++q) buf[q] = Cplx(vel[i][q] * vel[j][q], 0.0);
      detail::fft3(buf.data(), n, -1);
      for (std::size_t s = 0; s < out.stored_count(); ++s) {
        const Cplx t = buf[wrap_index(out.slot_mode(s), n)] * scale;
        out.slot(s)[i * 3 + j] = t;
        if (i != j) out.slot(s)[j * 3 + i] = t;
      }
    }
  return out;
}

double tensor_product_norm(const SpectralField& u, double s) {
  return hs_norm(tensor_square(u), s);
}

}  // namespace nsbox
