#include "nsbox/transform.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace nsbox {

int good_fft_size(int atleast) {
  if (atleast < 1) atleast = 1;
  for (int n = atleast;; ++n) {
    int r = n;
    for (int p : {2, 3, 5})
      while (r % p == 0) r /= p;
    if (r == 1) return n;
  }
}

namespace detail {

namespace {

// One cached in-place plan per (n, sign).  FFTW_UNALIGNED lets the plan run
// on any caller buffer via fftw_execute_dft.
class PlanCache {
 public:
  fftw_plan get(int n, int sign) {
    std::lock_guard<std::mutex> lock(mu_);
    const auto key = std::make_pair(n, sign);
    auto it = plans_.find(key);
    if (it != plans_.end()) return it->second;
    std::vector<Cplx> scratch(std::size_t(n) * n * n);
    fftw_plan p = fftw_plan_dft_3d(n, n, n,
                                   reinterpret_cast<fftw_complex*>(scratch.data()),
                                   reinterpret_cast<fftw_complex*>(scratch.data()),
                                   sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (!p) throw std::runtime_error("fftw_plan_dft_3d failed");
    plans_.emplace(key, p);
    return p;
  }

 private:
  std::mutex mu_;
  std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

void fft3(Cplx* data, int n, int sign) {
  fftw_plan p = cache().get(n, sign);
  fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data),
                   reinterpret_cast<fftw_complex*>(data));
}

}  // namespace detail

template <int NC>
PhysicalSample<NC> sample_physical(const ModeArray<NC>& f, int grid_n) {
  const int m = f.truncation();
  if (grid_n < 2 * m + 2)
    throw std::invalid_argument("sample_physical: grid must have at least 2m+2 points");

  PhysicalSample<NC> out;
  out.box = f.box();
  out.grid_n = grid_n;
  const std::size_t np = std::size_t(grid_n) * grid_n * grid_n;
  out.values.assign(std::size_t(NC) * np, 0.0);

  std::vector<Cplx> buf(np);
  const auto wrap = [grid_n](int k) { return std::size_t((k % grid_n + grid_n) % grid_n); };

  for (int c = 0; c < NC; ++c) {
    std::fill(buf.begin(), buf.end(), Cplx(0.0, 0.0));
    for (std::size_t i = 0; i < f.stored_count(); ++i) {
      const Mode k = f.slot_mode(i);
      const Cplx z = f.slot(i)[c];
      const std::size_t ip = (wrap(k[0]) * grid_n + wrap(k[1])) * grid_n + wrap(k[2]);
      const std::size_t in = (wrap(-k[0]) * grid_n + wrap(-k[1])) * grid_n + wrap(-k[2]);
      buf[ip] = z;
      buf[in] = std::conj(z);
    }
    detail::fft3(buf.data(), grid_n, +1);
    double* dst = out.values.data() + std::size_t(c) * np;
    for (std::size_t j = 0; j < np; ++j) dst[j] = buf[j].real();
  }
  return out;
}

template PhysicalSample<1> sample_physical(const ModeArray<1>&, int);
template PhysicalSample<3> sample_physical(const ModeArray<3>&, int);
template PhysicalSample<9> sample_physical(const ModeArray<9>&, int);

}  // namespace nsbox
