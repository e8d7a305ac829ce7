#include "nsbox/forcing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nsbox/ops.hpp"

namespace nsbox {

namespace {

void require_common_box(const std::vector<SpectralField>& fs) {
  for (std::size_t i = 1; i < fs.size(); ++i) {
    if (!(fs[i].box() == fs[0].box()))
      throw std::invalid_argument("Forcing: fields live on different boxes");
    if (fs[i].truncation() != fs[0].truncation())
      throw std::invalid_argument("Forcing: coefficient truncations differ");
  }
}

}  // namespace

Forcing Forcing::constant(SpectralField f) {
  return polynomial({std::move(f)}, 1.0);
}

Forcing Forcing::polynomial(std::vector<SpectralField> coeffs, double t_scale) {
  if (coeffs.empty()) throw std::invalid_argument("Forcing: no coefficient fields");
  if (!(t_scale > 0.0)) throw std::invalid_argument("Forcing: t_scale must be positive");
  require_common_box(coeffs);
  Forcing f;
  f.kind_ = Kind::poly;
  f.t_scale_ = t_scale;
  for (auto& c : coeffs) f.coeffs_.push_back(leray_project(c));
  return f;
}

Forcing Forcing::snapshots(std::vector<double> times, std::vector<SpectralField> fields) {
  if (times.size() != fields.size() || times.size() < 2)
    throw std::invalid_argument("Forcing: need >= 2 matching time/field pairs");
  if (!std::is_sorted(times.begin(), times.end(), std::less_equal<double>()))
    throw std::invalid_argument("Forcing: snapshot times must strictly increase");
  require_common_box(fields);
  Forcing f;
  f.kind_ = Kind::snap;
  f.times_ = std::move(times);
  for (auto& c : fields) f.coeffs_.push_back(leray_project(c));
  return f;
}

SpectralField Forcing::value_at(double t) const {
  if (kind_ == Kind::poly) {
    SpectralField v = coeffs_[0];
    const double tau = t / t_scale_;
    for (std::size_t p = 1; p < coeffs_.size(); ++p)
      v.axpy(std::pow(tau, double(p)), coeffs_[p]);
    return v;
  }
  // snapshots: clamp outside the grid, linear inside
  if (t <= times_.front()) return coeffs_.front();
  if (t >= times_.back()) return coeffs_.back();
  const auto it = std::upper_bound(times_.begin(), times_.end(), t);
  const std::size_t i = std::size_t(it - times_.begin());
  const double w = (t - times_[i - 1]) / (times_[i] - times_[i - 1]);
  SpectralField v = coeffs_[i - 1];
  v *= (1.0 - w);
  v.axpy(w, coeffs_[i]);
  return v;
}

SpectralField Forcing::at(double t, const BoxSpec& box, int truncation) const {
  if (kind_ == Kind::zero) {
    SpectralField z(box, truncation);
    z.set_divergence_free(true);
    return z;
  }
  if (!coeffs_[0].box().same_geometry(box))
    throw std::invalid_argument("Forcing: box length mismatch");
  SpectralField full = value_at(t);
  SpectralField out(box, truncation);
  out.set_divergence_free(true);
  const int span = std::min(truncation, full.truncation());
  full.for_each([&](const Mode& k, const ModeArray<3>::Entry& e) {
    if (std::abs(k[0]) <= span && std::abs(k[1]) <= span && std::abs(k[2]) <= span)
      out.set_coeff(k, e);
  });
  return out;
}

double Forcing::sq_norm_at(double t, double s) const {
  if (kind_ == Kind::zero) return 0.0;
  return hs_norm_sq(value_at(t), s);
}

double Forcing::integral_sq_norm(double t0, double t1, double s) const {
  if (!(t1 >= t0)) throw std::invalid_argument("Forcing: reversed integral bounds");
  if (kind_ == Kind::zero || t1 == t0) return 0.0;

  if (kind_ == Kind::poly) {
    // |f(t)|^2 = sum_{p,q} g_{pq} (t/T)^{p+q} with g the coefficient Gram
    // matrix; integrate monomials exactly.
    const std::size_t n = coeffs_.size();
    double total = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        const double g = hs_inner(coeffs_[p], coeffs_[q], s);
        const double d = double(p + q + 1);
        total += g * t_scale_ / d *
                 (std::pow(t1 / t_scale_, d) - std::pow(t0 / t_scale_, d));
      }
    return total;
  }

  // Snapshots: piecewise linear, |f|^2 piecewise quadratic; accumulate the
  // exact segment integrals, clamped constants outside the grid.
  KahanSum acc;
  auto segment = [&](const SpectralField& a, const SpectralField& b, double wa,
                     double wb, double len) {
    // int_0^1 |a + sigma (b-a)|^2 over the sub-range [wa, wb] of sigma
    const double gaa = hs_inner(a, a, s);
    const double gab = hs_inner(a, b, s);
    const double gbb = hs_inner(b, b, s);
    auto prim = [&](double x) {
      const double c2 = gaa;
      const double c1 = 2.0 * (gab - gaa);
      const double c0 = gaa - 2.0 * gab + gbb;
      return c2 * x + 0.5 * c1 * x * x + c0 * x * x * x / 3.0;
    };
    acc.add(len * (prim(wb) - prim(wa)));
  };

  const double lo = times_.front(), hi = times_.back();
  if (t0 < lo) acc.add((std::min(t1, lo) - t0) * hs_norm_sq(coeffs_.front(), s));
  if (t1 > hi) acc.add((t1 - std::max(t0, hi)) * hs_norm_sq(coeffs_.back(), s));
  for (std::size_t i = 0; i + 1 < times_.size(); ++i) {
    const double a = std::max(t0, times_[i]);
    const double b = std::min(t1, times_[i + 1]);
    if (b <= a) continue;
    const double len = times_[i + 1] - times_[i];
    segment(coeffs_[i], coeffs_[i + 1], (a - times_[i]) / len, (b - times_[i]) / len,
            len);
  }
  return acc.value();
}

Forcing Forcing::difference(const Forcing& g) const {
  if (g.is_zero()) return *this;
  if (is_zero()) {
    Forcing out = g;
    for (auto& c : out.coeffs_) c *= -1.0;
    return out;
  }
  if (kind_ != g.kind_)
    throw std::invalid_argument("Forcing::difference: incompatible shapes");
  if (kind_ == Kind::poly) {
    if (t_scale_ != g.t_scale_)
      throw std::invalid_argument("Forcing::difference: t_scale mismatch");
    Forcing out = *this;
    out.coeffs_.resize(std::max(coeffs_.size(), g.coeffs_.size()));
    for (std::size_t p = 0; p < out.coeffs_.size(); ++p) {
      if (p >= coeffs_.size()) {
        out.coeffs_[p] = g.coeffs_[p];
        out.coeffs_[p] *= -1.0;
      } else if (p < g.coeffs_.size()) {
        out.coeffs_[p] -= g.coeffs_[p];
      }
    }
    return out;
  }
  if (times_ != g.times_)
    throw std::invalid_argument("Forcing::difference: snapshot grids differ");
  Forcing out = *this;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out.coeffs_[i] -= g.coeffs_[i];
  return out;
}

const BoxSpec* Forcing::box_or_null() const {
  return kind_ == Kind::zero ? nullptr : &coeffs_[0].box();
}

int Forcing::max_truncation() const {
  return kind_ == Kind::zero ? 0 : coeffs_[0].truncation();
}

}  // namespace nsbox
