#include "nsbox/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "nsbox/ops.hpp"
#include "nsbox/quadrature.hpp"
#include "nsbox/sobolev_table.hpp"

namespace nsbox {

namespace {

const BoxSpec kUnitBox{kTwoPi, 1.0, 0.5};

// Decayed Gaussian coefficient draw; decay keeps candidates away from the
// pure-roundoff regime at high |k|.
template <int NC>
void draw_modes(ModeArray<NC>& f, std::mt19937_64& rng, double decay) {
  std::normal_distribution<double> g(0.0, 1.0);
  f.transform([&](const Mode& k, typename ModeArray<NC>::Entry& e) {
    const double w = std::pow(1.0 + mode_sq(k), -0.5 * decay);
    for (int c = 0; c < NC; ++c) e[c] = Cplx(g(rng) * w, g(rng) * w);
  });
}

template <int NC>
void perturb_modes(ModeArray<NC>& f, std::mt19937_64& rng, double sigma) {
  std::normal_distribution<double> g(0.0, 1.0);
  f.transform([&](const Mode& k, typename ModeArray<NC>::Entry& e) {
    const double w = sigma * std::pow(1.0 + mode_sq(k), -0.5);
    for (int c = 0; c < NC; ++c) e[c] += Cplx(g(rng) * w, g(rng) * w);
  });
}

}  // namespace

double sobolev_ratio(const ScalarModes& f, double beta, int oversample) {
  const double den = hs_norm(f, beta);
  if (!(den > 0.0)) return 0.0;
  return lp_norm(f, beta_star(beta), oversample) / den;
}

double estimate_sobolev_constant(double beta, int budget, std::uint64_t seed,
                                 int oversample) {
  if (!(beta >= 0.0 && beta < 1.5))
    throw std::invalid_argument("estimate_sobolev_constant: beta outside [0, 3/2)");
  if (budget < 1) throw std::invalid_argument("estimate_sobolev_constant: empty budget");

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  double best = 0.0;
  ScalarModes incumbent;
  for (int e = 0; e < budget; ++e) {
    ScalarModes cand;
    if (e % 4 == 0 || best == 0.0) {
      // fresh multi-start draw; every third start explores the finer cube
      const int m = (e % 12 == 8) ? 8 : 4;
      cand = ScalarModes(kUnitBox, m);
      draw_modes(cand, rng, 0.5 + 2.0 * u01(rng));
    } else {
      cand = incumbent;
      perturb_modes(cand, rng, 0.02 * std::pow(25.0, u01(rng)));
    }
    const double r = sobolev_ratio(cand, beta, oversample);
    if (r > best) {
      best = r;
      const double scale = hs_norm(cand, beta);
      cand *= 1.0 / scale;  // homogeneous ratio: keep the incumbent normalized
      incumbent = cand;
    }
  }
  return best;
}

double interp_ratio(const std::vector<SpectralField>& time_poly, double alpha,
                    double horizon, int oversample, int time_nodes) {
  if (time_poly.empty() || time_poly.size() > 3)
    throw std::invalid_argument("interp_ratio: expect 1..3 polynomial coefficients");
  if (!(horizon > 0.0)) throw std::invalid_argument("interp_ratio: horizon must be > 0");
  if (time_nodes < 3 || time_nodes % 2 == 0)
    throw std::invalid_argument("interp_ratio: time_nodes must be odd and >= 3");

  const double q = 3.0 / (2.0 - alpha);
  const double dt = horizon / (time_nodes - 1);
  KahanSum grad4, diss;
  double sup_alpha = 0.0;
  for (int j = 0; j < time_nodes; ++j) {
    const double tau = double(j) / (time_nodes - 1);
    SpectralField at = time_poly[0];
    for (std::size_t p = 1; p < time_poly.size(); ++p)
      at.axpy(std::pow(tau, double(p)), time_poly[p]);
    const double w = (j == 0 || j == time_nodes - 1) ? 1.0 : (j % 2 ? 4.0 : 2.0);
    const double gq = lp_norm(gradient(at), q, oversample);
    grad4.add(w * gq * gq * gq * gq);
    diss.add(w * hs_norm_sq(at, 1.0 + alpha));
    sup_alpha = std::max(sup_alpha, hs_norm(at, alpha));
  }
  const double simpson = dt / 3.0;
  const double num = std::pow(simpson * grad4.value(), 0.25);
  const double den =
      std::sqrt(sup_alpha) * std::pow(simpson * diss.value(), 0.25);
  if (!(den > 0.0)) return 0.0;
  return num / den;
}

double estimate_interp_constant(double alpha, double horizon, int budget,
                                std::uint64_t seed, int oversample) {
  if (!(alpha >= 0.5 && alpha <= 1.0))
    throw std::invalid_argument("estimate_interp_constant: alpha outside [1/2, 1]");
  if (budget < 1) throw std::invalid_argument("estimate_interp_constant: empty budget");

  std::mt19937_64 rng(seed ^ 0x517cc1b727220a95ull);
  std::uniform_real_distribution<double> u01(0.0, 1.0);

  double best = 0.0;
  std::vector<SpectralField> incumbent;
  for (int e = 0; e < budget; ++e) {
    std::vector<SpectralField> cand;
    if (e % 4 == 0 || best == 0.0) {
      const int m = (e % 16 == 12) ? 8 : 4;
      const double decay = 0.5 + 2.0 * u01(rng);
      for (int p = 0; p < 3; ++p) {
        SpectralField c(kUnitBox, m);
        draw_modes(c, rng, decay);
        cand.push_back(std::move(c));
      }
    } else {
      cand = incumbent;
      const double sigma = 0.02 * std::pow(25.0, u01(rng));
      for (auto& c : cand) perturb_modes(c, rng, sigma);
    }
    const double r = interp_ratio(cand, alpha, horizon, oversample);
    if (r > best) {
      best = r;
      incumbent = std::move(cand);
    }
  }
  return best;
}

}  // namespace nsbox
