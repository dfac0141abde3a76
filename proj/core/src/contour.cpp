#include "tvc/contour.hpp"

#include <cmath>

namespace tvc {

void ContourSpec::validate() const {
  require(alpha > 0.0 && alpha < pi, "ContourSpec: alpha must be in (0,pi)");
  require(rho > 0.0 && rho < 1.0,
          "ContourSpec: contour intersects sampled spectrum (need rho < 1)");
  require(ray_cut > 1.0, "ContourSpec: ray_cut too small");
  require(n_ray >= 16 && n_arc >= 8, "ContourSpec: too few nodes");
}

std::vector<cplx> cauchy_power_weights(cplx z, int nu_max,
                                       const ContourSpec& spec) {
  spec.validate();
  require(z.real() < 0.0,
          "cauchy_power_weights: direct contour needs Re z < 0");
  std::vector<cplx> W(nu_max, 0.0);

  auto lam_pow = [&](cplx lam) { return std::exp(z * std::log(lam)); };

  // Rays: geometric panels from rho to ray_cut, Gauss-Legendre in log r.
  const int panels = std::max(4, spec.n_ray / 32);
  const double lr0 = std::log(spec.rho), lr1 = std::log(spec.ray_cut);
  std::vector<double> gx, gw;
  for (int pnl = 0; pnl < panels; ++pnl) {
    double a = lr0 + (lr1 - lr0) * pnl / panels;
    double b = lr0 + (lr1 - lr0) * (pnl + 1) / panels;
    gauss_legendre(32, a, b, gx, gw);
    for (size_t i = 0; i < gx.size(); ++i) {
      double r = std::exp(gx[i]);
      // outgoing ray at +alpha minus incoming ray at -alpha
      for (int sgn : {+1, -1}) {
        cplx dir = std::polar(1.0, sgn * spec.alpha);
        cplx lam = r * dir;
        cplx dlam = dir * r * gw[i];  // dr = r d(log r)
        cplx f = lam_pow(lam);
        cplx res = 1.0 / (1.0 - lam);
        for (int nu = 1; nu <= nu_max; ++nu) {
          W[nu - 1] += double(sgn) * f * std::pow(res, nu) * dlam;
        }
      }
    }
  }

  // Arc of radius rho from -alpha to +alpha through 0.
  gauss_legendre(spec.n_arc, -spec.alpha, spec.alpha, gx, gw);
  for (size_t i = 0; i < gx.size(); ++i) {
    cplx lam = std::polar(spec.rho, gx[i]);
    cplx dlam = iunit * lam * gw[i];
    cplx f = lam_pow(lam);
    cplx res = 1.0 / (1.0 - lam);
    for (int nu = 1; nu <= nu_max; ++nu)
      W[nu - 1] += f * std::pow(res, nu) * dlam;
  }

  // Analytic power-law tail beyond ray_cut:
  // (1-lambda)^{-nu} = (-1)^nu lambda^{-nu} sum_t binom(nu+t-1,t) lambda^{-t},
  // each term integrates to -R^w/w with w = z-nu-t+1 along a ray, and the
  // two rays combine to 2i sin(alpha w).
  const double R = spec.ray_cut;
  for (int nu = 1; nu <= nu_max; ++nu) {
    const double sign = (nu % 2 == 0) ? 1.0 : -1.0;
    cplx tail = 0.0;
    double binom = 1.0;
    for (int t = 0; t < 64; ++t) {
      if (t > 0) binom *= double(nu + t - 1) / double(t);
      cplx w = z - double(nu + t) + 1.0;
      cplx term = binom * (-std::pow(cplx(R), w) / w) * 2.0 * iunit *
                  std::sin(spec.alpha * w);
      tail += sign * term;
      if (binom * std::pow(R, w.real()) < 1e-18) break;
    }
    W[nu - 1] += tail;
  }

  for (auto& w : W) w *= iunit / (2.0 * pi);
  return W;
}

cplx cauchy_power_weight_exact(cplx z, int nu) {
  // binom(z, nu-1) = z (z-1) ... (z-nu+2) / (nu-1)!
  cplx num = 1.0;
  for (int j = 0; j < nu - 1; ++j) num *= (z - double(j));
  double den = 1.0;
  for (int j = 2; j <= nu - 1; ++j) den *= j;
  return num / den;
}

}  // namespace tvc
