#include "tvc/laurent.hpp"

#include <cmath>

namespace tvc {

namespace {

// c_n = (1/2pi i) oint f(z) (z-z0)^{-n-1} dz via the trapezoid rule.
std::vector<cplx> circle_moments(const std::function<cplx(cplx)>& f, cplx z0,
                                 double radius, int samples, int nmin,
                                 int nmax) {
  std::vector<cplx> vals(samples);
  for (int j = 0; j < samples; ++j) {
    cplx w = std::polar(radius, 2.0 * pi * j / samples);
    vals[j] = f(z0 + w);
  }
  std::vector<cplx> c;
  for (int n = nmin; n <= nmax; ++n) {
    cplx acc = 0.0;
    for (int j = 0; j < samples; ++j) {
      cplx w = std::polar(radius, 2.0 * pi * j / samples);
      acc += vals[j] * std::pow(w, -n);
    }
    c.push_back(acc / double(samples));
  }
  return c;
}

}  // namespace

LaurentFit laurent_fit(const std::function<cplx(cplx)>& f, cplx center,
                       double radius, int samples, double detect_tol) {
  LaurentFit fit;
  fit.center = center;
  fit.radius = radius;

  auto c = circle_moments(f, center, radius, samples, -4, 0);
  const cplx cm1 = c[3], cm2 = c[2];
  double scale = 0.0;
  for (const auto& v : c) scale = std::max(scale, std::abs(v));
  if (std::abs(cm1) <= std::max(detect_tol, 1e-13 * scale)) {
    fit.pole_detected = false;
    fit.residue = cm1;
    fit.uncertainty = std::abs(c[2]) + std::abs(c[1]);
    return fit;
  }

  // Simple-pole model: c_{-n} = R delta^{n-1}, delta = pole - center.
  cplx delta = cm2 / cm1;
  fit.pole = center + delta;
  fit.pole_detected = true;

  // Second pass centred at the refined pole.
  auto c2 = circle_moments(f, fit.pole, radius, samples, -4, 0);
  fit.residue = c2[3];
  fit.quadratic = c2[2];
  fit.uncertainty = std::abs(c2[1]) + std::abs(c2[0]);
  fit.simple =
      std::abs(fit.quadratic) <=
      std::max(fit.uncertainty, 1e-6 * std::abs(fit.residue) * radius);
  return fit;
}

}  // namespace tvc
