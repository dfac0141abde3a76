#include "tvc/axis.hpp"

namespace tvc {

VectorXcd Spectral1D::coeffs(const VectorXcd& values) const {
  const int n = ax_.n;
  VectorXcd c = VectorXcd::Zero(n);
  for (int k = 0; k < n; ++k) {
    cplx acc = 0.0;
    for (int j = 0; j < n; ++j) {
      double phase = -2.0 * pi * ax_.mode_of_slot(k) * j / n;
      acc += values[j] * std::polar(1.0, phase);
    }
    c[k] = acc / double(n);
  }
  return c;
}

VectorXcd Spectral1D::values(const VectorXcd& coeffs) const {
  const int n = ax_.n;
  VectorXcd v = VectorXcd::Zero(n);
  for (int j = 0; j < n; ++j) {
    cplx acc = 0.0;
    for (int k = 0; k < n; ++k) {
      double phase = 2.0 * pi * ax_.mode_of_slot(k) * j / n;
      acc += coeffs[k] * std::polar(1.0, phase);
    }
    v[j] = acc;
  }
  return v;
}

VectorXcd Spectral1D::derivative(const VectorXcd& values, int p,
                                 bool plain) const {
  const int n = ax_.n;
  VectorXcd c = coeffs(values);
  for (int k = 0; k < n; ++k) {
    int m = ax_.mode_of_slot(k);
    // Zero the unmatched Nyquist mode under odd derivatives.
    if (n % 2 == 0 && m == n / 2 && p % 2 == 1) {
      c[k] = 0.0;
      continue;
    }
    double eta = ax_.frequency(m);
    cplx factor = plain ? std::pow(iunit * eta, p)   // (d/dx)^p
                        : std::pow(cplx(eta), p);    // (-i d/dx)^p
    c[k] *= factor;
  }
  return this->values(c);
}

cplx Spectral1D::interpolate(const VectorXcd& values, double x) const {
  const int n = ax_.n;
  VectorXcd c = coeffs(values);
  cplx acc = 0.0;
  for (int k = 0; k < n; ++k) {
    double eta = ax_.frequency(ax_.mode_of_slot(k));
    acc += c[k] * std::polar(1.0, eta * x);
  }
  return acc;
}

}  // namespace tvc
