#include "tvc/common.hpp"

#include <cmath>

namespace tvc {

std::vector<Multiindex> multiindices(int q, int k) {
  std::vector<Multiindex> out;
  if (q == 1) {
    out.push_back({k});
    return out;
  }
  if (q == 2) {
    for (int a = k; a >= 0; --a) out.push_back({a, k - a});
    return out;
  }
  throw Error("multiindices: q must be 1 or 2");
}

void gauss_legendre(int n, double a, double b, std::vector<double>& x,
                    std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  // Newton iteration on Legendre polynomials, nodes on [-1,1] then mapped.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    double xm = 0.5 * (b + a), xl = 0.5 * (b - a);
    x[i] = xm - xl * z;
    x[n - 1 - i] = xm + xl * z;
    w[i] = 2.0 * xl / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

double gaussian_jet_1d(double a, int j) {
  if (j % 2 == 1) return 0.0;
  // d^{2m}/dt^{2m} e^{-a t^2}|_0 = (2m)!/m! (-a)^m
  int m = j / 2;
  double f = 1.0;
  for (int i = m + 1; i <= 2 * m; ++i) f *= i;  // (2m)!/m!
  return f * std::pow(-a, m);
}

}  // namespace tvc
