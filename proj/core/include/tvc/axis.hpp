#pragma once

#include "tvc/common.hpp"

namespace tvc {

/// One periodic axis of a torus chart: n uniform nodes on a circle of the
/// given circumference.  Fourier modes are e^{i eta_k x} with
/// eta_k = 2 pi k / circumference.
struct Axis {
  int n = 1;
  double circumference = 2.0 * pi;

  double node(int j) const { return circumference * j / n; }
  double spacing() const { return circumference / n; }
  double frequency(int k) const { return 2.0 * pi * k / circumference; }
  /// Signed mode index for storage slot j in [0,n): 0,1,...,n/2,-(n/2-1),...,-1.
  int mode_of_slot(int j) const { return j <= n / 2 ? j : j - n; }

  bool operator==(const Axis& o) const {
    return n == o.n && circumference == o.circumference;
  }
};

/// Spectral helpers on one axis; all transforms are plain O(n^2) sums,
/// exact for band-limited data at these grid sizes.
class Spectral1D {
 public:
  explicit Spectral1D(Axis ax) : ax_(ax) {}

  /// Fourier coefficients c_k with f(x_j) = sum_k c_k e^{i eta_k x_j}.
  VectorXcd coeffs(const VectorXcd& values) const;
  VectorXcd values(const VectorXcd& coeffs) const;

  /// Spectral derivative (-i d/dx)^p applied on grid values when flip=false
  /// gives D^p; with want_plain_derivative the plain d/dx.
  VectorXcd derivative(const VectorXcd& values, int p = 1,
                       bool plain = false) const;

  /// Evaluate the trigonometric interpolant off-grid.
  cplx interpolate(const VectorXcd& values, double x) const;

  const Axis& axis() const { return ax_; }

 private:
  Axis ax_;
};

}  // namespace tvc
