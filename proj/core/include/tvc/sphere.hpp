#pragma once

#include "tvc/common.hpp"

namespace tvc {

/// Quadrature grid on the unit sphere S^{q-1} in R^q.  Supported
/// codimensions: q=1 (two-point sphere {+1,-1}) and q=2 (trapezoid rule on
/// the circle, spectrally accurate for periodic integrands).
struct SphereGrid {
  int q = 1;
  std::vector<VectorXd> nodes;   // unit vectors in R^q
  std::vector<double> weights;   // positive, summing to vol(S^{q-1})

  int size() const { return static_cast<int>(nodes.size()); }

  /// vol(S^0) = 2, vol(S^1) = 2 pi.
  static double surface_volume(int q);

  static SphereGrid make(int q, int n_circle = 256);

  /// Angle of node i (q=2 only); nodes are uniform in angle.
  double angle(int i) const;

  void validate() const;
};

/// Matrix-valued function on R^q \ {0}, homogeneous of complex degree d,
/// stored by its values on a SphereGrid and extended by
/// sigma(eta) = |eta|^d sigma(eta/|eta|).
class HomogeneousComponent {
 public:
  HomogeneousComponent() = default;
  HomogeneousComponent(cplx degree, int rank, SphereGrid grid);

  static HomogeneousComponent from_function(
      cplx degree, int rank, const SphereGrid& grid,
      const std::function<MatrixXcd(const VectorXd&)>& on_sphere);

  cplx degree() const { return degree_; }
  int rank() const { return rank_; }
  const SphereGrid& grid() const { return grid_; }

  MatrixXcd& at(int node) { return values_[node]; }
  const MatrixXcd& at(int node) const { return values_[node]; }

  /// Evaluate at eta != 0 (trigonometric interpolation off-node for q=2).
  MatrixXcd eval(const VectorXd& eta) const;

  /// Exact homogeneous eta-derivative: degree drops by one; radial part is
  /// the degree scaling, angular part is spectral (q=2).
  HomogeneousComponent deta(int axis) const;

  /// Pointwise product (degrees add).
  HomogeneousComponent operator*(const HomogeneousComponent& o) const;
  HomogeneousComponent scaled(cplx c) const;
  HomogeneousComponent& operator+=(const HomogeneousComponent& o);

  double max_norm() const;

 private:
  cplx degree_{0.0, 0.0};
  int rank_ = 1;
  SphereGrid grid_;
  std::vector<MatrixXcd> values_;
};

/// S(sigma) = int_{|eta|=1} Tr sigma(eta) d eta  (quadrature).
cplx sphere_integral(const HomogeneousComponent& h);

/// int_{|eta|=1} Tr sigma(omega) omega^alpha d omega.
cplx sphere_moment(const HomogeneousComponent& h, const Multiindex& alpha);

}  // namespace tvc
