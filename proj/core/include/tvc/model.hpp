#pragma once

#include "tvc/classical.hpp"
#include "tvc/holonomy.hpp"

namespace tvc {

struct ModelSpec {
  enum class Kind { Product, Kronecker };
  Kind kind = Kind::Product;
  int p = 1;
  int q = 1;
  double circumference_x = 2.0 * pi;
  std::vector<double> circumference_y = {2.0 * pi};
  double slope = 0.0;  // kronecker only; must be irrational
};

/// True when slope is (numerically) a rational with denominator <= max_den.
bool is_rational_slope(double slope, long max_den = 1000000,
                       double tol = 1e-9);

/// Explicit foliated torus: product T^p x T^q foliated by leaves T^p x {pt},
/// or the Kronecker foliation of T^2 by lines of irrational slope.  Both
/// models have trivial holonomy; the holonomy API is exercised with identity
/// actions (and synthetic non-identity actions in tests).
class ModelFoliation {
 public:
  static ModelFoliation build(const ModelSpec& spec);

  const ModelSpec& spec() const { return spec_; }
  int q() const { return spec_.q; }
  bool is_product() const { return spec_.kind == ModelSpec::Kind::Product; }

  Axis leaf_axis(int nx) const;
  std::vector<Axis> transverse_axes(int ny) const;
  SpatialGrid chart(int nx, int ny) const;

  /// Leaf direction unit vector (kronecker).
  VectorXd leaf_direction() const;
  /// Transverse unit normal (kronecker).
  VectorXd transverse_direction() const;

  /// Sampled groupoid elements with the model's (trivial) holonomy: for the
  /// product model pairs (x, x', y), for kronecker (point, leaf-time).
  HolonomyAction holonomy_samples(int count, std::uint64_t seed,
                                  int rank = 1) const;

 private:
  ModelSpec spec_;
};

/// Tangential kernel k in C_c^inf(G): scalar-valued, acting on bundles of
/// rank r through k(gamma) T(gamma) with the trivial holonomy action.
struct TangentialKernel {
  // product model: k(x, x', y)
  std::function<cplx(double, double, const VectorXd&)> product_kernel;
  // kronecker model: k(point, leaf-time t), compact support |t| <= support_T
  std::function<cplx(const VectorXd&, double)> kron_kernel;
  double support_T = 8.0;

  /// Leaf-band-limited separable product kernel f(x-x') g(y); fhat maps the
  /// leaf mode index to its convolution eigenvalue.
  static TangentialKernel separable(
      const std::function<cplx(int)>& fhat_eigen, int leaf_band,
      const std::function<cplx(const VectorXd&)>& g, double len_x);
};

}  // namespace tvc
