#include "tvc/model.hpp"

#include <cmath>
#include <random>

namespace tvc {

bool is_rational_slope(double slope, long max_den, double tol) {
  // Continued-fraction convergents p/q with q <= max_den.
  double x = std::abs(slope);
  long p0 = 1, q0 = 0, p1 = long(std::floor(x)), q1 = 1;
  double frac = x - std::floor(x);
  for (int it = 0; it < 64; ++it) {
    if (std::abs(x - double(p1) / double(q1)) < tol / double(q1)) return true;
    if (frac < 1e-15) break;
    double inv = 1.0 / frac;
    long a = long(std::floor(inv));
    frac = inv - std::floor(inv);
    long p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den || q2 < 0) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
  }
  return std::abs(x - double(p1) / double(q1)) < tol && q1 <= max_den;
}

ModelFoliation ModelFoliation::build(const ModelSpec& spec) {
  require(spec.p == 1, "ModelFoliation: only leaf dimension p=1 is supported");
  if (spec.kind == ModelSpec::Kind::Product) {
    require(spec.q == 1 || spec.q == 2,
            "ModelFoliation: product model needs q in {1,2}");
    require(static_cast<int>(spec.circumference_y.size()) == spec.q,
            "ModelFoliation: need one circumference per transverse axis");
  } else {
    require(spec.q == 1, "ModelFoliation: kronecker model has q=1");
    require(!is_rational_slope(spec.slope),
            "ModelFoliation: kronecker slope is rational (denominator <= 1e6)");
  }
  require(spec.circumference_x > 0.0, "ModelFoliation: bad circumference");
  ModelFoliation m;
  m.spec_ = spec;
  return m;
}

Axis ModelFoliation::leaf_axis(int nx) const {
  return Axis{nx, spec_.circumference_x};
}

std::vector<Axis> ModelFoliation::transverse_axes(int ny) const {
  std::vector<Axis> out;
  if (is_product()) {
    for (double c : spec_.circumference_y) out.push_back(Axis{ny, c});
  } else {
    // transverse circle of the kronecker chart carries the y-coordinate
    out.push_back(Axis{ny, spec_.circumference_y.empty()
                               ? 2.0 * pi
                               : spec_.circumference_y[0]});
  }
  return out;
}

SpatialGrid ModelFoliation::chart(int nx, int ny) const {
  SpatialGrid g;
  g.x = leaf_axis(nx);
  g.y = transverse_axes(ny);
  return g;
}

VectorXd ModelFoliation::leaf_direction() const {
  VectorXd v(2);
  if (is_product()) {
    v << 1.0, 0.0;
    return v;
  }
  double n = std::sqrt(1.0 + spec_.slope * spec_.slope);
  v << 1.0 / n, spec_.slope / n;
  return v;
}

VectorXd ModelFoliation::transverse_direction() const {
  VectorXd v(2);
  if (is_product()) {
    v << 0.0, 1.0;
    return v;
  }
  double n = std::sqrt(1.0 + spec_.slope * spec_.slope);
  v << -spec_.slope / n, 1.0 / n;
  return v;
}

HolonomyAction ModelFoliation::holonomy_samples(int count, std::uint64_t seed,
                                                int rank) const {
  HolonomyAction H;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(0.0, spec_.circumference_x);
  for (int i = 0; i < count; ++i) {
    GroupoidSample g;
    g.T = MatrixXcd::Identity(rank, rank);
    g.dh_star = MatrixXd::Identity(spec_.q, spec_.q);
    if (is_product()) {
      g.x_src = ux(rng);
      g.x_tgt = ux(rng);
      VectorXd y(spec_.q);
      for (int d = 0; d < spec_.q; ++d)
        y[d] = std::uniform_real_distribution<double>(
            0.0, spec_.circumference_y[d])(rng);
      g.y_src = y;
      g.y_tgt = y;
    } else {
      // gamma = (point, leaf-time t); chart positions along the leaf
      double t = std::uniform_real_distribution<double>(-20.0, 20.0)(rng);
      double x0 = ux(rng);
      VectorXd y0(1), y1(1);
      // transverse coordinate is constant along the leaf; positions differ
      // in the leaf coordinate only
      y0 << std::uniform_real_distribution<double>(0.0, 2.0 * pi)(rng);
      y1 = y0;
      g.x_src = x0;
      g.x_tgt = x0 + t;
      g.y_src = y0;
      g.y_tgt = y1;
    }
    H.samples.push_back(std::move(g));
  }
  return H;
}

TangentialKernel TangentialKernel::separable(
    const std::function<cplx(int)>& fhat_eigen, int leaf_band,
    const std::function<cplx(const VectorXd&)>& g, double len_x) {
  TangentialKernel k;
  k.product_kernel = [fhat_eigen, leaf_band, g, len_x](
                         double x, double xp, const VectorXd& y) -> cplx {
    // f(x-x') = (1/len_x) sum_{|m|<=band} fhat(m) e^{i eta_m (x-x')}
    cplx acc = 0.0;
    for (int m = -leaf_band; m <= leaf_band; ++m)
      acc += fhat_eigen(m) *
             std::polar(1.0, 2.0 * pi * m * (x - xp) / len_x);
    return acc / len_x * g(y);
  };
  return k;
}

}  // namespace tvc
