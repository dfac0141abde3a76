#pragma once

#include "tvc/sphere.hpp"

namespace tvc {

/// One sampled groupoid element gamma: chart positions of source and target,
/// the unitary fiber action T(gamma) and the linear codifferential dh* on eta
/// (mapping covectors at the target to covectors at the source).
struct GroupoidSample {
  double x_src = 0.0, x_tgt = 0.0;
  VectorXd y_src, y_tgt;
  MatrixXcd T;       // unitary, rank x rank
  MatrixXd dh_star;  // q x q
};

struct HolonomyAction {
  std::vector<GroupoidSample> samples;
};

struct InvarianceReport {
  bool pass = false;
  double max_defect = 0.0;
};

/// Checks ad T(gamma)[sigma_P(src, dh*(eta))] = sigma_P(tgt, eta) over the
/// sampled gamma set and sphere directions.  sigma_P(x, y, eta) must be
/// homogeneous in eta; only directions |eta| = 1 are probed.
InvarianceReport holonomy_invariance_check(
    const std::function<MatrixXcd(double x, const VectorXd& y,
                                  const VectorXd& eta)>& sigmaP,
    const HolonomyAction& H, const SphereGrid& sgrid, double tol);

}  // namespace tvc
