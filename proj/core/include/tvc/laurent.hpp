#pragma once

#include "tvc/common.hpp"

namespace tvc {

/// Laurent data extracted from samples of a meromorphic function on a circle
/// |z - center| = radius (trapezoid moments; spectrally accurate when the
/// function is analytic in a neighbourhood of the annulus except for poles
/// strictly inside).
struct LaurentFit {
  cplx center{};
  double radius = 0.05;
  cplx residue{};        // coefficient of 1/(z - pole)
  cplx pole{};           // refined location (simple-pole model)
  cplx quadratic{};      // double-pole coefficient at the refined location
  double uncertainty = 0.0;
  bool pole_detected = false;
  bool simple = true;
};

/// Two-pass moment extraction: locate the pole from first moments around
/// `center`, then recentre and read residue / quadratic term / uncertainty.
LaurentFit laurent_fit(const std::function<cplx(cplx)>& f, cplx center,
                       double radius, int samples = 32,
                       double detect_tol = 1e-9);

}  // namespace tvc
