#pragma once

#include "tvc/common.hpp"

namespace tvc {

/// Spectral contour Gamma = ray at angle -alpha in, arc of radius rho
/// through arg 0, ray at +alpha out.  The branch of lambda^z is principal
/// (positive on R_+); the contour stays inside |arg| <= alpha < pi.
struct ContourSpec {
  double alpha = 3.0 * pi / 4.0;
  double rho = 0.5;
  int n_ray = 400;
  int n_arc = 128;
  double ray_cut = 1.0e5;  // outer truncation; power-law tail added in closed form

  void validate() const;
};

/// W_nu(z) = (i/2pi) oint lambda^z (1 - lambda)^{-nu} d lambda for the unit
/// spectral point; W_nu(a, z) = a^{z-nu+1} W_nu(z) by scaling.  Requires
/// Re z < nu - 1 ... in particular Re z < 0 for nu = 1.
std::vector<cplx> cauchy_power_weights(cplx z, int nu_max,
                                       const ContourSpec& spec);

/// Closed form binom(z, nu-1): the residue value the contour reproduces.
cplx cauchy_power_weight_exact(cplx z, int nu);

}  // namespace tvc
