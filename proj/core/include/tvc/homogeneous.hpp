#pragma once

#include <map>

#include "tvc/sphere.hpp"

namespace tvc {

/// Smooth rapidly decaying test function with exact jet data at the origin.
/// The derivative callback must return d^alpha phi(0); pairing with critical
/// degrees needs the jet up to order k, sampled evaluation everywhere else.
struct TestFunction {
  std::function<cplx(const VectorXd&)> eval;
  std::function<cplx(const Multiindex&)> derivative_at_zero;
  int max_jet_order = -1;  // -1: unlimited
  double decay_radius = 12.0;  // |phi| negligible beyond this radius
  double taylor_scale = 1.0;   // radius of comfortable Taylor evaluation

  /// exp(-a |eta|^2), exact jets from the 1-d Gaussian recursion.
  static TestFunction gaussian(int q, double a = 1.0);
  /// p(eta) exp(-a |eta|^2) with monomial p = eta^beta.
  static TestFunction monomial_gaussian(int q, Multiindex beta, double a = 1.0);
  /// phi_lambda(eta) = lambda^q phi(lambda eta).
  static TestFunction rescaled(const TestFunction& phi, int q, double lambda);
};

/// Result of extending a homogeneous component to a distribution on R^q.
struct ExtensionResult {
  cplx pairing{};                      // (tau, phi)
  std::map<Multiindex, cplx> log_coefficients;  // S(eta^alpha sigma)/alpha!
  bool is_canonical = false;           // degree not in {-q-k : k in N}
};

/// Extend sigma (homogeneous of degree d) to a distribution and pair with
/// phi.  Non-critical degrees give the unique homogeneous extension; at
/// d = -q-k the finite part subtracts the Taylor jet of the angular average
/// inside |eta| <= 1 and the log obstruction coefficients are returned.
ExtensionResult extend_homogeneous(const HomogeneousComponent& sigma,
                                   const TestFunction& phi);

}  // namespace tvc
