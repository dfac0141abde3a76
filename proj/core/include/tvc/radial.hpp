#pragma once

#include <optional>

#include "tvc/sphere.hpp"

namespace tvc {

/// Excision cutoff theta(eta): 0 for |eta| <= r0, 1 for |eta| >= r1, smooth
/// monotone bridge in between.
struct CutoffSpec {
  double r0 = 1.0;
  double r1 = 2.0;

  double operator()(double r) const;
  double derivative(double r) const;
  void validate() const;
};

/// The eta-dependence of a classical symbol: the truncated polyhomogeneous
/// ladder sum_j theta(eta) h_j(eta), optionally accompanied by the exact
/// smooth function it expands (then `full` - ladder must be integrable,
/// i.e. tail order below -q after subtracting the listed components).
struct EtaSymbol {
  cplx order{};                         // degree of the leading component
  CutoffSpec cutoff;
  std::vector<HomogeneousComponent> components;  // degree order - j
  std::optional<std::function<MatrixXcd(const VectorXd&)>> full;
  double full_radius = 64.0;            // quadrature radius for the full path

  int q() const;
  int rank() const;
  MatrixXcd ladder_eval(const VectorXd& eta) const;
};

/// Canonically regularized radial integral int_0^inf theta(r) r^{s-1} dr:
/// bridge quadrature on [r0,r1] plus the analytic continuation -r1^s/s of the
/// outer power-law tail.  Simple pole at s=0.
cplx regularized_radial(const CutoffSpec& cutoff, cplx s);

/// L-tilde: the holomorphic extension of (2pi)^{-q} int Tr sigma(eta) d eta
/// to non-integer orders.  N must satisfy N >= Re(order) + q.  At integer
/// orders every critical component must have vanishing obstruction
/// S(h) = int_{|eta|=1} Tr h, otherwise an Error names the offending degree.
cplx regularized_integral(const EtaSymbol& sigma, int N);

/// Plain integral (2pi)^{-q} int Tr sigma for orders < -q (quadrature),
/// used as the agreement oracle on the absolutely convergent range.
cplx plain_integral(const EtaSymbol& sigma);

}  // namespace tvc
