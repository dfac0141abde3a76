#pragma once

#include "tvc/contour.hpp"
#include "tvc/transverse.hpp"

namespace tvc {

struct EllipticityReport {
  bool elliptic = false;
  double epsilon = 0.0;
  double c = 0.0;
};

/// Searches epsilon in {1, 1/2, 1/4, ...} for a lower bound
/// |(p_m v, v)| >= c (|xi| + |eta|)^m |v|^2 on the cone |xi| < eps |eta|,
/// by sampling points, directions and vectors.
EllipticityReport check_transversal_ellipticity(const FullSymbol& a,
                                                std::uint64_t seed = 7);

/// The parameter-dependent resolvent components p_{-m-l}(y,eta,lambda) of
/// the Seeley construction, kept in exact rational form
///   p_{-m-l} = sum_nu C_{l,nu}(y,eta) (a_m(y,eta) - lambda)^{-nu},
/// with C_{l,nu} homogeneous of degree nu m - m - l.  Quasi-homogeneity
/// p(t eta, t^m lambda) = t^{-m-l} p(eta, lambda) holds by construction.
/// Requires a scalar positive principal symbol (condition T1 on the cone).
class ResolventSymbolFamily {
 public:
  static ResolventSymbolFamily build(const TransverseSymbol& a, int depth,
                                     double delta = 0.1);

  int m() const { return m_; }
  int depth() const { return static_cast<int>(comps_.size()) - 1; }
  const TransverseSymbol& base() const { return a_; }
  double delta() const { return delta_; }

  /// Rational coefficients of level l: index nu-1.
  const std::vector<TransverseSymbol::Component>& rational(int l) const {
    return comps_[l];
  }

  /// Principal scalar value on the sphere grid slot (yk, node); positive.
  double principal(int yk, int node) const { return am_[yk * ns_ + node]; }
  double principal_min() const { return am_min_; }

  /// Evaluate p_{-m-l} at a transverse grid point, any eta != 0, lambda off
  /// the ray [am_min |eta|^m, infinity).
  MatrixXcd eval(int l, int yk, const VectorXd& eta, cplx lambda) const;

 private:
  TransverseSymbol a_;
  int m_ = 2;
  int ns_ = 0;
  double delta_ = 0.1;
  std::vector<double> am_;  // yk*ns + node
  double am_min_ = 0.0;
  std::vector<std::vector<TransverseSymbol::Component>> comps_;  // [l][nu-1]
};

struct ParametrixResult {
  TransverseSymbol symbol;   // order -m
  cplx remainder_order;      // order of the first neglected component
};

/// One-sided parametrix on the transverse cone: the resolvent family at
/// lambda = 0.
ParametrixResult parametrix(const TransverseSymbol& a, int depth);

}  // namespace tvc
