#pragma once

#include "tvc/gridop.hpp"
#include "tvc/report.hpp"
#include "tvc/transverse.hpp"

namespace tvc {

struct HeatExpansion {
  std::vector<double> exponents;     // (-q+l)/m, strictly increasing
  std::vector<double> coefficients;  // fitted a_l
  double fit_error = 0.0;            // rms residual of the ladder fit
  double condition = 0.0;            // conditioning of the fit basis
};

struct HeatReport {
  HeatExpansion expansion;
  double a0_formula = 0.0;        // leading coefficient from the eta-quadrature
  double a0_fitted = 0.0;
  double leading_exponent = 0.0;  // free log-log fit of the trace
  CsvTable samples;               // t, trace
};

/// Leading heat coefficient from the principal transversal symbol:
/// integral over the chart of (2pi)^{-q} int Tr e^{-sigma_P(y,eta)} d eta
/// weighted by the kernel's unit-diagonal values w(x,y).
double heat_leading_formula(
    const TransverseSymbol& principal,
    const std::function<double(double, const VectorXd&)>& unit_weight,
    const Axis& leaf, double radial_cut = 12.0);

/// Fits the exponent ladder (-q+l)/m, l = 0..L+1, to oracle samples of
/// tr R_E(k) e^{-tP} on a log-spaced t grid (ridge-regularized Vandermonde).
HeatReport heat_coefficients(const GridOperator& P, const GridOperator* pairing,
                             const TransverseSymbol& principal,
                             const std::function<double(double, const VectorXd&)>&
                                 unit_weight,
                             const Axis& leaf, int q, int m, int L,
                             double t_lo = 1e-4, double t_hi = 1e-1,
                             int t_count = 25);

}  // namespace tvc
