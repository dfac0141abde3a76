#pragma once

#include "tvc/report.hpp"
#include "tvc/sobolev.hpp"

namespace tvc {

enum class StudyVerdict { Bounded, Growing, Inapplicable };

struct CommutatorStudy {
  std::vector<int> truncations;
  std::vector<double> norms;
  double drift = 0.0;  // max/min - 1 over the top three truncations
  StudyVerdict verdict = StudyVerdict::Bounded;
  bool invariance_pass = true;
  double invariance_defect = 0.0;
  CsvTable table() const;
};

/// Operator norm of [D, R_E(k)] per truncation.  D is supplied per
/// truncation as a diagonal mode multiplier d(xi, eta); its transversal
/// principal symbol is checked for holonomy invariance first (failure makes
/// the study verdict inapplicable unless norms grow anyway).
struct FirstOrderModelOp {
  // diagonal mode action (may depend on leaf data for counterexamples)
  std::function<GridOperator(const ModeBasis&)> build;
  // transversal principal symbol sigma(x, y, eta) for the invariance check
  std::function<MatrixXcd(double, const VectorXd&, const VectorXd&)> sigma;
  bool transversally_elliptic = true;
  int rank = 1;
};

CommutatorStudy commutator_norm_study(const ModelFoliation& M,
                                      const FirstOrderModelOp& D,
                                      const TangentialKernel& k,
                                      const std::vector<int>& truncations,
                                      int leaf_trunc = 6,
                                      double invariance_tol = 1e-9);

struct SchattenStudy {
  std::vector<double> singular_values;
  double exponent = 0.0;     // log-log slope of s_j
  double target = 0.0;       // -1/q
  bool verdict = false;      // consistent with s_j <~ j^{-1/q}
  bool degenerate_fit = false;
  CsvTable table() const;
};

/// Singular values of R_E(k)(D - i)^{-1} and the fitted decay exponent.
SchattenStudy singular_value_study(const ModelFoliation& M,
                                   const TangentialKernel& k,
                                   const GridOperator& D, int fit_lo = 16,
                                   double fit_hi_frac = 0.5);

}  // namespace tvc
