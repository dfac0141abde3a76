#include "tvc/studies.hpp"

#include <Eigen/SVD>
#include <cmath>

#include "tvc/holonomy.hpp"

namespace tvc {

CsvTable CommutatorStudy::table() const {
  CsvTable t;
  t.header = {"truncation", "norm"};
  for (size_t i = 0; i < truncations.size(); ++i)
    t.rows.push_back({double(truncations[i]), norms[i]});
  return t;
}

CommutatorStudy commutator_norm_study(const ModelFoliation& M,
                                      const FirstOrderModelOp& D,
                                      const TangentialKernel& k,
                                      const std::vector<int>& truncations,
                                      int leaf_trunc, double invariance_tol) {
  CommutatorStudy study;
  study.truncations = truncations;

  SphereGrid sg = SphereGrid::make(M.q(), M.q() == 1 ? 2 : 64);
  auto H = M.holonomy_samples(24, 20250601, D.rank);
  auto inv = holonomy_invariance_check(D.sigma, H, sg, invariance_tol);
  study.invariance_pass = inv.pass;
  study.invariance_defect = inv.max_defect;

  for (int N : truncations) {
    ModeBasis basis = M.is_product() ? ModeBasis::product(M, leaf_trunc, N)
                                     : ModeBasis::kronecker(M, N);
    GridOperator Dop = D.build(basis);
    LinearOp R = M.is_product()
                     ? tangential_apply(M, k, basis, D.rank)
                     : tangential_operator(M, k, basis, D.rank).linear();
    LinearOp Dlin = Dop.linear();
    LinearOp C;
    C.dim = R.dim;
    C.apply = [R, Dlin](const VectorXcd& v) {
      return (Dlin.apply(R.apply(v)) - R.apply(Dlin.apply(v))).eval();
    };
    C.apply_adj = [R, Dlin](const VectorXcd& v) {
      return (R.apply_adj(Dlin.apply_adj(v)) - Dlin.apply_adj(R.apply_adj(v)))
          .eval();
    };
    NormResult nr = operator_norm(C, 3, 1e-8, 20000);
    study.norms.push_back(nr.value);
  }

  // drift over the top three truncations
  size_t n = study.norms.size();
  if (n >= 3) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (size_t i = n - 3; i < n; ++i) {
      lo = std::min(lo, study.norms[i]);
      hi = std::max(hi, study.norms[i]);
    }
    study.drift = lo > 0.0 ? hi / lo - 1.0 : 0.0;
  }
  bool bounded = study.drift < 0.05;
  if (!D.transversally_elliptic || !study.invariance_pass)
    study.verdict = bounded ? StudyVerdict::Inapplicable : StudyVerdict::Growing;
  else
    study.verdict = bounded ? StudyVerdict::Bounded : StudyVerdict::Growing;
  return study;
}

CsvTable SchattenStudy::table() const {
  CsvTable t;
  t.header = {"j", "sigma_j"};
  for (size_t i = 0; i < singular_values.size(); ++i)
    t.rows.push_back({double(i + 1), singular_values[i]});
  return t;
}

SchattenStudy singular_value_study(const ModelFoliation& M,
                                   const TangentialKernel& k,
                                   const GridOperator& D, int fit_lo,
                                   double fit_hi_frac) {
  SchattenStudy study;
  study.target = -1.0 / M.q();

  GridOperator R = tangential_operator(M, k, D.basis, D.rank);
  // (D - i)^{-1}
  MatrixXcd resolvent;
  if (D.is_diagonal()) {
    resolvent = MatrixXcd::Zero(D.dim(), D.dim());
    for (int i = 0; i < D.dim(); ++i)
      resolvent(i, i) = 1.0 / ((*D.diag)[i] - iunit);
  } else {
    MatrixXcd shifted =
        D.to_dense() - iunit * MatrixXcd::Identity(D.dim(), D.dim());
    resolvent = shifted.inverse();
  }
  MatrixXcd A = R.to_dense() * resolvent;
  Eigen::BDCSVD<MatrixXcd> svd(A);
  for (int i = 0; i < svd.singularValues().size(); ++i)
    study.singular_values.push_back(svd.singularValues()(i));

  // log-log fit over [fit_lo, fit_hi_frac * count], skipping the tail of
  // numerically zero values
  int count = 0;
  double smax = study.singular_values.empty() ? 0.0
                                              : study.singular_values[0];
  for (double s : study.singular_values)
    if (s > 1e-13 * std::max(1.0, smax)) ++count;
  int hi = int(fit_hi_frac * count);
  if (smax == 0.0 || hi - fit_lo < 8) {
    study.degenerate_fit = true;
    study.verdict = smax == 0.0;  // k = 0 gives all-zero singular values
    return study;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int j = fit_lo; j < hi; ++j) {
    double x = std::log(double(j + 1));
    double y = std::log(study.singular_values[j]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  study.exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  study.verdict = std::abs(study.exponent - study.target) <=
                  0.1 * std::abs(study.target);
  return study;
}

}  // namespace tvc
