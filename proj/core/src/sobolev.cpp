#include "tvc/sobolev.hpp"

#include <Eigen/SVD>

namespace tvc {

VectorXd SobolevWeight::diagonal(const ModeBasis& basis, int rank) const {
  VectorXd w(basis.dim() * rank);
  for (int i = 0; i < basis.dim(); ++i) {
    double v = at(basis.at(i));
    for (int f = 0; f < rank; ++f) w[i * rank + f] = v;
  }
  return w;
}

double sobolev_norm(const VectorXcd& u, const ModeBasis& basis, double s,
                    double k, int rank) {
  require(u.size() == basis.dim() * rank, "sobolev_norm: size mismatch");
  SobolevWeight w{s, k};
  double acc = 0.0;
  for (int i = 0; i < basis.dim(); ++i) {
    double wi = w.at(basis.at(i));
    for (int f = 0; f < rank; ++f) acc += wi * std::norm(u[i * rank + f]);
  }
  return std::sqrt(acc);
}

SeminormResult operator_seminorm(const LinearOp& A, const ModeBasis& basis,
                                 int rank, double s, double t, double l,
                                 double tol, int max_iter) {
  // W_out^{1/2} A W_in^{-1/2} as a weighted map between l2 spaces.
  SobolevWeight win{s, t}, wout{s, t - l};
  VectorXd wi = win.diagonal(basis, rank).cwiseSqrt();
  VectorXd wo = wout.diagonal(basis, rank).cwiseSqrt();
  LinearOp B;
  B.dim = A.dim;
  B.apply = [A, wi, wo](const VectorXcd& v) {
    VectorXcd u = v.cwiseQuotient(wi.cast<cplx>());
    return wo.cast<cplx>().cwiseProduct(A.apply(u)).eval();
  };
  B.apply_adj = [A, wi, wo](const VectorXcd& v) {
    VectorXcd u = wo.cast<cplx>().cwiseProduct(v);
    return A.apply_adj(u).cwiseQuotient(wi.cast<cplx>()).eval();
  };
  NormResult nr = operator_norm(B, 11, tol, max_iter);
  return {nr.value, nr.converged, nr.iterations};
}

SeminormResult operator_seminorm(const GridOperator& A, double s, double t,
                                 double l, double tol, int max_iter) {
  return operator_seminorm(A.linear(), A.basis, A.rank, s, t, l, tol,
                           max_iter);
}

TraceClassReport trace_class_check(const GridOperator& T, double s, double k,
                                   int q, int p) {
  require(s > q && k > p, "trace_class_check: needs s > q and k > p");
  TraceClassReport rep;
  MatrixXcd dense = T.to_dense();
  Eigen::BDCSVD<MatrixXcd> svd(dense);
  rep.trace_norm = svd.singularValues().sum();
  SobolevWeight w{s, k};
  VectorXd wd = w.diagonal(T.basis, T.rank).cwiseSqrt();
  MatrixXcd weighted = wd.cast<cplx>().asDiagonal() * dense;
  Eigen::BDCSVD<MatrixXcd> svd2(weighted);
  rep.mapping_norm = svd2.singularValues()(0);
  rep.constant = rep.trace_norm / rep.mapping_norm;
  return rep;
}

}  // namespace tvc
