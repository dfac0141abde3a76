#pragma once

#include "tvc/gridop.hpp"

namespace tvc {

/// Anisotropic Sobolev weight (1+|xi|^2+|eta|^2)^s (1+|xi|^2)^k per mode.
struct SobolevWeight {
  double s = 0.0;
  double k = 0.0;

  double at(const ModePoint& p) const {
    double xi2 = p.xi * p.xi;
    double eta2 = p.eta.squaredNorm();
    return std::pow(1.0 + xi2 + eta2, s) * std::pow(1.0 + xi2, k);
  }
  VectorXd diagonal(const ModeBasis& basis, int rank = 1) const;
};

/// ||u||_{s,k} on the truncated mode space (weighted l2 sum).
double sobolev_norm(const VectorXcd& u, const ModeBasis& basis, double s,
                    double k, int rank = 1);

struct SeminormResult {
  double value = 0.0;
  bool converged = true;
  int iterations = 0;
};

/// ||k||_{s,t,t-l}: the H^{s,t} -> H^{s,t-l} operator norm of A, computed by
/// power iteration on the weighted map.
SeminormResult operator_seminorm(const LinearOp& A, const ModeBasis& basis,
                                 int rank, double s, double t, double l,
                                 double tol = 1e-8, int max_iter = 10000);
SeminormResult operator_seminorm(const GridOperator& A, double s, double t,
                                 double l, double tol = 1e-8,
                                 int max_iter = 10000);

struct TraceClassReport {
  double trace_norm = 0.0;   // singular value sum
  double mapping_norm = 0.0; // ||T : L^2 -> H^{s,k}||
  double constant = 0.0;     // empirical trace_norm / mapping_norm
  bool mapping_finite = true;
};

/// Numeric check of the trace-class criterion via the L^2 -> H^{s,k}
/// mapping norm; requires s > q and k > p.
TraceClassReport trace_class_check(const GridOperator& T, double s, double k,
                                   int q, int p = 1);

}  // namespace tvc
