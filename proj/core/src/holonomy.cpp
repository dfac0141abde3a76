#include "tvc/holonomy.hpp"

namespace tvc {

InvarianceReport holonomy_invariance_check(
    const std::function<MatrixXcd(double, const VectorXd&, const VectorXd&)>&
        sigmaP,
    const HolonomyAction& H, const SphereGrid& sgrid, double tol) {
  InvarianceReport rep;
  for (const auto& g : H.samples) {
    for (int node = 0; node < sgrid.size(); ++node) {
      VectorXd eta = sgrid.nodes[node];
      VectorXd pulled = g.dh_star * eta;
      MatrixXcd lhs =
          g.T * sigmaP(g.x_src, g.y_src, pulled) * g.T.adjoint();
      MatrixXcd rhs = sigmaP(g.x_tgt, g.y_tgt, eta);
      double defect = (lhs - rhs).cwiseAbs().maxCoeff();
      rep.max_defect = std::max(rep.max_defect, defect);
    }
  }
  rep.pass = rep.max_defect <= tol;
  return rep;
}

}  // namespace tvc
