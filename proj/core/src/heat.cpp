#include "tvc/heat.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace tvc {

double heat_leading_formula(
    const TransverseSymbol& principal,
    const std::function<double(double, const VectorXd&)>& unit_weight,
    const Axis& leaf, double radial_cut) {
  const int q = principal.sphere().q;
  const int nyt = principal.ny_total(), ns = principal.ns();
  // radial quadrature nodes for int_0^R e^{-sigma} r^{q-1} dr
  std::vector<double> rx, rw;
  gauss_legendre(160, 0.0, radial_cut, rx, rw);

  double total = 0.0;
  double wy = 1.0;
  for (const auto& a : principal.ygrid()) wy *= a.spacing();
  for (int yk = 0; yk < nyt; ++yk) {
    // (2pi)^{-q} int Tr e^{-sigma_P(y,eta)} d eta
    double fiber = 0.0;
    for (int node = 0; node < ns; ++node) {
      const MatrixXcd& s0 = principal.components()[0].data[yk * ns + node];
      Eigen::SelfAdjointEigenSolver<MatrixXcd> es(s0);
      for (size_t i = 0; i < rx.size(); ++i) {
        double rm = std::pow(rx[i], principal.order().real());
        double tr_exp = 0.0;
        for (int j = 0; j < es.eigenvalues().size(); ++j)
          tr_exp += std::exp(-rm * es.eigenvalues()[j]);
        fiber += principal.sphere().weights[node] * rw[i] *
                 std::pow(rx[i], q - 1) * tr_exp;
      }
    }
    fiber /= std::pow(2.0 * pi, q);
    // chart integral of the unit weight
    double leaf_int = 0.0;
    VectorXd y = principal.y_point(yk);
    for (int xi = 0; xi < leaf.n; ++xi)
      leaf_int += leaf.spacing() * unit_weight(leaf.node(xi), y);
    total += wy * leaf_int * fiber;
  }
  return total;
}

HeatReport heat_coefficients(const GridOperator& P, const GridOperator* pairing,
                             const TransverseSymbol& principal,
                             const std::function<double(double, const VectorXd&)>&
                                 unit_weight,
                             const Axis& leaf, int q, int m, int L,
                             double t_lo, double t_hi, int t_count) {
  HeatReport rep;
  rep.samples.header = {"t", "trace"};

  // oracle samples on a log grid
  std::vector<double> ts(t_count), hs(t_count);
  for (int i = 0; i < t_count; ++i) {
    double u = double(i) / (t_count - 1);
    ts[i] = t_lo * std::pow(t_hi / t_lo, u);
    hs[i] = eigen_oracle_heat(P, ts[i], pairing).real();
    rep.samples.rows.push_back({ts[i], hs[i]});
  }

  // ladder fit with L+2 terms, ridge-regularized
  const int terms = L + 2;
  MatrixXd B(t_count, terms);
  for (int i = 0; i < t_count; ++i)
    for (int l = 0; l < terms; ++l)
      B(i, l) = std::pow(ts[i], double(-q + l) / double(m));
  Eigen::BDCSVD<MatrixXd> svd(B, Eigen::ComputeThinU | Eigen::ComputeThinV);
  rep.expansion.condition =
      svd.singularValues()(0) /
      svd.singularValues()(svd.singularValues().size() - 1);
  VectorXd h = Eigen::Map<VectorXd>(hs.data(), t_count);
  // ridge via truncated SVD solve
  VectorXd c = VectorXd::Zero(terms);
  {
    double ridge = 1e-12 * svd.singularValues()(0);
    VectorXd uth = svd.matrixU().transpose() * h;
    for (int j = 0; j < svd.singularValues().size(); ++j) {
      double s = svd.singularValues()(j);
      uth[j] *= s / (s * s + ridge * ridge);
    }
    c = svd.matrixV() * uth;
  }
  for (int l = 0; l < terms; ++l) {
    rep.expansion.exponents.push_back(double(-q + l) / double(m));
    rep.expansion.coefficients.push_back(c[l]);
  }
  rep.expansion.fit_error = (B * c - h).norm() / std::sqrt(double(t_count));
  rep.a0_fitted = c[0];

  // free leading-exponent fit on the small-t half of the grid
  {
    int n = 0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int i = 0; i < t_count / 2; ++i) {
      double x = std::log(ts[i]), y = std::log(std::abs(hs[i]));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++n;
    }
    rep.leading_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }

  rep.a0_formula = heat_leading_formula(principal, unit_weight, leaf);
  return rep;
}

}  // namespace tvc
