#include "tvc/traces.hpp"

#include <cmath>

#include "tvc/report.hpp"

namespace tvc {

cplx canonical_trace(const ClassicalSymbol& A) {
  const auto& g = A.grid();
  const double wx = g.x.spacing();
  double wy = 1.0;
  for (const auto& a : g.y) wy *= a.spacing();

  const int N = std::max(0, int(std::ceil(A.order().real() + g.q())) + 1);
  const int depth_needed = std::max(N, A.depth());

  cplx total = 0.0;
  for (int xi = 0; xi < g.x.n; ++xi)
    for (int yk = 0; yk < g.ny_total(); ++yk) {
      EtaSymbol prof = A.diagonal_profile(xi, yk);
      total += wx * wy * regularized_integral(prof, depth_needed);
    }
  return total;
}

ResidueTraceResult residue_trace(const ClassicalSymbol& A) {
  ResidueTraceResult res;
  res.form_samples.header = {"x", "y0", "y1", "node", "re", "im"};
  const auto& g = A.grid();
  const double wx = g.x.spacing();
  double wy = 1.0;
  for (const auto& a : g.y) wy *= a.spacing();
  const int q = g.q();

  int crit = -1;
  for (int j = 0; j <= A.depth(); ++j) {
    cplx d = A.components()[j].degree;
    if (std::abs(d + double(q)) < 1e-9) crit = j;
  }
  if (crit < 0) {
    res.tau = 0.0;
    return res;
  }

  const auto& comp = A.components()[crit];
  cplx tau = 0.0;
  for (int xi = 0; xi < g.x.n; ++xi)
    for (int yk = 0; yk < g.ny_total(); ++yk) {
      VectorXd y = g.y_point(yk);
      for (int node = 0; node < A.ns(); ++node) {
        cplx val = comp.data[A.index(xi, xi, yk, node)].trace();
        tau += wx * wy * A.sphere().weights[node] * val;
        res.form_samples.rows.push_back(
            {g.x.node(xi), y[0], q > 1 ? y[1] : 0.0, double(node), val.real(),
             val.imag()});
      }
    }
  res.tau = tau;
  return res;
}

FamilyResidueReport family_residue_check(
    const std::function<ClassicalSymbol(cplx)>& family, cplx z_k,
    double order_slope, double fit_radius, int samples) {
  FamilyResidueReport rep;
  auto f = [&](cplx z) { return canonical_trace(family(z)); };
  rep.fit = laurent_fit(f, z_k, fit_radius, samples);
  rep.fit_residue = rep.fit.residue;

  ClassicalSymbol at_pole = family(z_k);
  const int q = at_pole.grid().q();
  rep.tau = residue_trace(at_pole).tau;
  rep.expected = -rep.tau / (order_slope * std::pow(2.0 * pi, q));
  rep.empirical_ratio = std::abs(rep.tau) > 0 ? rep.fit_residue / rep.tau
                                              : cplx(0.0);
  double denom = std::max({std::abs(rep.fit_residue), std::abs(rep.expected),
                           1.0});
  rep.defect = std::abs(rep.fit_residue - rep.expected) / denom;
  return rep;
}

}  // namespace tvc
