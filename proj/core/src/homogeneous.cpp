#include "tvc/homogeneous.hpp"

#include <cmath>

namespace tvc {

namespace {

// Geometric Gauss-Legendre panels on [c,1].
void inner_panels(double c, std::vector<double>& r, std::vector<double>& w) {
  r.clear();
  w.clear();
  std::vector<double> gx, gw;
  double hi = 1.0;
  while (hi > c * (1.0 + 1e-12)) {
    double lo = std::max(c, hi / 2.0);
    gauss_legendre(24, lo, hi, gx, gw);
    r.insert(r.end(), gx.begin(), gx.end());
    w.insert(w.end(), gw.begin(), gw.end());
    hi = lo;
  }
}

// Composite Gauss-Legendre on geometric panels [1,2], [2,4], ..., up to R.
void outer_panels(double R, std::vector<double>& r, std::vector<double>& w) {
  r.clear();
  w.clear();
  std::vector<double> gx, gw;
  double lo = 1.0;
  while (lo < R) {
    double hi = std::min(2.0 * lo, R);
    gauss_legendre(48, lo, hi, gx, gw);
    r.insert(r.end(), gx.begin(), gx.end());
    w.insert(w.end(), gw.begin(), gw.end());
    lo = hi;
  }
}

}  // namespace

TestFunction TestFunction::gaussian(int q, double a) {
  TestFunction phi;
  phi.eval = [a](const VectorXd& eta) -> cplx {
    return std::exp(-a * eta.squaredNorm());
  };
  phi.derivative_at_zero = [a, q](const Multiindex& alpha) -> cplx {
    require(static_cast<int>(alpha.size()) == q, "jet: multiindex length");
    double v = 1.0;
    for (int d = 0; d < q; ++d) v *= gaussian_jet_1d(a, alpha[d]);
    return v;
  };
  phi.decay_radius = std::sqrt(42.0 / a) + 2.0;
  phi.taylor_scale = 1.0 / std::sqrt(a);
  return phi;
}

TestFunction TestFunction::monomial_gaussian(int q, Multiindex beta,
                                             double a) {
  require(static_cast<int>(beta.size()) == q, "monomial_gaussian: beta size");
  TestFunction phi;
  phi.eval = [a, beta](const VectorXd& eta) -> cplx {
    double mono = 1.0;
    for (size_t d = 0; d < beta.size(); ++d)
      mono *= std::pow(eta[d], beta[d]);
    return mono * std::exp(-a * eta.squaredNorm());
  };
  phi.derivative_at_zero = [a, beta, q](const Multiindex& alpha) -> cplx {
    require(static_cast<int>(alpha.size()) == q, "jet: multiindex length");
    double v = 1.0;
    for (int d = 0; d < q; ++d) {
      int n = alpha[d], b = beta[d];
      if (n < b) return 0.0;
      // d^n(t^b g)(0) = C(n,b) b! g^{(n-b)}(0)
      double c = 1.0;
      for (int j = 0; j < b; ++j) c *= double(n - j) / double(j + 1);
      double bf = 1.0;
      for (int j = 2; j <= b; ++j) bf *= j;
      v *= c * bf * gaussian_jet_1d(a, n - b);
    }
    return v;
  };
  phi.decay_radius = std::sqrt(42.0 / a) + 6.0;
  phi.taylor_scale = 1.0 / std::sqrt(a);
  return phi;
}

TestFunction TestFunction::rescaled(const TestFunction& phi, int q,
                                    double lambda) {
  TestFunction out;
  auto base_eval = phi.eval;
  auto base_jet = phi.derivative_at_zero;
  out.eval = [base_eval, lambda, q](const VectorXd& eta) -> cplx {
    return std::pow(lambda, q) * base_eval(lambda * eta);
  };
  out.derivative_at_zero = [base_jet, lambda, q](const Multiindex& a) -> cplx {
    return std::pow(lambda, q + mi_order(a)) * base_jet(a);
  };
  out.max_jet_order = phi.max_jet_order;
  out.decay_radius = phi.decay_radius / lambda + 1.0;
  out.taylor_scale = phi.taylor_scale / lambda;
  return out;
}

ExtensionResult extend_homogeneous(const HomogeneousComponent& sigma,
                                   const TestFunction& phi) {
  const int q = sigma.grid().q;
  const cplx d = sigma.degree();
  const cplx s = d + double(q);

  ExtensionResult res;
  const bool critical = std::abs(s.imag()) < 1e-9 &&
                        near_integer(s.real()) && std::round(s.real()) <= 0.0;
  res.is_canonical = !critical;
  const int k = critical ? int(-std::round(s.real())) : 0;

  // Jet order of the subtraction inside |eta| <= 1.
  int J;
  if (critical) {
    J = k;
  } else {
    J = std::max(-1, int(std::floor(-s.real())));
  }
  if (phi.max_jet_order >= 0 && J > phi.max_jet_order)
    throw Error("extend_homogeneous: insufficient derivative data at 0 for "
                "degree " + std::to_string(d.real()));

  // Angular average G(r) = int_S Tr sigma(omega) phi(r omega) d omega,
  // with weights folded into the traces.
  const auto& grid = sigma.grid();
  std::vector<cplx> wtr(grid.size());
  for (int i = 0; i < grid.size(); ++i)
    wtr[i] = grid.weights[i] * sigma.at(i).trace();
  auto G = [&](double r) -> cplx {
    cplx acc = 0.0;
    for (int i = 0; i < grid.size(); ++i)
      acc += wtr[i] * phi.eval(r * grid.nodes[i]);
    return acc;
  };

  // G^{(j)}(0)/j! via exact jets and sphere moments; the series is extended
  // well past J so the small-radius region can be summed instead of
  // quadratured (kills the jet-subtraction cancellation for rescaled phi).
  const bool unlimited = phi.max_jet_order < 0;
  const int Jbig = unlimited ? J + 80 : std::min(phi.max_jet_order, J + 80);
  std::vector<cplx> jet(Jbig + 1, 0.0);
  for (int j = 0; j <= Jbig; ++j) {
    cplx acc = 0.0;
    for (const auto& alpha : multiindices(q, j))
      acc += phi.derivative_at_zero(alpha) * sphere_moment(sigma, alpha) /
             mi_factorial(alpha);
    jet[j] = acc;
  }

  // series radius: inside the comfortable Taylor zone of phi
  double c = unlimited ? std::min(1.0, 2.0 * phi.taylor_scale)
                       : std::min(1.0, 1e-4);

  // int_0^c r^{s-1}(G - jet_J) dr as a convergent series
  cplx inner = 0.0;
  for (int j = J + 1; j <= Jbig; ++j)
    inner += jet[j] * std::pow(cplx(c), s + double(j)) / (s + double(j));

  // int_c^1 r^{s-1} G dr by plain quadrature (no subtraction)
  std::vector<double> rr, rw;
  if (c < 1.0) {
    inner_panels(c, rr, rw);
    for (size_t i = 0; i < rr.size(); ++i)
      inner += rw[i] * std::pow(cplx(rr[i]), s - 1.0) * G(rr[i]);
  }

  // minus int_c^1 r^{s-1} jet_J dr, in closed form
  for (int j = 0; j <= J; ++j) {
    cplx term;
    if (critical && j == k)
      term = -std::log(c);  // int_c^1 r^{-1} dr
    else
      term = (1.0 - std::pow(cplx(c), s + double(j))) / (s + double(j));
    inner -= jet[j] * term;
  }

  // Analytic add-backs; the 1/(s+j) pole term is dropped at j=k (finite part).
  cplx addback = 0.0;
  for (int j = 0; j <= J; ++j) {
    if (critical && j == k) continue;
    addback += jet[j] / (s + double(j));
  }

  // Outer integral over [1, R].
  std::vector<double> orr, orw;
  outer_panels(std::max(2.0, phi.decay_radius), orr, orw);
  cplx outer = 0.0;
  for (size_t i = 0; i < orr.size(); ++i)
    outer += orw[i] * std::pow(cplx(orr[i]), s - 1.0) * G(orr[i]);

  res.pairing = inner + addback + outer;

  if (critical) {
    for (const auto& alpha : multiindices(q, k))
      res.log_coefficients[alpha] =
          sphere_moment(sigma, alpha) / mi_factorial(alpha);
  }
  return res;
}

}  // namespace tvc
