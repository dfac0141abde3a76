#include "tvc/radial.hpp"

#include <cmath>
#include <sstream>

namespace tvc {

namespace {

double bump(double t) {
  // e^{-1/t} profile: smooth, exactly 0 at t<=0 and 1 at t>=1.
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  double a = std::exp(-1.0 / t);
  double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

}  // namespace

double CutoffSpec::operator()(double r) const {
  return bump((r - r0) / (r1 - r0));
}

double CutoffSpec::derivative(double r) const {
  double h = 1e-6 * (r1 - r0);
  return ((*this)(r + h) - (*this)(r - h)) / (2.0 * h);
}

void CutoffSpec::validate() const {
  require(r0 > 0.0 && r1 > r0, "CutoffSpec: need 0 < r0 < r1");
}

int EtaSymbol::q() const {
  require(!components.empty(), "EtaSymbol: no components");
  return components.front().grid().q;
}

int EtaSymbol::rank() const {
  require(!components.empty(), "EtaSymbol: no components");
  return components.front().rank();
}

MatrixXcd EtaSymbol::ladder_eval(const VectorXd& eta) const {
  const int r = rank();
  MatrixXcd out = MatrixXcd::Zero(r, r);
  double t = cutoff(eta.norm());
  if (t == 0.0) return out;
  for (const auto& h : components) out += t * h.eval(eta);
  return out;
}

namespace {

// Two-sided geometric panels on [r0, r1]: the bump profile is analytic in
// the interior but flat-singular at the endpoints, so panels cluster there.
void bump_panels(double r0, double r1, std::vector<double>& x,
                 std::vector<double>& w) {
  x.clear();
  w.clear();
  std::vector<double> gx, gw;
  const double mid = 0.5 * (r0 + r1);
  const double width = r1 - r0;
  double lo = r0 + width * std::pow(2.0, -14);
  // left side: panels doubling away from r0
  double step = width * std::pow(2.0, -14);
  while (lo < mid) {
    double hi = std::min(mid, lo + step);
    gauss_legendre(16, lo, hi, gx, gw);
    x.insert(x.end(), gx.begin(), gx.end());
    w.insert(w.end(), gw.begin(), gw.end());
    lo = hi;
    step *= 2.0;
  }
  // right side mirrored
  double hi2 = r1 - width * std::pow(2.0, -14);
  step = width * std::pow(2.0, -14);
  while (hi2 > mid) {
    double lo2 = std::max(mid, hi2 - step);
    gauss_legendre(16, lo2, hi2, gx, gw);
    x.insert(x.end(), gx.begin(), gx.end());
    w.insert(w.end(), gw.begin(), gw.end());
    hi2 = lo2;
    step *= 2.0;
  }
}

}  // namespace

cplx regularized_radial(const CutoffSpec& cutoff, cplx s) {
  require(std::abs(s) > 1e-12,
          "regularized_radial: pole at s=0 (critical degree)");
  std::vector<double> x, w;
  bump_panels(cutoff.r0, cutoff.r1, x, w);
  cplx bridge = 0.0;
  for (size_t i = 0; i < x.size(); ++i)
    bridge += w[i] * cutoff(x[i]) * std::pow(cplx(x[i]), s - 1.0);
  return bridge - std::pow(cplx(cutoff.r1), s) / s;
}

cplx regularized_integral(const EtaSymbol& sigma, int N) {
  const int q = sigma.q();
  if (double(N) < sigma.order.real() + q)
    throw Error("regularized_integral: N too small (need N >= Re z + q)");

  cplx total = 0.0;
  for (const auto& h : sigma.components) {
    cplx s = h.degree() + double(q);
    cplx S = sphere_integral(h);
    // Only the degree exactly -q component obstructs the radial
    // continuation; deeper ladder members integrate convergently against
    // the cutoff tail.
    const bool critical = std::abs(s) < 1e-9;
    if (critical) {
      double scale = std::max(1.0, h.max_norm());
      if (std::abs(S) > 1e-10 * scale) {
        std::ostringstream os;
        os << "regularized_integral: nonzero log obstruction S = " << std::abs(S)
           << " at critical degree " << h.degree().real();
        throw Error(os.str());
      }
      continue;  // angular trace integral vanishes identically
    }
    total += S * regularized_radial(sigma.cutoff, s);
  }

  // Exact-function correction: integrate full - ladder when supplied.
  // Panels never straddle the cutoff radii (the bump is flat-singular
  // there); the angular factor is the sphere quadrature.
  if (sigma.full) {
    const auto& f = *sigma.full;
    const SphereGrid grid = sigma.components.front().grid();
    cplx corr = 0.0;
    auto angular = [&](double rr) -> cplx {
      cplx ang = 0.0;
      for (int j = 0; j < grid.size(); ++j) {
        VectorXd eta = rr * grid.nodes[j];
        ang += grid.weights[j] * (f(eta) - sigma.ladder_eval(eta)).trace();
      }
      return ang * std::pow(rr, q - 1);
    };
    std::vector<double> gx, gw;
    auto add_range = [&](double a, double b, int nodes) {
      double lo = a, hi = a == 0.0 ? 0.25 : std::min(b, 2.0 * a);
      while (lo < b) {
        gauss_legendre(nodes, lo, std::min(hi, b), gx, gw);
        for (size_t i = 0; i < gx.size(); ++i) corr += gw[i] * angular(gx[i]);
        lo = std::min(hi, b);
        hi *= 2.0;
      }
    };
    add_range(0.0, sigma.cutoff.r0, 48);
    bump_panels(sigma.cutoff.r0, sigma.cutoff.r1, gx, gw);
    {
      std::vector<double> bx = gx, bw = gw;
      for (size_t i = 0; i < bx.size(); ++i) corr += bw[i] * angular(bx[i]);
    }
    add_range(sigma.cutoff.r1, sigma.full_radius, 48);
    total += corr;
  }

  return total / std::pow(2.0 * pi, q);
}

cplx plain_integral(const EtaSymbol& sigma) {
  require(sigma.order.real() < -sigma.q(),
          "plain_integral: order must be < -q");
  const int q = sigma.q();
  auto f = [&](const VectorXd& eta) -> MatrixXcd {
    if (sigma.full) return (*sigma.full)(eta);
    return sigma.ladder_eval(eta);
  };
  std::vector<double> x, w;
  cplx total = 0.0;
  const SphereGrid grid = sigma.components.front().grid();
  auto add_range = [&](double a, double b, int nodes) {
    std::vector<double> gx, gw;
    double lo = a, hi = std::max(a * 2.0, a + 0.25);
    if (a == 0.0) hi = 0.25;
    while (lo < b) {
      gauss_legendre(nodes, lo, std::min(hi, b), gx, gw);
      for (size_t i = 0; i < gx.size(); ++i) {
        cplx ang = 0.0;
        for (int j = 0; j < grid.size(); ++j) {
          VectorXd eta = gx[i] * grid.nodes[j];
          ang += grid.weights[j] * f(eta).trace();
        }
        total += gw[i] * std::pow(gx[i], q - 1) * ang;
      }
      lo = std::min(hi, b);
      hi *= 2.0;
    }
  };
  add_range(0.0, sigma.cutoff.r0, 48);
  {
    // bump region with endpoint-clustered panels
    std::vector<double> bx, bw;
    bump_panels(sigma.cutoff.r0, sigma.cutoff.r1, bx, bw);
    for (size_t i = 0; i < bx.size(); ++i) {
      cplx ang = 0.0;
      for (int j = 0; j < grid.size(); ++j) {
        VectorXd eta = bx[i] * grid.nodes[j];
        ang += grid.weights[j] * f(eta).trace();
      }
      total += bw[i] * std::pow(bx[i], q - 1) * ang;
    }
  }
  add_range(sigma.cutoff.r1, sigma.full_radius, 48);
  return total / std::pow(2.0 * pi, q);
}

}  // namespace tvc
