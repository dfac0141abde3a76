#include "tvc/transverse.hpp"

#include <cmath>

namespace tvc {

namespace {

using TComp = TransverseSymbol::Component;

// eta-derivative of a transverse component (same scheme as the classical
// symbol fields: exact radial scaling + spectral angular part).
TComp tcomp_deta(const TComp& c, const SphereGrid& sg, int ny, int rank,
                 int axis) {
  TComp out;
  out.degree = c.degree - 1.0;
  out.data.assign(c.data.size(), MatrixXcd::Zero(rank, rank));
  const int n = sg.size();
  if (sg.q == 1) {
    for (int yk = 0; yk < ny; ++yk) {
      out.data[yk * 2 + 0] = c.degree * c.data[yk * 2 + 0];
      out.data[yk * 2 + 1] = -c.degree * c.data[yk * 2 + 1];
    }
    return out;
  }
  std::vector<cplx> f(n), df(n);
  for (int yk = 0; yk < ny; ++yk)
    for (int a = 0; a < rank; ++a)
      for (int b = 0; b < rank; ++b) {
        for (int j = 0; j < n; ++j) f[j] = c.data[yk * n + j](a, b);
        for (int j = 0; j < n; ++j) {
          cplx acc = 0.0;
          for (int k = 0; k < n; ++k) {
            int m = k <= n / 2 ? k : k - n;
            if (n % 2 == 0 && m == n / 2) continue;
            cplx ck = 0.0;
            for (int l = 0; l < n; ++l)
              ck += f[l] * std::polar(1.0, -2.0 * pi * m * l / n);
            acc += ck / double(n) * iunit * double(m) *
                   std::polar(1.0, 2.0 * pi * m * j / n);
          }
          df[j] = acc;
        }
        for (int j = 0; j < n; ++j) {
          double phi = sg.angle(j);
          double cs = std::cos(phi), sn = std::sin(phi);
          cplx radial = c.degree * f[j];
          out.data[yk * n + j](a, b) =
              axis == 0 ? cs * radial - sn * df[j] : sn * radial + cs * df[j];
        }
      }
  return out;
}

TComp tcomp_dy(const TComp& c, const std::vector<Axis>& yg, int ns, int rank,
               int d) {
  TComp out;
  out.degree = c.degree;
  out.data.assign(c.data.size(), MatrixXcd::Zero(rank, rank));
  const Axis& ax = yg[d];
  Spectral1D sp(ax);
  int inner = 1;
  for (size_t e = d + 1; e < yg.size(); ++e) inner *= yg[e].n;
  int nyt = 1;
  for (const auto& a : yg) nyt *= a.n;
  int outer = nyt / (inner * ax.n);
  VectorXcd line(ax.n);
  for (int o = 0; o < outer; ++o)
    for (int i = 0; i < inner; ++i)
      for (int node = 0; node < ns; ++node)
        for (int a = 0; a < rank; ++a)
          for (int b = 0; b < rank; ++b) {
            for (int t = 0; t < ax.n; ++t)
              line[t] = c.data[((o * ax.n + t) * inner + i) * ns + node](a, b);
            VectorXcd dl = sp.derivative(line, 1, false);
            for (int t = 0; t < ax.n; ++t)
              out.data[((o * ax.n + t) * inner + i) * ns + node](a, b) = dl[t];
          }
  return out;
}

TComp tcomp_mi(const TComp& c, const std::vector<Axis>& yg,
               const SphereGrid& sg, int ny, int rank, const Multiindex& alpha,
               bool eta_side) {
  TComp cur = c;
  for (size_t d = 0; d < alpha.size(); ++d)
    for (int rep = 0; rep < alpha[d]; ++rep)
      cur = eta_side ? tcomp_deta(cur, sg, ny, rank, static_cast<int>(d))
                     : tcomp_dy(cur, yg, sg.size(), rank, static_cast<int>(d));
  return cur;
}

}  // namespace

TransverseSymbol TransverseSymbol::make(cplx order, int rank,
                                        std::vector<Axis> ygrid,
                                        SphereGrid sgrid,
                                        std::vector<Component> comps) {
  TransverseSymbol s;
  s.order_ = order;
  s.rank_ = rank;
  s.ygrid_ = std::move(ygrid);
  s.sgrid_ = std::move(sgrid);
  require(static_cast<int>(s.ygrid_.size()) == s.sgrid_.q,
          "TransverseSymbol: dimension mismatch");
  const int expect = s.ny_total() * s.sgrid_.size();
  for (size_t j = 0; j < comps.size(); ++j) {
    require(std::abs(comps[j].degree - (order - double(j))) < 1e-9,
            "TransverseSymbol: degree off the ladder");
    require(static_cast<int>(comps[j].data.size()) == expect,
            "TransverseSymbol: component shape mismatch");
  }
  s.comps_ = std::move(comps);
  require(!s.comps_.empty(), "TransverseSymbol: no components");
  return s;
}

TransverseSymbol TransverseSymbol::zero(cplx order, int rank,
                                        const std::vector<Axis>& ygrid,
                                        const SphereGrid& sgrid, int depth) {
  std::vector<Component> comps(depth + 1);
  int nyt = 1;
  for (const auto& a : ygrid) nyt *= a.n;
  for (int j = 0; j <= depth; ++j) {
    comps[j].degree = order - double(j);
    comps[j].data.assign(nyt * sgrid.size(), MatrixXcd::Zero(rank, rank));
  }
  return make(order, rank, ygrid, sgrid, std::move(comps));
}

TransverseSymbol TransverseSymbol::from_functions(
    cplx order, const std::vector<Axis>& ygrid, const SphereGrid& sgrid,
    const std::vector<std::function<cplx(const VectorXd&, const VectorXd&)>>&
        ladder) {
  TransverseSymbol s = zero(order, 1, ygrid, sgrid, int(ladder.size()) - 1);
  for (size_t j = 0; j < ladder.size(); ++j)
    for (int yk = 0; yk < s.ny_total(); ++yk)
      for (int node = 0; node < s.ns(); ++node) {
        MatrixXcd m(1, 1);
        m(0, 0) = ladder[j](s.y_point(yk), sgrid.nodes[node]);
        s.comps_[j].data[s.index(yk, node)] = m;
      }
  return s;
}

TransverseSymbol TransverseSymbol::identity(const std::vector<Axis>& ygrid,
                                            const SphereGrid& sgrid, int rank,
                                            int depth) {
  TransverseSymbol s = zero(0.0, rank, ygrid, sgrid, depth);
  for (int yk = 0; yk < s.ny_total(); ++yk)
    for (int node = 0; node < s.ns(); ++node)
      s.comps_[0].data[s.index(yk, node)] =
          MatrixXcd::Identity(rank, rank);
  return s;
}

VectorXd TransverseSymbol::y_point(int yk) const {
  VectorXd p(ygrid_.size());
  int f = yk;
  for (int d = static_cast<int>(ygrid_.size()) - 1; d >= 0; --d) {
    p[d] = ygrid_[d].node(f % ygrid_[d].n);
    f /= ygrid_[d].n;
  }
  return p;
}

MatrixXcd TransverseSymbol::eval_at(int yk, const VectorXd& eta) const {
  MatrixXcd out = MatrixXcd::Zero(rank_, rank_);
  for (const auto& c : comps_) {
    HomogeneousComponent h(c.degree, rank_, sgrid_);
    for (int node = 0; node < ns(); ++node) h.at(node) = c.data[index(yk, node)];
    out += h.eval(eta);
  }
  return out;
}

TransverseSymbol TransverseSymbol::padded(int depth) const {
  if (depth <= this->depth()) return *this;
  TransverseSymbol out = *this;
  const int nyt = ny_total() * ns();
  for (int j = this->depth() + 1; j <= depth; ++j) {
    Component c;
    c.degree = order_ - double(j);
    c.data.assign(nyt, MatrixXcd::Zero(rank_, rank_));
    out.comps_.push_back(std::move(c));
  }
  return out;
}

TransverseSymbol TransverseSymbol::scaled(cplx c) const {
  TransverseSymbol out = *this;
  for (auto& comp : out.comps_)
    for (auto& m : comp.data) m *= c;
  return out;
}

TransverseSymbol TransverseSymbol::operator+(const TransverseSymbol& o) const {
  require(std::abs(order_ - o.order_) < 1e-9, "tsymbol sum: order mismatch");
  TransverseSymbol out = *this;
  out.comps_.resize(std::max(comps_.size(), o.comps_.size()));
  for (size_t j = 0; j < out.comps_.size(); ++j) {
    if (j >= comps_.size()) out.comps_[j] = o.comps_[j];
    else if (j < o.comps_.size())
      for (size_t i = 0; i < out.comps_[j].data.size(); ++i)
        out.comps_[j].data[i] += o.comps_[j].data[i];
  }
  return out;
}

TransverseSymbol TransverseSymbol::operator-(const TransverseSymbol& o) const {
  return *this + o.scaled(-1.0);
}

double TransverseSymbol::max_norm() const {
  double m = 0.0;
  for (const auto& c : comps_)
    for (const auto& v : c.data) m = std::max(m, v.cwiseAbs().maxCoeff());
  return m;
}

TransverseSymbol compose(const TransverseSymbol& a, const TransverseSymbol& b) {
  require(a.ny_total() == b.ny_total() && a.ns() == b.ns(),
          "tcompose: grid mismatch");
  require(a.rank() == b.rank(), "tcompose: rank mismatch");
  const int depth = std::min(a.depth(), b.depth());
  TransverseSymbol c = TransverseSymbol::zero(a.order() + b.order(), a.rank(),
                                              a.ygrid(), a.sphere(), depth);
  const int q = a.sphere().q;
  for (int ja = 0; ja <= a.depth(); ++ja)
    for (int jb = 0; jb <= b.depth(); ++jb) {
      if (ja + jb > depth) continue;
      for (int n = 0; ja + jb + n <= depth; ++n)
        for (const auto& alpha : multiindices(q, n)) {
          TComp U = tcomp_mi(a.components()[ja], a.ygrid(), a.sphere(),
                             a.ny_total(), a.rank(), alpha, true);
          TComp V = tcomp_mi(b.components()[jb], b.ygrid(), b.sphere(),
                             b.ny_total(), b.rank(), alpha, false);
          const double scale = 1.0 / mi_factorial(alpha);
          auto& out = c.components()[ja + jb + n];
          for (size_t i = 0; i < out.data.size(); ++i)
            out.data[i] += scale * U.data[i] * V.data[i];
        }
    }
  return c;
}

TransverseSymbol::Component transversal_symbol(const FullSymbol& P,
                                               const std::vector<Axis>& ygrid,
                                               const SphereGrid& sgrid,
                                               bool check_x_independence,
                                               double tol) {
  require(!P.components.empty(), "transversal_symbol: no principal component");
  TransverseSymbol probe = TransverseSymbol::zero(P.order, P.rank, ygrid,
                                                  sgrid, 0);
  auto& comp = probe.components()[0];
  const int nyt = probe.ny_total();
  const auto& lead = P.components.front();
  for (int yk = 0; yk < nyt; ++yk) {
    VectorXd y = probe.y_point(yk);
    for (int node = 0; node < sgrid.size(); ++node) {
      MatrixXcd v = lead(0.0, y, 0.0, sgrid.nodes[node]);
      if (check_x_independence) {
        for (double x : {0.7, 2.1, 4.4}) {
          MatrixXcd vx = lead(x, y, 0.0, sgrid.nodes[node]);
          require((vx - v).cwiseAbs().maxCoeff() < tol,
                  "transversal_symbol: restriction retains x-dependence");
        }
      }
      comp.data[probe.index(yk, node)] = v;
    }
  }
  return comp;
}

namespace {

// Shared Leibniz loop for both module actions.  p_left: Op(p) o Op(k),
// eta-derivatives fall on p and y-derivatives on k; otherwise swapped.
ClassicalSymbol module_compose_impl(const TransverseSymbol& p,
                                    const ClassicalSymbol& k, int depth,
                                    bool p_left) {
  require(p.ny_total() == k.grid().ny_total() && p.ns() == k.ns(),
          "module_compose: grid mismatch");
  require(p.rank() == k.rank(), "module_compose: rank mismatch");
  ClassicalSymbol out = ClassicalSymbol::zero(
      p.order() + k.order(), k.rank(), k.grid(), k.sphere(), k.cutoff(),
      depth);
  const int q = k.grid().q();
  const int nx = k.nx(), nyt = k.grid().ny_total(), ns = k.ns();

  for (int jp = 0; jp <= p.depth(); ++jp)
    for (int jk = 0; jk <= k.depth(); ++jk) {
      if (jp + jk > depth) continue;
      for (int n = 0; jp + jk + n <= depth; ++n)
        for (const auto& alpha : multiindices(q, n)) {
          TComp pc = tcomp_mi(p.components()[jp], p.ygrid(), p.sphere(),
                              p.ny_total(), p.rank(), alpha, p_left);
          ClassicalSymbol::Component kc = component_derivative(
              k, k.components()[jk], alpha, !p_left);
          const double scale = 1.0 / mi_factorial(alpha);
          auto& dst = out.components()[jp + jk + n];
          for (int xi = 0; xi < nx; ++xi)
            for (int xj = 0; xj < nx; ++xj)
              for (int yk = 0; yk < nyt; ++yk)
                for (int node = 0; node < ns; ++node) {
                  const auto& km =
                      kc.data[((xi * nx + xj) * nyt + yk) * ns + node];
                  const auto& pm = pc.data[yk * ns + node];
                  auto& dm =
                      dst.data[((xi * nx + xj) * nyt + yk) * ns + node];
                  dm += scale * (p_left ? (pm * km).eval() : (km * pm).eval());
                }
        }
    }
  return out;
}

}  // namespace

ClassicalSymbol module_compose_left(const TransverseSymbol& p,
                                    const ClassicalSymbol& k, int depth) {
  return module_compose_impl(p, k, depth, true);
}

ClassicalSymbol module_compose_right(const ClassicalSymbol& k,
                                     const TransverseSymbol& p, int depth) {
  return module_compose_impl(p, k, depth, false);
}

ClassicalSymbol module_commutator(const TransverseSymbol& p,
                                  const ClassicalSymbol& k, int depth) {
  return module_compose_left(p, k, depth) - module_compose_right(k, p, depth);
}

TransverseSymbol::Component transverse_component_derivative(
    const std::vector<Axis>& ygrid, const SphereGrid& sgrid, int rank,
    const TransverseSymbol::Component& c, const Multiindex& alpha,
    bool eta_side) {
  int nyt = 1;
  for (const auto& a : ygrid) nyt *= a.n;
  return tcomp_mi(c, ygrid, sgrid, nyt, rank, alpha, eta_side);
}

}  // namespace tvc
