#include "tvc/classical.hpp"

#include <cmath>

#include "tvc/report.hpp"

namespace tvc {

namespace {

using Component = ClassicalSymbol::Component;

struct Shape {
  int nx, nyt, ns, rank;
  int idx(int xi, int xj, int yk, int node) const {
    return ((xi * nx + xj) * nyt + yk) * ns + node;
  }
  int total() const { return nx * nx * nyt * ns; }
};

Shape shape_of(const ClassicalSymbol& s) {
  return {s.nx(), s.grid().ny_total(), s.ns(), s.rank()};
}

// Exact homogeneous eta-derivative of a component field (degree drops by 1).
Component comp_deta(const Component& c, const Shape& sh, const SphereGrid& sg,
                    int axis) {
  Component out;
  out.degree = c.degree - 1.0;
  out.data.assign(c.data.size(), MatrixXcd::Zero(sh.rank, sh.rank));
  const int spatial = sh.nx * sh.nx * sh.nyt;
  if (sg.q == 1) {
    for (int p = 0; p < spatial; ++p) {
      out.data[p * 2 + 0] = c.degree * c.data[p * 2 + 0];
      out.data[p * 2 + 1] = -c.degree * c.data[p * 2 + 1];
    }
    return out;
  }
  // q = 2: radial degree scaling plus spectral angular derivative.
  const int n = sh.ns;
  std::vector<cplx> f(n), df(n);
  for (int p = 0; p < spatial; ++p)
    for (int a = 0; a < sh.rank; ++a)
      for (int b = 0; b < sh.rank; ++b) {
        for (int j = 0; j < n; ++j) f[j] = c.data[p * n + j](a, b);
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
          out.data[p * n + j](a, b) =
              axis == 0 ? cs * radial - sn * df[j] : sn * radial + cs * df[j];
        }
      }
  return out;
}

// Spectral derivative D_y = -i d/dy along transverse axis d.
Component comp_dy(const Component& c, const Shape& sh, const SpatialGrid& g,
                  int d) {
  Component out;
  out.degree = c.degree;
  out.data.assign(c.data.size(), MatrixXcd::Zero(sh.rank, sh.rank));
  const Axis& ax = g.y[d];
  Spectral1D sp(ax);
  // stride of axis d inside the flattened y index
  int inner = 1;
  for (size_t e = d + 1; e < g.y.size(); ++e) inner *= g.y[e].n;
  int outer = sh.nyt / (inner * ax.n);
  VectorXcd line(ax.n);
  for (int xi = 0; xi < sh.nx; ++xi)
    for (int xj = 0; xj < sh.nx; ++xj)
      for (int o = 0; o < outer; ++o)
        for (int i = 0; i < inner; ++i)
          for (int node = 0; node < sh.ns; ++node)
            for (int a = 0; a < sh.rank; ++a)
              for (int b = 0; b < sh.rank; ++b) {
                for (int t = 0; t < ax.n; ++t) {
                  int yk = (o * ax.n + t) * inner + i;
                  line[t] = c.data[sh.idx(xi, xj, yk, node)](a, b);
                }
                VectorXcd dl = sp.derivative(line, 1, false);
                for (int t = 0; t < ax.n; ++t) {
                  int yk = (o * ax.n + t) * inner + i;
                  out.data[sh.idx(xi, xj, yk, node)](a, b) = dl[t];
                }
              }
  return out;
}

Component comp_mi_derivative(const Component& c, const Shape& sh,
                             const SpatialGrid& g, const SphereGrid& sg,
                             const Multiindex& alpha, bool eta_side) {
  Component cur = c;
  for (size_t d = 0; d < alpha.size(); ++d)
    for (int rep = 0; rep < alpha[d]; ++rep)
      cur = eta_side ? comp_deta(cur, sh, sg, static_cast<int>(d))
                     : comp_dy(cur, sh, g, static_cast<int>(d));
  return cur;
}

}  // namespace

ClassicalSymbol::Component component_derivative(
    const ClassicalSymbol& host, const ClassicalSymbol::Component& c,
    const Multiindex& alpha, bool eta_side) {
  return comp_mi_derivative(c, shape_of(host), host.grid(), host.sphere(),
                            alpha, eta_side);
}

bool SpatialGrid::operator==(const SpatialGrid& o) const {
  if (!(x == o.x) || y.size() != o.y.size()) return false;
  for (size_t d = 0; d < y.size(); ++d)
    if (!(y[d] == o.y[d])) return false;
  return true;
}

void ChartChange::validate(int q) const {
  require(ax != 0.0, "ChartChange: leaf map not invertible");
  require(ay.size() == q && by.size() == q, "ChartChange: dimension mismatch");
  for (int d = 0; d < q; ++d)
    require(ay[d] != 0.0, "ChartChange: transverse map not invertible");
}

ChartChange ChartChange::after(const ChartChange& first) const {
  ChartChange c;
  c.ax = ax * first.ax;
  c.bx = ax * first.bx + bx;
  c.ay = ay.cwiseProduct(first.ay);
  c.by = ay.cwiseProduct(first.by) + by;
  return c;
}

ClassicalSymbol ClassicalSymbol::make(cplx order, int rank, SpatialGrid grid,
                                      SphereGrid sgrid, CutoffSpec cutoff,
                                      std::vector<Component> components) {
  cutoff.validate();
  sgrid.validate();
  require(static_cast<int>(grid.y.size()) == sgrid.q,
          "ClassicalSymbol: transverse dimension does not match sphere");
  ClassicalSymbol s;
  s.order_ = order;
  s.rank_ = rank;
  s.grid_ = std::move(grid);
  s.sgrid_ = std::move(sgrid);
  s.cutoff_ = cutoff;
  const int expect =
      s.grid_.x.n * s.grid_.x.n * s.grid_.ny_total() * s.sgrid_.size();
  for (size_t j = 0; j < components.size(); ++j) {
    const auto& c = components[j];
    require(std::abs(c.degree - (order - double(j))) < 1e-9,
            "ClassicalSymbol: component degree off the z-j ladder");
    require(static_cast<int>(c.data.size()) == expect,
            "ClassicalSymbol: component grid shape mismatch");
    for (const auto& m : c.data)
      require(m.rows() == rank && m.cols() == rank,
              "ClassicalSymbol: component rank mismatch");
  }
  s.comps_ = std::move(components);
  require(!s.comps_.empty(), "ClassicalSymbol: need at least one component");
  return s;
}

ClassicalSymbol ClassicalSymbol::zero(cplx order, int rank,
                                      const SpatialGrid& grid,
                                      const SphereGrid& sgrid,
                                      const CutoffSpec& cutoff, int depth) {
  std::vector<Component> comps(depth + 1);
  const int total = grid.x.n * grid.x.n * grid.ny_total() * sgrid.size();
  for (int j = 0; j <= depth; ++j) {
    comps[j].degree = order - double(j);
    comps[j].data.assign(total, MatrixXcd::Zero(rank, rank));
  }
  return make(order, rank, grid, sgrid, cutoff, std::move(comps));
}

ClassicalSymbol ClassicalSymbol::separable(
    cplx order, const SpatialGrid& grid, const SphereGrid& sgrid,
    const CutoffSpec& cutoff,
    const std::function<cplx(double, double)>& leaf,
    const std::function<cplx(const VectorXd&)>& transverse,
    const std::vector<std::pair<cplx, std::function<cplx(const VectorXd&)>>>&
        ladder) {
  require(!ladder.empty(), "separable: empty ladder");
  std::vector<Component> comps;
  const int nx = grid.x.n, nyt = grid.ny_total(), ns = sgrid.size();
  int level = 0;
  for (const auto& [deg, prof] : ladder) {
    require(std::abs(deg - (order - double(level))) < 1e-9,
            "separable: ladder degree mismatch");
    Component c;
    c.degree = deg;
    c.data.assign(nx * nx * nyt * ns, MatrixXcd::Zero(1, 1));
    for (int xi = 0; xi < nx; ++xi)
      for (int xj = 0; xj < nx; ++xj) {
        cplx lf = leaf(grid.x.node(xi), grid.x.node(xj));
        for (int yk = 0; yk < nyt; ++yk) {
          cplx tv = lf * transverse(grid.y_point(yk));
          for (int node = 0; node < ns; ++node) {
            MatrixXcd m(1, 1);
            m(0, 0) = tv * prof(sgrid.nodes[node]);
            c.data[((xi * nx + xj) * nyt + yk) * ns + node] = m;
          }
        }
      }
    comps.push_back(std::move(c));
    ++level;
  }
  return make(order, 1, grid, sgrid, cutoff, std::move(comps));
}

MatrixXcd ClassicalSymbol::evaluate(double x, double xp, const VectorXd& y,
                                    const VectorXd& eta) const {
  MatrixXcd out = MatrixXcd::Zero(rank_, rank_);
  double r = eta.norm();
  double t = cutoff_(r);
  if (t == 0.0) return out;

  const Shape sh = shape_of(*this);
  Spectral1D spx(grid_.x);
  // Spatial trigonometric interpolation, axis by axis.
  for (const auto& comp : comps_) {
    std::vector<MatrixXcd> at_nodes(sh.ns, MatrixXcd::Zero(rank_, rank_));
    for (int node = 0; node < sh.ns; ++node)
      for (int a = 0; a < rank_; ++a)
        for (int b = 0; b < rank_; ++b) {
          // reduce x
          VectorXcd gx(sh.nx);
          for (int xj = 0; xj < sh.nx; ++xj) {
            VectorXcd fx(sh.nx);
            for (int xi = 0; xi < sh.nx; ++xi) {
              // reduce y for this (xi,xj)
              cplx acc;
              if (grid_.q() == 1) {
                Spectral1D spy(grid_.y[0]);
                VectorXcd fy(grid_.y[0].n);
                for (int yk = 0; yk < grid_.y[0].n; ++yk)
                  fy[yk] = comp.data[sh.idx(xi, xj, yk, node)](a, b);
                acc = spy.interpolate(fy, y[0]);
              } else {
                Spectral1D sp1(grid_.y[0]), sp2(grid_.y[1]);
                VectorXcd f1(grid_.y[0].n);
                for (int y1 = 0; y1 < grid_.y[0].n; ++y1) {
                  VectorXcd f2(grid_.y[1].n);
                  for (int y2 = 0; y2 < grid_.y[1].n; ++y2)
                    f2[y2] = comp.data[sh.idx(xi, xj, y1 * grid_.y[1].n + y2,
                                              node)](a, b);
                  f1[y1] = sp2.interpolate(f2, y[1]);
                }
                acc = sp1.interpolate(f1, y[0]);
              }
              fx[xi] = acc;
            }
            gx[xj] = spx.interpolate(fx, x);
          }
          at_nodes[node](a, b) = spx.interpolate(gx, xp);
        }
    // eta evaluation through a temporary homogeneous component
    HomogeneousComponent h(comp.degree, rank_, sgrid_);
    for (int node = 0; node < sh.ns; ++node) h.at(node) = at_nodes[node];
    out += t * h.eval(eta);
  }
  return out;
}

EtaSymbol ClassicalSymbol::diagonal_profile(int xi, int yk) const {
  EtaSymbol e;
  e.order = order_;
  e.cutoff = cutoff_;
  for (const auto& comp : comps_) {
    HomogeneousComponent h(comp.degree, rank_, sgrid_);
    for (int node = 0; node < ns(); ++node)
      h.at(node) = comp.data[index(xi, xi, yk, node)];
    e.components.push_back(std::move(h));
  }
  if (exact_diag_) {
    auto f = *exact_diag_;
    e.full = [f, xi, yk](const VectorXd& eta) { return f(xi, yk, eta); };
    e.full_radius = exact_radius_;
  }
  return e;
}

void ClassicalSymbol::set_exact_diagonal(
    std::function<MatrixXcd(int, int, const VectorXd&)> f, double radius) {
  exact_diag_ = std::move(f);
  exact_radius_ = radius;
}

ClassicalSymbol compose(const ClassicalSymbol& A, const ClassicalSymbol& B) {
  require(A.grid() == B.grid(), "compose: spatial grid mismatch");
  require(A.ns() == B.ns() && A.sphere().q == B.sphere().q,
          "compose: sphere grid mismatch");
  require(A.rank() == B.rank(), "compose: rank mismatch");
  const int depth = std::min(A.depth(), B.depth());
  ClassicalSymbol C = ClassicalSymbol::zero(A.order() + B.order(), A.rank(),
                                            A.grid(), A.sphere(), A.cutoff(),
                                            depth);
  const Shape sh = shape_of(A);
  const int q = A.grid().q();
  const double wx = A.grid().x.spacing();

  for (int jA = 0; jA <= A.depth(); ++jA)
    for (int jB = 0; jB <= B.depth(); ++jB) {
      if (jA + jB > depth) continue;
      for (int n = 0; jA + jB + n <= depth; ++n) {
        for (const auto& alpha : multiindices(q, n)) {
          Component U = comp_mi_derivative(A.components()[jA], sh, A.grid(),
                                           A.sphere(), alpha, true);
          Component V = comp_mi_derivative(B.components()[jB], sh, B.grid(),
                                           B.sphere(), alpha, false);
          const double scale = wx / mi_factorial(alpha);
          auto& out = C.components()[jA + jB + n];
          for (int xi = 0; xi < sh.nx; ++xi)
            for (int xj = 0; xj < sh.nx; ++xj)
              for (int yk = 0; yk < sh.nyt; ++yk)
                for (int node = 0; node < sh.ns; ++node) {
                  MatrixXcd acc = MatrixXcd::Zero(sh.rank, sh.rank);
                  for (int xm = 0; xm < sh.nx; ++xm)
                    acc += U.data[sh.idx(xi, xm, yk, node)] *
                           V.data[sh.idx(xm, xj, yk, node)];
                  out.data[sh.idx(xi, xj, yk, node)] += scale * acc;
                }
        }
      }
    }
  return C;
}

ClassicalSymbol ClassicalSymbol::adjoint() const {
  const Shape sh = shape_of(*this);
  ClassicalSymbol out = zero(std::conj(order_), rank_, grid_, sgrid_, cutoff_,
                             depth());
  for (int level = 0; level <= depth(); ++level) {
    for (int j = 0; j <= level; ++j) {
      int n = level - j;
      // swap-conjugate of component j
      Component sw;
      sw.degree = std::conj(comps_[j].degree);
      sw.data.assign(comps_[j].data.size(), MatrixXcd::Zero(rank_, rank_));
      for (int xi = 0; xi < sh.nx; ++xi)
        for (int xj = 0; xj < sh.nx; ++xj)
          for (int yk = 0; yk < sh.nyt; ++yk)
            for (int node = 0; node < sh.ns; ++node)
              sw.data[sh.idx(xi, xj, yk, node)] =
                  comps_[j].data[sh.idx(xj, xi, yk, node)].adjoint();
      for (const auto& alpha : multiindices(grid_.q(), n)) {
        Component t = comp_mi_derivative(sw, sh, grid_, sgrid_, alpha, true);
        t = comp_mi_derivative(t, sh, grid_, sgrid_, alpha, false);
        const double scale = 1.0 / mi_factorial(alpha);
        auto& dst = out.comps_[level];
        for (size_t i = 0; i < dst.data.size(); ++i)
          dst.data[i] += scale * t.data[i];
      }
    }
  }
  return out;
}

ClassicalSymbol ClassicalSymbol::change_chart(const ChartChange& c) const {
  c.validate(grid_.q());
  SpatialGrid ng = grid_;
  ng.x.circumference = std::abs(c.ax) * grid_.x.circumference;
  for (int d = 0; d < grid_.q(); ++d)
    ng.y[d].circumference = std::abs(c.ay[d]) * grid_.y[d].circumference;

  ClassicalSymbol out = zero(order_, rank_, ng, sgrid_, cutoff_, depth());
  const Shape sh = shape_of(*this);
  const double jac = 1.0 / std::abs(c.ax);

  const bool aligned = c.bx == 0.0 && c.by.isZero() && c.ax > 0.0 &&
                       (c.ay.array() > 0.0).all();

  for (int j = 0; j <= depth(); ++j) {
    for (int xi = 0; xi < sh.nx; ++xi)
      for (int xj = 0; xj < sh.nx; ++xj)
        for (int yk = 0; yk < sh.nyt; ++yk) {
          // old-chart spatial point
          double x_old = (ng.x.node(xi) - c.bx) / c.ax;
          double xp_old = (ng.x.node(xj) - c.bx) / c.ax;
          VectorXd ypt = ng.y_point(yk);
          VectorXd y_old(grid_.q());
          for (int d = 0; d < grid_.q(); ++d)
            y_old[d] = (ypt[d] - c.by[d]) / c.ay[d];

          // spatial values per node (grid-aligned fast path or interpolation)
          HomogeneousComponent h(comps_[j].degree, rank_, sgrid_);
          if (aligned) {
            for (int node = 0; node < sh.ns; ++node)
              h.at(node) = comps_[j].data[sh.idx(xi, xj, yk, node)];
          } else {
            Spectral1D spx(grid_.x);
            for (int node = 0; node < sh.ns; ++node)
              for (int a = 0; a < rank_; ++a)
                for (int b = 0; b < rank_; ++b) {
                  VectorXcd gx(sh.nx);
                  for (int xb = 0; xb < sh.nx; ++xb) {
                    VectorXcd fx(sh.nx);
                    for (int xa = 0; xa < sh.nx; ++xa) {
                      cplx acc;
                      if (grid_.q() == 1) {
                        Spectral1D spy(grid_.y[0]);
                        VectorXcd fy(grid_.y[0].n);
                        for (int t = 0; t < grid_.y[0].n; ++t)
                          fy[t] = comps_[j].data[sh.idx(xa, xb, t, node)](a, b);
                        acc = spy.interpolate(fy, y_old[0]);
                      } else {
                        Spectral1D sp1(grid_.y[0]), sp2(grid_.y[1]);
                        VectorXcd f1(grid_.y[0].n);
                        for (int y1 = 0; y1 < grid_.y[0].n; ++y1) {
                          VectorXcd f2(grid_.y[1].n);
                          for (int y2 = 0; y2 < grid_.y[1].n; ++y2)
                            f2[y2] = comps_[j].data[sh.idx(
                                xa, xb, y1 * grid_.y[1].n + y2, node)](a, b);
                          f1[y1] = sp2.interpolate(f2, y_old[1]);
                        }
                        acc = sp1.interpolate(f1, y_old[0]);
                      }
                      fx[xa] = acc;
                    }
                    gx[xb] = spx.interpolate(fx, xp_old);
                  }
                  h.at(node)(a, b) = spx.interpolate(gx, x_old);
                }
          }
          // eta substitution: eta_old = diag(ay) * omega_new
          for (int node = 0; node < sh.ns; ++node) {
            VectorXd eta_old = sgrid_.nodes[node];
            for (int d = 0; d < grid_.q(); ++d) eta_old[d] *= c.ay[d];
            out.comps_[j].data[sh.idx(xi, xj, yk, node)] =
                jac * h.eval(eta_old);
          }
        }
  }
  return out;
}

ClassicalSymbol ClassicalSymbol::padded(int depth) const {
  if (depth <= this->depth()) return *this;
  ClassicalSymbol out = *this;
  const int total = nx() * nx() * grid_.ny_total() * ns();
  for (int j = this->depth() + 1; j <= depth; ++j) {
    Component c;
    c.degree = order_ - double(j);
    c.data.assign(total, MatrixXcd::Zero(rank_, rank_));
    out.comps_.push_back(std::move(c));
  }
  return out;
}

ClassicalSymbol ClassicalSymbol::scaled(cplx s) const {
  ClassicalSymbol out = *this;
  for (auto& c : out.comps_)
    for (auto& m : c.data) m *= s;
  return out;
}

ClassicalSymbol ClassicalSymbol::operator+(const ClassicalSymbol& o) const {
  require(std::abs(order_ - o.order_) < 1e-9, "symbol sum: order mismatch");
  require(grid_ == o.grid_ && ns() == o.ns(), "symbol sum: grid mismatch");
  ClassicalSymbol out = *this;
  out.comps_.resize(std::max(comps_.size(), o.comps_.size()));
  for (size_t j = 0; j < out.comps_.size(); ++j) {
    if (j >= comps_.size()) out.comps_[j] = o.comps_[j];
    else if (j < o.comps_.size()) {
      for (size_t i = 0; i < out.comps_[j].data.size(); ++i)
        out.comps_[j].data[i] += o.comps_[j].data[i];
    }
  }
  return out;
}

ClassicalSymbol ClassicalSymbol::operator-(const ClassicalSymbol& o) const {
  return *this + o.scaled(-1.0);
}

double ClassicalSymbol::max_norm() const {
  double m = 0.0;
  for (const auto& c : comps_)
    for (const auto& v : c.data) m = std::max(m, v.cwiseAbs().maxCoeff());
  return m;
}

std::string ClassicalSymbol::to_json() const {
  nlohmann::ordered_json j;
  j["order"] = {order_.real(), order_.imag()};
  j["p"] = 1;
  j["q"] = grid_.q();
  j["rank"] = rank_;
  j["cutoff"] = {{"r0", cutoff_.r0}, {"r1", cutoff_.r1}};
  j["grids"] = {{"x", {{"n", grid_.x.n}, {"circumference", grid_.x.circumference}}}};
  nlohmann::ordered_json ys = nlohmann::ordered_json::array();
  for (const auto& a : grid_.y)
    ys.push_back({{"n", a.n}, {"circumference", a.circumference}});
  j["grids"]["y"] = ys;
  j["grids"]["sphere_nodes"] = ns();
  nlohmann::ordered_json comps = nlohmann::ordered_json::array();
  for (const auto& c : comps_) {
    nlohmann::ordered_json jc;
    jc["degree"] = {c.degree.real(), c.degree.imag()};
    jc["grid_shape"] = {nx(), nx(), grid_.ny_total(), ns(), rank_, rank_};
    std::vector<double> flat;
    flat.reserve(c.data.size() * rank_ * rank_ * 2);
    for (const auto& m : c.data)
      for (int a = 0; a < rank_; ++a)
        for (int b = 0; b < rank_; ++b) {
          flat.push_back(m(a, b).real());
          flat.push_back(m(a, b).imag());
        }
    jc["data"] = base64_encode_doubles(flat);
    comps.push_back(std::move(jc));
  }
  j["components"] = std::move(comps);
  return j.dump(2);
}

ClassicalSymbol ClassicalSymbol::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  cplx order(j.at("order")[0].get<double>(), j.at("order")[1].get<double>());
  int rank = j.at("rank").get<int>();
  int q = j.at("q").get<int>();
  SpatialGrid g;
  g.x.n = j.at("grids").at("x").at("n").get<int>();
  g.x.circumference = j.at("grids").at("x").at("circumference").get<double>();
  for (const auto& a : j.at("grids").at("y")) {
    Axis ax;
    ax.n = a.at("n").get<int>();
    ax.circumference = a.at("circumference").get<double>();
    g.y.push_back(ax);
  }
  require(static_cast<int>(g.y.size()) == q, "from_json: q mismatch");
  SphereGrid sg = SphereGrid::make(q, j.at("grids").at("sphere_nodes").get<int>());
  CutoffSpec cut;
  cut.r0 = j.at("cutoff").at("r0").get<double>();
  cut.r1 = j.at("cutoff").at("r1").get<double>();
  std::vector<Component> comps;
  for (const auto& jc : j.at("components")) {
    Component c;
    c.degree = cplx(jc.at("degree")[0].get<double>(),
                    jc.at("degree")[1].get<double>());
    std::vector<double> flat = base64_decode_doubles(jc.at("data").get<std::string>());
    const int total = g.x.n * g.x.n * g.ny_total() * sg.size();
    require(static_cast<int>(flat.size()) == total * rank * rank * 2,
            "from_json: data length mismatch");
    c.data.assign(total, MatrixXcd::Zero(rank, rank));
    size_t p = 0;
    for (int i = 0; i < total; ++i)
      for (int a = 0; a < rank; ++a)
        for (int b = 0; b < rank; ++b) {
          c.data[i](a, b) = cplx(flat[p], flat[p + 1]);
          p += 2;
        }
    comps.push_back(std::move(c));
  }
  return make(order, rank, g, sg, cut, std::move(comps));
}

}  // namespace tvc
