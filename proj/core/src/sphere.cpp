#include "tvc/sphere.hpp"

#include <cmath>

namespace tvc {

double SphereGrid::surface_volume(int q) {
  if (q == 1) return 2.0;
  if (q == 2) return 2.0 * pi;
  throw Error("SphereGrid: q must be 1 or 2");
}

SphereGrid SphereGrid::make(int q, int n_circle) {
  SphereGrid g;
  g.q = q;
  if (q == 1) {
    g.nodes = {VectorXd::Constant(1, 1.0), VectorXd::Constant(1, -1.0)};
    g.weights = {1.0, 1.0};
  } else if (q == 2) {
    require(n_circle >= 4, "SphereGrid: need at least 4 circle nodes");
    for (int j = 0; j < n_circle; ++j) {
      double phi = 2.0 * pi * j / n_circle;
      VectorXd v(2);
      v << std::cos(phi), std::sin(phi);
      g.nodes.push_back(v);
      g.weights.push_back(2.0 * pi / n_circle);
    }
  } else {
    throw Error("SphereGrid: q must be 1 or 2");
  }
  return g;
}

double SphereGrid::angle(int i) const {
  require(q == 2, "SphereGrid::angle: q=2 only");
  return 2.0 * pi * i / size();
}

void SphereGrid::validate() const {
  double total = 0.0;
  for (size_t i = 0; i < nodes.size(); ++i) {
    require(weights[i] > 0.0, "SphereGrid: nonpositive weight");
    require(std::abs(nodes[i].norm() - 1.0) < 1e-12,
            "SphereGrid: node off the unit sphere");
    total += weights[i];
  }
  require(std::abs(total - surface_volume(q)) < 1e-12 * surface_volume(q),
          "SphereGrid: weights do not sum to vol(S^{q-1})");
}

HomogeneousComponent::HomogeneousComponent(cplx degree, int rank,
                                           SphereGrid grid)
    : degree_(degree), rank_(rank), grid_(std::move(grid)) {
  values_.assign(grid_.size(), MatrixXcd::Zero(rank_, rank_));
}

HomogeneousComponent HomogeneousComponent::from_function(
    cplx degree, int rank, const SphereGrid& grid,
    const std::function<MatrixXcd(const VectorXd&)>& on_sphere) {
  HomogeneousComponent h(degree, rank, grid);
  for (int i = 0; i < grid.size(); ++i) {
    MatrixXcd m = on_sphere(grid.nodes[i]);
    require(m.rows() == rank && m.cols() == rank,
            "HomogeneousComponent: rank mismatch in sampler");
    h.values_[i] = m;
  }
  return h;
}

MatrixXcd HomogeneousComponent::eval(const VectorXd& eta) const {
  double r = eta.norm();
  require(r > 0.0, "HomogeneousComponent::eval: eta must be nonzero");
  cplx radial = std::pow(cplx(r), degree_);
  if (grid_.q == 1) {
    return radial * values_[eta[0] > 0 ? 0 : 1];
  }
  // Trigonometric interpolation of each entry around the circle.
  double phi = std::atan2(eta[1], eta[0]);
  const int n = grid_.size();
  MatrixXcd out = MatrixXcd::Zero(rank_, rank_);
  for (int a = 0; a < rank_; ++a)
    for (int b = 0; b < rank_; ++b) {
      // coefficients by direct DFT; grids are small
      cplx acc = 0.0;
      for (int k = 0; k < n; ++k) {
        int m = k <= n / 2 ? k : k - n;
        cplx ck = 0.0;
        for (int j = 0; j < n; ++j)
          ck += values_[j](a, b) * std::polar(1.0, -2.0 * pi * m * j / n);
        acc += ck / double(n) * std::polar(1.0, m * phi);
      }
      out(a, b) = acc;
    }
  return radial * out;
}

HomogeneousComponent HomogeneousComponent::deta(int axis) const {
  HomogeneousComponent out(degree_ - 1.0, rank_, grid_);
  if (grid_.q == 1) {
    // d/deta |eta|^d h(sign eta) = d sign(eta) |eta|^{d-1} h(sign eta)
    out.values_[0] = degree_ * values_[0];
    out.values_[1] = -degree_ * values_[1];
    return out;
  }
  // Polar split: d/d eta_1 = cos phi d_r - sin phi / r d_phi,
  //              d/d eta_2 = sin phi d_r + cos phi / r d_phi.
  const int n = grid_.size();
  std::vector<MatrixXcd> dphi(n, MatrixXcd::Zero(rank_, rank_));
  for (int a = 0; a < rank_; ++a)
    for (int b = 0; b < rank_; ++b) {
      VectorXcd f(n);
      for (int j = 0; j < n; ++j) f[j] = values_[j](a, b);
      // spectral angular derivative
      VectorXcd c = VectorXcd::Zero(n);
      for (int k = 0; k < n; ++k) {
        int m = k <= n / 2 ? k : k - n;
        cplx ck = 0.0;
        for (int j = 0; j < n; ++j)
          ck += f[j] * std::polar(1.0, -2.0 * pi * m * j / n);
        c[k] = ck / double(n) * iunit * double(m);
        if (n % 2 == 0 && m == n / 2) c[k] = 0.0;
      }
      for (int j = 0; j < n; ++j) {
        cplx acc = 0.0;
        for (int k = 0; k < n; ++k) {
          int m = k <= n / 2 ? k : k - n;
          acc += c[k] * std::polar(1.0, 2.0 * pi * m * j / n);
        }
        dphi[j](a, b) = acc;
      }
    }
  for (int j = 0; j < n; ++j) {
    double phi = grid_.angle(j);
    double cs = std::cos(phi), sn = std::sin(phi);
    if (axis == 0)
      out.values_[j] = cs * degree_ * values_[j] - sn * dphi[j];
    else
      out.values_[j] = sn * degree_ * values_[j] + cs * dphi[j];
  }
  return out;
}

HomogeneousComponent HomogeneousComponent::operator*(
    const HomogeneousComponent& o) const {
  require(grid_.size() == o.grid_.size() && grid_.q == o.grid_.q,
          "HomogeneousComponent: grid mismatch in product");
  HomogeneousComponent out(degree_ + o.degree_, rank_, grid_);
  for (int i = 0; i < grid_.size(); ++i)
    out.values_[i] = values_[i] * o.values_[i];
  return out;
}

HomogeneousComponent HomogeneousComponent::scaled(cplx c) const {
  HomogeneousComponent out = *this;
  for (auto& m : out.values_) m *= c;
  return out;
}

HomogeneousComponent& HomogeneousComponent::operator+=(
    const HomogeneousComponent& o) {
  require(std::abs(degree_ - o.degree_) < 1e-9,
          "HomogeneousComponent: degree mismatch in sum");
  require(grid_.size() == o.grid_.size(), "grid mismatch in sum");
  for (int i = 0; i < grid_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

double HomogeneousComponent::max_norm() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, v.cwiseAbs().maxCoeff());
  return m;
}

cplx sphere_integral(const HomogeneousComponent& h) {
  cplx acc = 0.0;
  for (int i = 0; i < h.grid().size(); ++i)
    acc += h.grid().weights[i] * h.at(i).trace();
  return acc;
}

cplx sphere_moment(const HomogeneousComponent& h, const Multiindex& alpha) {
  require(static_cast<int>(alpha.size()) == h.grid().q,
          "sphere_moment: multiindex length mismatch");
  cplx acc = 0.0;
  for (int i = 0; i < h.grid().size(); ++i) {
    double mono = 1.0;
    for (int d = 0; d < h.grid().q; ++d)
      mono *= std::pow(h.grid().nodes[i][d], alpha[d]);
    acc += h.grid().weights[i] * mono * h.at(i).trace();
  }
  return acc;
}

}  // namespace tvc
