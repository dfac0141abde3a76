#pragma once

#include <optional>

#include "tvc/axis.hpp"
#include "tvc/radial.hpp"
#include "tvc/sphere.hpp"

namespace tvc {

/// Chart grids for kernels k(x, x', y, eta): one leaf axis (x and x' share
/// it) and q transverse axes.  Charts are torus fundamental domains.
struct SpatialGrid {
  Axis x;
  std::vector<Axis> y;

  int q() const { return static_cast<int>(y.size()); }
  int ny_total() const {
    int n = 1;
    for (const auto& a : y) n *= a.n;
    return n;
  }
  double y_volume() const {
    double v = 1.0;
    for (const auto& a : y) v *= a.circumference;
    return v;
  }
  int y_flat(const std::vector<int>& idx) const {
    int f = 0;
    for (size_t d = 0; d < y.size(); ++d) f = f * y[d].n + idx[d];
    return f;
  }
  std::vector<int> y_unflat(int f) const {
    std::vector<int> idx(y.size());
    for (int d = static_cast<int>(y.size()) - 1; d >= 0; --d) {
      idx[d] = f % y[d].n;
      f /= y[d].n;
    }
    return idx;
  }
  VectorXd y_point(int f) const {
    auto idx = y_unflat(f);
    VectorXd p(y.size());
    for (size_t d = 0; d < y.size(); ++d) p[d] = y[d].node(idx[d]);
    return p;
  }
  bool operator==(const SpatialGrid& o) const;
};

/// Affine foliated coordinate change x1 = ax x + bx (leaf, y-independent),
/// y1 = diag(ay) y + by (transverse).  The transpose-inverse Jacobian acts
/// on eta as eta1 = eta / ay componentwise.
struct ChartChange {
  double ax = 1.0, bx = 0.0;
  VectorXd ay, by;

  void validate(int q) const;
  ChartChange after(const ChartChange& first) const;  // this o first
};

/// A truncated classical transversal symbol of class S^{z,-infty}:
/// k(x,x',y,eta) = sum_{j=0}^{N} theta(eta) k_{z-j}(x,x',y,eta), with
/// component j homogeneous in eta of degree z-j.  Matrix-valued of the given
/// rank; spatial dependence sampled on torus grids, eta-dependence stored as
/// (degree, sphere samples).
class ClassicalSymbol {
 public:
  struct Component {
    cplx degree;
    // layout: ((xi*nx + xj)*ny_total + yk)*ns + node, each entry rank x rank
    std::vector<MatrixXcd> data;
  };

  ClassicalSymbol() = default;

  /// Validating constructor ("make_classical_symbol").
  static ClassicalSymbol make(cplx order, int rank, SpatialGrid grid,
                              SphereGrid sgrid, CutoffSpec cutoff,
                              std::vector<Component> components);

  /// Zero symbol of the given order with depth+1 component slots.
  static ClassicalSymbol zero(cplx order, int rank, const SpatialGrid& grid,
                              const SphereGrid& sgrid,
                              const CutoffSpec& cutoff, int depth);

  /// Separable builder: leaf factor f(x,x'), transverse factor g(y) and a
  /// radial ladder of (degree, sphere profile) pairs.
  static ClassicalSymbol separable(
      cplx order, const SpatialGrid& grid, const SphereGrid& sgrid,
      const CutoffSpec& cutoff,
      const std::function<cplx(double, double)>& leaf,
      const std::function<cplx(const VectorXd&)>& transverse,
      const std::vector<std::pair<cplx, std::function<cplx(const VectorXd&)>>>&
          ladder);

  cplx order() const { return order_; }
  int rank() const { return rank_; }
  int depth() const { return static_cast<int>(comps_.size()) - 1; }
  const SpatialGrid& grid() const { return grid_; }
  const SphereGrid& sphere() const { return sgrid_; }
  const CutoffSpec& cutoff() const { return cutoff_; }
  const std::vector<Component>& components() const { return comps_; }
  std::vector<Component>& components() { return comps_; }

  int nx() const { return grid_.x.n; }
  int ns() const { return sgrid_.size(); }
  int index(int xi, int xj, int yk, int node) const {
    return ((xi * nx() + xj) * grid_.ny_total() + yk) * ns() + node;
  }

  /// Truncated sum with cutoff at an arbitrary point (spectral interpolation
  /// off-grid in the spatial slots).
  MatrixXcd evaluate(double x, double xp, const VectorXd& y,
                     const VectorXd& eta) const;

  /// eta-profile on the leaf diagonal at grid point (xi, yk).
  EtaSymbol diagonal_profile(int xi, int yk) const;

  /// Optional exact eta-dependence on the diagonal (for symbols that expand
  /// a known smooth function); used by the canonical trace.
  void set_exact_diagonal(
      std::function<MatrixXcd(int xi, int yk, const VectorXd& eta)> f,
      double radius);
  bool has_exact_diagonal() const { return bool(exact_diag_); }

  /// Leibniz/crossed-product composition, truncated at min depth.
  friend ClassicalSymbol compose(const ClassicalSymbol& A,
                                 const ClassicalSymbol& B);

  ClassicalSymbol adjoint() const;
  ClassicalSymbol change_chart(const ChartChange& c) const;

  /// Extend the ladder with zero components (exact for finite ladders).
  ClassicalSymbol padded(int depth) const;

  ClassicalSymbol scaled(cplx c) const;
  ClassicalSymbol operator+(const ClassicalSymbol& o) const;
  ClassicalSymbol operator-(const ClassicalSymbol& o) const;

  /// Recorded order of the first neglected component (metadata).
  cplx remainder_order() const { return order_ - double(depth() + 1); }

  double max_norm() const;

  std::string to_json() const;
  static ClassicalSymbol from_json(const std::string& text);

 private:
  cplx order_{};
  int rank_ = 1;
  SpatialGrid grid_;
  SphereGrid sgrid_;
  CutoffSpec cutoff_;
  std::vector<Component> comps_;
  std::optional<std::function<MatrixXcd(int, int, const VectorXd&)>>
      exact_diag_;
  double exact_radius_ = 64.0;
};

ClassicalSymbol compose(const ClassicalSymbol& A, const ClassicalSymbol& B);

/// Multiindex derivative of one component field: exact homogeneous
/// eta-derivatives (eta_side) or spectral D_y^alpha.
ClassicalSymbol::Component component_derivative(
    const ClassicalSymbol& host, const ClassicalSymbol::Component& c,
    const Multiindex& alpha, bool eta_side);

}  // namespace tvc
