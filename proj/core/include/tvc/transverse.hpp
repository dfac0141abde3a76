#pragma once

#include "tvc/classical.hpp"

namespace tvc {

/// Usual pseudodifferential full symbol p(x,y,xi,eta) on a foliated chart,
/// given by homogeneous-in-(xi,eta) component callbacks (leading first).
struct FullSymbol {
  cplx order{};
  int rank = 1;
  int q = 1;
  std::vector<std::function<MatrixXcd(double x, const VectorXd& y, double xi,
                                      const VectorXd& eta)>>
      components;
};

/// Classical symbol of a transverse pseudodifferential operator: a ladder
/// a(y,eta) = sum_j a_{m-j}(y,eta) of eta-homogeneous components over the
/// transverse grid.  This is the coefficient data consumed by the resolvent
/// recursion and complex powers.
class TransverseSymbol {
 public:
  struct Component {
    cplx degree;
    std::vector<MatrixXcd> data;  // yk*ns + node
  };

  TransverseSymbol() = default;

  static TransverseSymbol make(cplx order, int rank, std::vector<Axis> ygrid,
                               SphereGrid sgrid,
                               std::vector<Component> comps);
  static TransverseSymbol zero(cplx order, int rank,
                               const std::vector<Axis>& ygrid,
                               const SphereGrid& sgrid, int depth);
  static TransverseSymbol from_functions(
      cplx order, const std::vector<Axis>& ygrid, const SphereGrid& sgrid,
      const std::vector<std::function<cplx(const VectorXd& y,
                                           const VectorXd& omega)>>& ladder);
  /// Identity: single order-0 component == I.
  static TransverseSymbol identity(const std::vector<Axis>& ygrid,
                                   const SphereGrid& sgrid, int rank,
                                   int depth = 0);

  cplx order() const { return order_; }
  int rank() const { return rank_; }
  int depth() const { return static_cast<int>(comps_.size()) - 1; }
  const std::vector<Axis>& ygrid() const { return ygrid_; }
  const SphereGrid& sphere() const { return sgrid_; }
  const std::vector<Component>& components() const { return comps_; }
  std::vector<Component>& components() { return comps_; }

  int ny_total() const {
    int n = 1;
    for (const auto& a : ygrid_) n *= a.n;
    return n;
  }
  int ns() const { return sgrid_.size(); }
  int index(int yk, int node) const { return yk * ns() + node; }
  VectorXd y_point(int yk) const;

  /// Evaluate the ladder (no cutoff) at a grid transverse point.
  MatrixXcd eval_at(int yk, const VectorXd& eta) const;

  /// Extend the ladder with zero components (exact for finite ladders).
  TransverseSymbol padded(int depth) const;

  TransverseSymbol scaled(cplx c) const;
  TransverseSymbol operator+(const TransverseSymbol& o) const;
  TransverseSymbol operator-(const TransverseSymbol& o) const;
  double max_norm() const;

  /// Standard pseudodifferential composition on the transversal:
  /// sum_alpha (1/alpha!) d_eta^alpha a . D_y^alpha b, truncated.
  friend TransverseSymbol compose(const TransverseSymbol& a,
                                  const TransverseSymbol& b);

 private:
  cplx order_{};
  int rank_ = 1;
  std::vector<Axis> ygrid_;
  SphereGrid sgrid_;
  std::vector<Component> comps_;
};

TransverseSymbol compose(const TransverseSymbol& a, const TransverseSymbol& b);

/// Restriction of the principal symbol to the conormal directions xi = 0
/// (model charts).  Optionally verifies x-independence of the restriction.
TransverseSymbol::Component transversal_symbol(
    const FullSymbol& P, const std::vector<Axis>& ygrid,
    const SphereGrid& sgrid, bool check_x_independence = false,
    double tol = 1e-9);

/// Module actions of a transverse operator on the crossed-product kernels:
/// compose_left = Op(p) o Op(k), compose_right = Op(k) o Op(p).
ClassicalSymbol module_compose_left(const TransverseSymbol& p,
                                    const ClassicalSymbol& k, int depth);
ClassicalSymbol module_compose_right(const ClassicalSymbol& k,
                                     const TransverseSymbol& p, int depth);

/// Symbol-level commutator [Op(p), Op(k)] truncated at the given depth.
ClassicalSymbol module_commutator(const TransverseSymbol& p,
                                  const ClassicalSymbol& k, int depth);

/// Multiindex derivative of a free-standing transverse component field.
TransverseSymbol::Component transverse_component_derivative(
    const std::vector<Axis>& ygrid, const SphereGrid& sgrid, int rank,
    const TransverseSymbol::Component& c, const Multiindex& alpha,
    bool eta_side);

}  // namespace tvc
