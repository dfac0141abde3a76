#include "tvc/gridop.hpp"

#include <cmath>
#include <random>

#include "tvc/report.hpp"

namespace tvc {

namespace {

// Coefficient slot for a signed mode; -1 outside the unambiguous band.
int slot_for_mode(int n_grid, int a) {
  if (2 * std::abs(a) >= n_grid) return -1;
  return ((a % n_grid) + n_grid) % n_grid;
}

// In-place DFT along one axis of a flat tensor of matrices (values ->
// coefficients with 1/N normalization).
void dft_axis(std::vector<MatrixXcd>& data, int n_axis, int stride,
              int repeat_outer) {
  // layout [outer][axis][stride]
  std::vector<MatrixXcd> line(n_axis);
  for (int o = 0; o < repeat_outer; ++o)
    for (int i = 0; i < stride; ++i) {
      for (int t = 0; t < n_axis; ++t)
        line[t] = data[(o * n_axis + t) * stride + i];
      for (int kslot = 0; kslot < n_axis; ++kslot) {
        int m = kslot <= n_axis / 2 ? kslot : kslot - n_axis;
        MatrixXcd acc = MatrixXcd::Zero(line[0].rows(), line[0].cols());
        for (int t = 0; t < n_axis; ++t)
          acc += line[t] * std::polar(1.0, -2.0 * pi * m * t / n_axis);
        data[(o * n_axis + kslot) * stride + i] = acc / double(n_axis);
      }
    }
}

// Full forward DFT of a (nx, nx, nyt) tensor of matrices; nyt factors into
// the per-axis transverse sizes.
void dft_tensor(std::vector<MatrixXcd>& data, int nx,
                const std::vector<Axis>& yaxes) {
  int nyt = 1;
  for (const auto& a : yaxes) nyt *= a.n;
  dft_axis(data, nx, nx * nyt, 1);
  dft_axis(data, nx, nyt, nx);
  int inner = nyt;
  int outer = nx * nx;
  for (const auto& a : yaxes) {
    inner /= a.n;
    dft_axis(data, a.n, inner, outer);
    outer *= a.n;
  }
}

VectorXd kappa_of(const std::vector<Axis>& yaxes, const std::vector<int>& n) {
  VectorXd k(yaxes.size());
  for (size_t d = 0; d < yaxes.size(); ++d) k[d] = yaxes[d].frequency(n[d]);
  return k;
}

}  // namespace

ModeBasis ModeBasis::product(const ModelFoliation& M, int leaf_trunc,
                             int trans_trunc) {
  require(M.is_product(), "ModeBasis::product: product model required");
  ModeBasis b;
  b.product_ = true;
  b.leaf_trunc_ = leaf_trunc;
  b.trans_trunc_.assign(M.q(), trans_trunc);
  const auto yax = M.transverse_axes(4);
  const Axis xax = M.leaf_axis(4);
  std::vector<int> n(M.q(), -trans_trunc);
  for (int m = -leaf_trunc; m <= leaf_trunc; ++m) {
    // odometer over transverse modes
    std::fill(n.begin(), n.end(), -trans_trunc);
    while (true) {
      ModePoint pt;
      pt.m = m;
      pt.n = n;
      pt.xi = xax.frequency(m);
      pt.eta = kappa_of(yax, n);
      b.pts_.push_back(std::move(pt));
      int d = M.q() - 1;
      while (d >= 0) {
        if (++n[d] <= trans_trunc) break;
        n[d] = -trans_trunc;
        --d;
      }
      if (d < 0) break;
    }
  }
  return b;
}

ModeBasis ModeBasis::kronecker(const ModelFoliation& M, int trunc) {
  require(!M.is_product(), "ModeBasis::kronecker: kronecker model required");
  ModeBasis b;
  b.product_ = false;
  b.leaf_trunc_ = trunc;
  b.trans_trunc_ = {trunc};
  VectorXd v = M.leaf_direction(), w = M.transverse_direction();
  const double l1 = M.spec().circumference_x;
  const double l2 =
      M.spec().circumference_y.empty() ? 2.0 * pi : M.spec().circumference_y[0];
  for (int n1 = -trunc; n1 <= trunc; ++n1)
    for (int n2 = -trunc; n2 <= trunc; ++n2) {
      VectorXd freq(2);
      freq << 2.0 * pi * n1 / l1, 2.0 * pi * n2 / l2;
      ModePoint pt;
      pt.m = n1;
      pt.n = {n2};
      pt.xi = freq.dot(v);
      pt.eta = VectorXd::Constant(1, freq.dot(w));
      b.pts_.push_back(std::move(pt));
    }
  return b;
}

int ModeBasis::index(int m, const std::vector<int>& n) const {
  if (std::abs(m) > leaf_trunc_) return -1;
  int idx = m + leaf_trunc_;
  for (size_t d = 0; d < n.size(); ++d) {
    if (std::abs(n[d]) > trans_trunc_[d]) return -1;
    idx = idx * (2 * trans_trunc_[d] + 1) + (n[d] + trans_trunc_[d]);
  }
  return idx;
}

NormResult operator_norm(const LinearOp& A, std::uint64_t seed, double tol,
                         int max_iter) {
  NormResult res;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  VectorXcd v(A.dim);
  for (int i = 0; i < A.dim; ++i) v[i] = cplx(gauss(rng), gauss(rng));
  v.normalize();
  double prev = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    VectorXcd w = A.apply_adj(A.apply(v));
    double wn = w.norm();
    if (wn == 0.0) {
      res.value = 0.0;
      res.converged = true;
      res.iterations = it;
      return res;
    }
    v = w / wn;
    double lam = std::sqrt(wn);  // |A v| since v is normalized
    res.iterations = it;
    if (it > 4 && std::abs(lam - prev) <= tol * std::max(1.0, lam)) {
      res.value = lam;
      res.converged = true;
      return res;
    }
    prev = lam;
  }
  res.value = prev;
  res.converged = false;
  return res;
}

VectorXcd GridOperator::apply(const VectorXcd& v) const {
  if (diag) return diag->cwiseProduct(v);
  return dense * v;
}

MatrixXcd GridOperator::to_dense() const {
  if (diag) {
    MatrixXcd m = MatrixXcd::Zero(dim(), dim());
    m.diagonal() = *diag;
    return m;
  }
  return dense;
}

double GridOperator::hermitian_defect() const {
  if (diag) {
    double d = 0.0;
    for (int i = 0; i < diag->size(); ++i)
      d = std::max(d, std::abs((*diag)[i].imag()));
    return d;
  }
  return (dense - dense.adjoint()).cwiseAbs().maxCoeff();
}

void GridOperator::enforce_hermitian(double tol) {
  double d = hermitian_defect();
  require(d < tol,
          "GridOperator: hermitian defect " + format_double(d) +
              " exceeds tolerance");
  if (diag) {
    for (int i = 0; i < diag->size(); ++i) (*diag)[i] = (*diag)[i].real();
  } else {
    dense = 0.5 * (dense + dense.adjoint().eval());
  }
  hermitian = true;
}

LinearOp GridOperator::linear() const {
  LinearOp op;
  op.dim = dim();
  if (diag) {
    VectorXcd d = *diag;
    op.apply = [d](const VectorXcd& v) { return d.cwiseProduct(v).eval(); };
    op.apply_adj = [d](const VectorXcd& v) {
      return d.conjugate().cwiseProduct(v).eval();
    };
  } else {
    MatrixXcd m = dense;
    op.apply = [m](const VectorXcd& v) { return (m * v).eval(); };
    op.apply_adj = [m](const VectorXcd& v) {
      return (m.adjoint() * v).eval();
    };
  }
  return op;
}

GridOperator GridOperator::diagonal(ModeBasis basis, int rank, VectorXcd d,
                                    std::string source) {
  GridOperator g;
  g.basis = std::move(basis);
  g.rank = rank;
  require(d.size() == g.dim(), "GridOperator::diagonal: size mismatch");
  g.diag = std::move(d);
  g.source = std::move(source);
  return g;
}

GridOperator GridOperator::from_dense(ModeBasis basis, int rank, MatrixXcd m,
                                      std::string source) {
  GridOperator g;
  g.basis = std::move(basis);
  g.rank = rank;
  require(m.rows() == g.dim() && m.cols() == g.dim(),
          "GridOperator::from_dense: size mismatch");
  g.dense = std::move(m);
  g.source = std::move(source);
  return g;
}

namespace {

// Sampled Fourier coefficients of a product-model tangential kernel.
struct KernelCoeffs {
  int nx, nyt;
  std::vector<Axis> yaxes;
  Axis xaxis;
  std::vector<MatrixXcd> khat;  // (a*nx + b)*nyt + c, 1x1 entries
};

KernelCoeffs kernel_coeffs(const ModelFoliation& M, const TangentialKernel& k,
                           int nx, int ny) {
  require(M.is_product(), "kernel_coeffs: product model only");
  require(bool(k.product_kernel), "tangential kernel: product form missing");
  KernelCoeffs kc;
  kc.xaxis = M.leaf_axis(nx);
  kc.yaxes = M.transverse_axes(ny);
  kc.nx = nx;
  kc.nyt = 1;
  for (const auto& a : kc.yaxes) kc.nyt *= a.n;
  kc.khat.assign(nx * nx * kc.nyt, MatrixXcd::Zero(1, 1));
  SpatialGrid g;
  g.x = kc.xaxis;
  g.y = kc.yaxes;
  for (int xi = 0; xi < nx; ++xi)
    for (int xj = 0; xj < nx; ++xj)
      for (int yk = 0; yk < kc.nyt; ++yk)
        kc.khat[(xi * nx + xj) * kc.nyt + yk](0, 0) =
            k.product_kernel(kc.xaxis.node(xi), kc.xaxis.node(xj),
                             g.y_point(yk));
  dft_tensor(kc.khat, nx, kc.yaxes);
  return kc;
}

int y_coeff_slot(const KernelCoeffs& kc, const std::vector<int>& c) {
  int slot = 0;
  for (size_t d = 0; d < kc.yaxes.size(); ++d) {
    int s = slot_for_mode(kc.yaxes[d].n, c[d]);
    if (s < 0) return -1;
    slot = slot * kc.yaxes[d].n + s;
  }
  return slot;
}

cplx kernel_entry(const KernelCoeffs& kc, double len_x, int m,
                  const std::vector<int>& n, int mp,
                  const std::vector<int>& np) {
  int sa = slot_for_mode(kc.nx, m);
  int sb = slot_for_mode(kc.nx, -mp);
  if (sa < 0 || sb < 0) return 0.0;
  std::vector<int> c(n.size());
  for (size_t d = 0; d < n.size(); ++d) c[d] = n[d] - np[d];
  int sc = y_coeff_slot(kc, c);
  if (sc < 0) return 0.0;
  return len_x * kc.khat[(sa * kc.nx + sb) * kc.nyt + sc](0, 0);
}

// Kronecker model: dense R_E(k) on the lattice basis.
MatrixXcd kron_tangential_dense(const ModelFoliation& M,
                                const TangentialKernel& k,
                                const ModeBasis& basis, int nx_grid,
                                int nt_nodes) {
  require(bool(k.kron_kernel), "tangential kernel: kronecker form missing");
  const double l1 = M.spec().circumference_x;
  const double l2 =
      M.spec().circumference_y.empty() ? 2.0 * pi : M.spec().circumference_y[0];
  VectorXd v = M.leaf_direction();
  const int dim = basis.dim();
  MatrixXcd R = MatrixXcd::Zero(dim, dim);
  // t-quadrature nodes on [-T, T]
  std::vector<double> tx, tw;
  gauss_legendre(nt_nodes, -k.support_T, k.support_T, tx, tw);
  // spatial DFT of k(., t) per t node
  const int gx = nx_grid;
  std::vector<std::vector<cplx>> khat_t(tx.size(),
                                        std::vector<cplx>(gx * gx, 0.0));
  for (size_t it = 0; it < tx.size(); ++it) {
    std::vector<cplx> samples(gx * gx);
    for (int i = 0; i < gx; ++i)
      for (int j = 0; j < gx; ++j) {
        VectorXd pt(2);
        pt << l1 * i / gx, l2 * j / gx;
        samples[i * gx + j] = k.kron_kernel(pt, tx[it]);
      }
    // 2-d DFT
    for (int a = 0; a < gx; ++a)
      for (int b = 0; b < gx; ++b) {
        cplx acc = 0.0;
        int ma = a <= gx / 2 ? a : a - gx;
        int mb = b <= gx / 2 ? b : b - gx;
        for (int i = 0; i < gx; ++i)
          for (int j = 0; j < gx; ++j)
            acc += samples[i * gx + j] *
                   std::polar(1.0, -2.0 * pi * (ma * i + mb * j) / double(gx));
        khat_t[it][a * gx + b] = acc / double(gx * gx);
      }
  }
  for (int col = 0; col < dim; ++col) {
    const auto& cp = basis.at(col);
    VectorXd freq(2);
    freq << 2.0 * pi * cp.m / l1, 2.0 * pi * cp.n[0] / l2;
    double omega = freq.dot(v);
    for (int row = 0; row < dim; ++row) {
      const auto& rp = basis.at(row);
      int da = rp.m - cp.m, db = rp.n[0] - cp.n[0];
      int sa = slot_for_mode(gx, da), sb = slot_for_mode(gx, db);
      if (sa < 0 || sb < 0) continue;
      cplx acc = 0.0;
      for (size_t it = 0; it < tx.size(); ++it)
        acc += tw[it] * khat_t[it][sa * gx + sb] *
               std::polar(1.0, -omega * tx[it]);
      R(row, col) = acc;
    }
  }
  return R;
}

}  // namespace

GridOperator tangential_operator(const ModelFoliation& M,
                                 const TangentialKernel& k,
                                 const ModeBasis& basis, int rank,
                                 int sample_nx, int sample_ny) {
  const int dm = basis.dim();
  MatrixXcd scalar(dm, dm);
  if (M.is_product()) {
    KernelCoeffs kc = kernel_coeffs(M, k, sample_nx, sample_ny);
    const double lx = M.spec().circumference_x;
    for (int row = 0; row < dm; ++row)
      for (int col = 0; col < dm; ++col)
        scalar(row, col) = kernel_entry(kc, lx, basis.at(row).m,
                                        basis.at(row).n, basis.at(col).m,
                                        basis.at(col).n);
  } else {
    scalar = kron_tangential_dense(M, k, basis, sample_nx, 96);
  }
  if (rank == 1)
    return GridOperator::from_dense(basis, 1, std::move(scalar),
                                    "tangential_operator");
  MatrixXcd full = MatrixXcd::Zero(dm * rank, dm * rank);
  for (int i = 0; i < dm; ++i)
    for (int j = 0; j < dm; ++j)
      for (int f = 0; f < rank; ++f) full(i * rank + f, j * rank + f) =
          scalar(i, j);
  return GridOperator::from_dense(basis, rank, std::move(full),
                                  "tangential_operator");
}

LinearOp tangential_apply(const ModelFoliation& M, const TangentialKernel& k,
                          const ModeBasis& basis, int rank, int sample_nx,
                          int sample_ny) {
  require(M.is_product(), "tangential_apply: product model only");
  auto kc = std::make_shared<KernelCoeffs>(
      kernel_coeffs(M, k, sample_nx, sample_ny));
  const double lx = M.spec().circumference_x;
  const int dm = basis.dim();
  const int q = M.q();
  // nonzero y-coefficient offsets
  auto offsets = std::make_shared<std::vector<std::vector<int>>>();
  {
    std::vector<int> c(q, 0);
    std::function<void(int)> rec = [&](int d) {
      if (d == q) {
        offsets->push_back(c);
        return;
      }
      int half = kc->yaxes[d].n / 2;
      for (c[d] = -(half - 1); c[d] <= half - 1; ++c[d]) rec(d + 1);
    };
    rec(0);
  }
  const int B = basis.leaf_trunc();
  ModeBasis bs = basis;
  LinearOp op;
  op.dim = dm * rank;
  auto applier = [kc, lx, dm, rank, bs, offsets, B, q](const VectorXcd& u,
                                                       bool adj) {
    VectorXcd out = VectorXcd::Zero(u.size());
    for (int col = 0; col < dm; ++col) {
      const auto& cp = bs.at(col);
      for (const auto& c : *offsets) {
        std::vector<int> n(q);
        for (int d = 0; d < q; ++d) n[d] = cp.n[d] + c[d];
        for (int m = -B; m <= B; ++m) {
          int row = bs.index(m, n);
          if (row < 0) continue;
          cplx e = kernel_entry(*kc, lx, m, n, cp.m, cp.n);
          if (e == cplx(0.0)) continue;
          for (int f = 0; f < rank; ++f) {
            if (!adj)
              out[row * rank + f] += e * u[col * rank + f];
            else
              out[col * rank + f] += std::conj(e) * u[row * rank + f];
          }
        }
      }
    }
    return out;
  };
  op.apply = [applier](const VectorXcd& u) { return applier(u, false); };
  op.apply_adj = [applier](const VectorXcd& u) { return applier(u, true); };
  return op;
}

ModelOperatorResult model_operator(const ModelFoliation& M,
                                   ModelOperatorKind kind,
                                   const ModeBasis& basis, int ny_symbol) {
  ModelOperatorResult res;
  const int q = M.q();
  SphereGrid sg = SphereGrid::make(q, q == 1 ? 2 : 64);
  std::vector<Axis> yax = M.transverse_axes(ny_symbol);

  if (kind == ModelOperatorKind::TransverseLaplacian) {
    res.rank = 1;
    VectorXcd d(basis.dim());
    for (int i = 0; i < basis.dim(); ++i)
      d[i] = basis.at(i).eta.squaredNorm();
    res.op = GridOperator::diagonal(basis, 1, std::move(d),
                                    "transverse_laplacian");
    res.op.hermitian = true;
    res.symbol = TransverseSymbol::from_functions(
        2.0, yax, sg, {[](const VectorXd&, const VectorXd&) -> cplx {
          return 1.0;  // |eta|^2 on the sphere
        }});
    res.full.order = 2.0;
    res.full.rank = 1;
    res.full.q = q;
    res.full.components = {[](double, const VectorXd&, double,
                              const VectorXd& eta) -> MatrixXcd {
      return MatrixXcd::Constant(1, 1, eta.squaredNorm());
    }};
    return res;
  }

  if (kind == ModelOperatorKind::FirstOrderDirac) {
    require(q == 1, "first_order_dirac: q=1 model only");
    res.rank = 1;
    VectorXcd d(basis.dim());
    for (int i = 0; i < basis.dim(); ++i) d[i] = basis.at(i).eta[0];
    res.op = GridOperator::diagonal(basis, 1, std::move(d),
                                    "first_order_dirac");
    res.op.hermitian = true;
    res.symbol = TransverseSymbol::from_functions(
        1.0, yax, sg, {[](const VectorXd&, const VectorXd& w) -> cplx {
          return w[0];  // eta restricted to the sphere S^0
        }});
    res.full.order = 1.0;
    res.full.rank = 1;
    res.full.q = 1;
    res.full.components = {[](double, const VectorXd&, double,
                              const VectorXd& eta) -> MatrixXcd {
      return MatrixXcd::Constant(1, 1, eta[0]);
    }};
    return res;
  }

  // Transverse signature d_H + delta_H on Lambda* H*, rank 2^q.
  const int rank = 1 << q;
  res.rank = rank;
  auto clifford = [q, rank](const VectorXd& eta) -> MatrixXcd {
    MatrixXcd e = MatrixXcd::Zero(rank, rank);
    for (int mask = 0; mask < rank; ++mask)
      for (int i = 0; i < q; ++i) {
        if (mask & (1 << i)) continue;
        int below = 0;
        for (int b = 0; b < i; ++b)
          if (mask & (1 << b)) ++below;
        double sign = (below % 2 == 0) ? 1.0 : -1.0;
        e(mask | (1 << i), mask) += sign * eta[i];
      }
    return e + e.adjoint().eval();  // e_eta + i_eta
  };
  MatrixXcd dense = MatrixXcd::Zero(basis.dim() * rank, basis.dim() * rank);
  for (int i = 0; i < basis.dim(); ++i) {
    MatrixXcd blk = clifford(basis.at(i).eta);
    dense.block(i * rank, i * rank, rank, rank) = blk;
  }
  res.op = GridOperator::from_dense(basis, rank, std::move(dense),
                                    "transverse_signature");
  res.op.hermitian = true;
  res.symbol = TransverseSymbol::zero(1.0, rank, yax, sg, 0);
  {
    int nyt = res.symbol.ny_total();
    for (int yk = 0; yk < nyt; ++yk)
      for (int node = 0; node < sg.size(); ++node)
        res.symbol.components()[0].data[yk * sg.size() + node] =
            clifford(sg.nodes[node]);
  }
  res.full.order = 1.0;
  res.full.rank = rank;
  res.full.q = q;
  res.full.components = {[clifford](double, const VectorXd&, double,
                                    const VectorXd& eta) -> MatrixXcd {
    return clifford(eta);
  }};
  return res;
}

GridOperator quantize_transverse(const TransverseSymbol& P,
                                 const CutoffSpec& cutoff,
                                 const ModeBasis& basis) {
  const int rank = P.rank();
  if (!basis.is_product()) {
    // kronecker: y-constant symbols act diagonally on the lattice
    for (const auto& comp : P.components())
      for (int node = 0; node < P.ns(); ++node)
        for (int yk = 1; yk < P.ny_total(); ++yk)
          require((comp.data[yk * P.ns() + node] -
                   comp.data[node]).cwiseAbs().maxCoeff() < 1e-12,
                  "quantize_transverse: kronecker model needs a y-constant "
                  "symbol (holonomy invariance)");
    VectorXcd d(basis.dim() * rank);
    for (int i = 0; i < basis.dim(); ++i) {
      VectorXd eta = basis.at(i).eta;
      MatrixXcd val = MatrixXcd::Zero(rank, rank);
      double r = eta.norm();
      if (r > 0.0 && cutoff(r) > 0.0) {
        HomogeneousComponent h(0.0, rank, P.sphere());
        for (const auto& comp : P.components()) {
          HomogeneousComponent hc(comp.degree, rank, P.sphere());
          for (int node = 0; node < P.ns(); ++node)
            hc.at(node) = comp.data[node];
          val += cutoff(r) * hc.eval(eta);
        }
      }
      require((val - val(0, 0) * MatrixXcd::Identity(rank, rank))
                  .cwiseAbs()
                  .maxCoeff() < 1e-12 || rank == 1,
              "quantize_transverse: kronecker path supports scalar blocks");
      for (int f = 0; f < rank; ++f) d[i * rank + f] = val(0, 0);
    }
    return GridOperator::diagonal(basis, rank, std::move(d),
                                  "quantize_transverse");
  }

  // product: leaf-diagonal, transverse toroidal left quantization
  const auto& yax_sym = P.ygrid();
  const int nyt = P.ny_total(), ns = P.ns();
  const int dm = basis.dim();
  MatrixXcd dense = MatrixXcd::Zero(dm * rank, dm * rank);
  // y-Fourier coefficients of the symbol evaluated at each needed kappa
  for (int col = 0; col < dm; ++col) {
    const auto& cp = basis.at(col);
    VectorXd kap = cp.eta;
    double r = kap.norm();
    double th = r > 0.0 ? cutoff(r) : 0.0;
    if (th == 0.0) continue;
    // symbol values on the y grid at eta = kappa
    std::vector<MatrixXcd> vals(nyt, MatrixXcd::Zero(rank, rank));
    for (int yk = 0; yk < nyt; ++yk) {
      MatrixXcd acc = MatrixXcd::Zero(rank, rank);
      for (const auto& comp : P.components()) {
        HomogeneousComponent hc(comp.degree, rank, P.sphere());
        for (int node = 0; node < ns; ++node)
          hc.at(node) = comp.data[yk * ns + node];
        acc += hc.eval(kap);
      }
      vals[yk] = th * acc;
    }
    dft_tensor(vals, 1, yax_sym);  // y-axes DFT only (nx=1)
    for (int row = 0; row < dm; ++row) {
      const auto& rp = basis.at(row);
      if (rp.m != cp.m) continue;
      std::vector<int> c(cp.n.size());
      for (size_t d = 0; d < c.size(); ++d) c[d] = rp.n[d] - cp.n[d];
      int slot = 0;
      bool ok = true;
      for (size_t d = 0; d < c.size(); ++d) {
        int s = slot_for_mode(yax_sym[d].n, c[d]);
        if (s < 0) {
          ok = false;
          break;
        }
        slot = slot * yax_sym[d].n + s;
      }
      if (!ok) continue;
      dense.block(row * rank, col * rank, rank, rank) = vals[slot];
    }
  }
  return GridOperator::from_dense(basis, rank, std::move(dense),
                                  "quantize_transverse");
}

QuantizedSymbol::QuantizedSymbol(const ClassicalSymbol& A,
                                 const ModeBasis& basis)
    : basis_(basis),
      rank_(A.rank()),
      order_(A.order()),
      cutoff_(A.cutoff()),
      sgrid_(A.sphere()),
      grid_(A.grid()),
      len_x_(A.grid().x.circumference) {
  require(basis.is_product(), "QuantizedSymbol: product model only");
  const int nx = A.nx(), nyt = grid_.ny_total(), ns = A.ns();
  for (int j = 0; j <= A.depth(); ++j) {
    degrees_.push_back(A.components()[j].degree);
    std::vector<std::vector<MatrixXcd>> per_node(ns);
    for (int node = 0; node < ns; ++node) {
      std::vector<MatrixXcd> tensor(nx * nx * nyt);
      for (int xi = 0; xi < nx; ++xi)
        for (int xj = 0; xj < nx; ++xj)
          for (int yk = 0; yk < nyt; ++yk)
            tensor[(xi * nx + xj) * nyt + yk] =
                A.components()[j].data[A.index(xi, xj, yk, node)];
      dft_tensor(tensor, nx, grid_.y);
      per_node[node] = std::move(tensor);
    }
    coeff_.push_back(std::move(per_node));
  }
  // cutoff resolution: transverse mode spacing vs bridge width
  double spacing = 0.0;
  for (const auto& a : grid_.y) spacing = std::max(spacing, 2.0 * pi / a.circumference);
  cutoff_resolved_ = spacing <= (cutoff_.r1 - cutoff_.r0);
}

VectorXcd QuantizedSymbol::apply_impl(const VectorXcd& u, bool adj) const {
  const int dm = basis_.dim();
  require(u.size() == dm * rank_, "QuantizedSymbol::apply: size mismatch");
  VectorXcd out = VectorXcd::Zero(u.size());
  const int nx = grid_.x.n, nyt = grid_.ny_total();
  const int q = grid_.q();
  const int B = basis_.leaf_trunc();

  for (int col = 0; col < dm; ++col) {
    const auto& cp = basis_.at(col);
    double r = cp.eta.norm();
    double th = r > 0.0 ? cutoff_(r) : 0.0;
    if (th == 0.0) continue;
    // per-component radial factors and node lookup
    std::vector<cplx> rad(degrees_.size());
    for (size_t j = 0; j < degrees_.size(); ++j)
      rad[j] = th * std::pow(cplx(r), degrees_[j]);
    int node = 0;
    if (q == 1) node = cp.eta[0] > 0 ? 0 : 1;

    int sb = slot_for_mode(nx, -cp.m);
    if (sb < 0) continue;
    for (int m = -B; m <= B; ++m) {
      int sa = slot_for_mode(nx, m);
      if (sa < 0) continue;
      // loop over y-offsets within coefficient band
      std::vector<int> c(q, 0);
      std::function<void(int)> rec = [&](int d) {
        if (d == q) {
          std::vector<int> n(q);
          for (int e = 0; e < q; ++e) n[e] = cp.n[e] + c[e];
          int row = basis_.index(m, n);
          if (row < 0) return;
          int slot = 0;
          for (int e = 0; e < q; ++e) {
            int s = slot_for_mode(grid_.y[e].n, c[e]);
            if (s < 0) return;
            slot = slot * grid_.y[e].n + s;
          }
          MatrixXcd blk = MatrixXcd::Zero(rank_, rank_);
          for (size_t j = 0; j < degrees_.size(); ++j) {
            const MatrixXcd& base =
                coeff_[j][q == 1 ? node : 0][(sa * nx + sb) * nyt + slot];
            if (q == 1) {
              blk += rad[j] * base;
            } else {
              // trigonometric interpolation across sphere nodes
              double phi = std::atan2(cp.eta[1], cp.eta[0]);
              const int nsn = sgrid_.size();
              MatrixXcd acc = MatrixXcd::Zero(rank_, rank_);
              for (int kk = 0; kk < nsn; ++kk) {
                int mm = kk <= nsn / 2 ? kk : kk - nsn;
                MatrixXcd ck = MatrixXcd::Zero(rank_, rank_);
                for (int ll = 0; ll < nsn; ++ll)
                  ck += coeff_[j][ll][(sa * nx + sb) * nyt + slot] *
                        std::polar(1.0, -2.0 * pi * mm * ll / nsn);
                acc += ck / double(nsn) * std::polar(1.0, mm * phi);
              }
              blk += rad[j] * acc;
            }
          }
          for (int f = 0; f < rank_; ++f)
            for (int f2 = 0; f2 < rank_; ++f2) {
              if (!adj)
                out[row * rank_ + f] +=
                    len_x_ * blk(f, f2) * u[col * rank_ + f2];
              else
                out[col * rank_ + f2] +=
                    len_x_ * std::conj(blk(f, f2)) * u[row * rank_ + f];
            }
        } else {
          int half = grid_.y[d].n / 2;
          for (c[d] = -(half - 1); c[d] <= half - 1; ++c[d]) rec(d + 1);
        }
      };
      rec(0);
    }
  }
  return out;
}

VectorXcd QuantizedSymbol::apply(const VectorXcd& u) const {
  return apply_impl(u, false);
}

LinearOp QuantizedSymbol::linear() const {
  LinearOp op;
  op.dim = dim() * rank_;
  const QuantizedSymbol* self = this;
  op.apply = [self](const VectorXcd& v) { return self->apply_impl(v, false); };
  op.apply_adj = [self](const VectorXcd& v) {
    return self->apply_impl(v, true);
  };
  return op;
}

cplx QuantizedSymbol::trace() const {
  // tr = sum_{m,n} len_x * Khat_{m,-m,0}(kappa_n)
  const int nx = grid_.x.n, nyt = grid_.ny_total();
  const int q = grid_.q();
  const int B = basis_.leaf_trunc();
  // leaf diagonal coefficient sums per (component, node)
  std::vector<std::vector<cplx>> leaf_sum(degrees_.size(),
                                          std::vector<cplx>(sgrid_.size()));
  int slot0 = 0;
  for (int e = 0; e < q; ++e) slot0 = slot0 * grid_.y[e].n + 0;
  for (size_t j = 0; j < degrees_.size(); ++j)
    for (int node = 0; node < sgrid_.size(); ++node) {
      cplx acc = 0.0;
      for (int m = -B; m <= B; ++m) {
        int sa = slot_for_mode(nx, m), sb = slot_for_mode(nx, -m);
        if (sa < 0 || sb < 0) continue;
        acc += coeff_[j][node][(sa * nx + sb) * nyt + slot0].trace();
      }
      leaf_sum[j][node] = acc;
    }
  cplx total = 0.0;
  // iterate transverse modes directly
  std::vector<int> n(q, -basis_.trans_trunc()[0]);
  while (true) {
    VectorXd kap(q);
    for (int e = 0; e < q; ++e) kap[e] = grid_.y[e].frequency(n[e]);
    double r = kap.norm();
    double th = r > 0.0 ? cutoff_(r) : 0.0;
    if (th > 0.0) {
      for (size_t j = 0; j < degrees_.size(); ++j) {
        cplx rad = th * std::pow(cplx(r), degrees_[j]);
        cplx angular;
        if (q == 1) {
          angular = leaf_sum[j][kap[0] > 0 ? 0 : 1];
        } else {
          double phi = std::atan2(kap[1], kap[0]);
          const int nsn = sgrid_.size();
          cplx acc = 0.0;
          for (int kk = 0; kk < nsn; ++kk) {
            int mm = kk <= nsn / 2 ? kk : kk - nsn;
            cplx ck = 0.0;
            for (int ll = 0; ll < nsn; ++ll)
              ck += leaf_sum[j][ll] *
                    std::polar(1.0, -2.0 * pi * mm * ll / nsn);
            acc += ck / double(nsn) * std::polar(1.0, mm * phi);
          }
          angular = acc;
        }
        total += len_x_ * rad * angular;
      }
    }
    int d = q - 1;
    while (d >= 0) {
      if (++n[d] <= basis_.trans_trunc()[d]) break;
      n[d] = -basis_.trans_trunc()[d];
      --d;
    }
    if (d < 0) break;
  }
  return total;
}

MatrixXcd QuantizedSymbol::to_dense() const {
  const int dmr = dim() * rank_;
  MatrixXcd m(dmr, dmr);
  VectorXcd e = VectorXcd::Zero(dmr);
  for (int j = 0; j < dmr; ++j) {
    e.setZero();
    e[j] = 1.0;
    m.col(j) = apply(e);
  }
  return m;
}

GridOperator QuantizedSymbol::grid_operator(std::string source) const {
  return GridOperator::from_dense(basis_, rank_, to_dense(),
                                  std::move(source));
}

namespace {

struct EigenSystem {
  VectorXd eigenvalues;
  MatrixXcd vectors;  // empty for diagonal operators
  bool diagonal = false;
};

EigenSystem decompose(const GridOperator& P) {
  EigenSystem es;
  require(P.hermitian_defect() < 1e-10,
          "eigen_oracle: operator is not Hermitian");
  if (P.is_diagonal()) {
    es.diagonal = true;
    es.eigenvalues.resize(P.dim());
    for (int i = 0; i < P.dim(); ++i) es.eigenvalues[i] = (*P.diag)[i].real();
    return es;
  }
  Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(P.to_dense());
  es.eigenvalues = solver.eigenvalues();
  es.vectors = solver.eigenvectors();
  return es;
}

VectorXd pairing_weights(const EigenSystem& es, const GridOperator* pairing,
                         int dim) {
  VectorXd w = VectorXd::Ones(dim);
  if (!pairing) return w;
  if (es.diagonal) {
    MatrixXcd R = pairing->to_dense();
    for (int i = 0; i < dim; ++i) w[i] = R(i, i).real();
    return w;
  }
  MatrixXcd RV = pairing->to_dense() * es.vectors;
  for (int i = 0; i < dim; ++i)
    w[i] = (es.vectors.col(i).adjoint() * RV.col(i))(0, 0).real();
  return w;
}

}  // namespace

cplx eigen_oracle_heat(const GridOperator& P, double t,
                       const GridOperator* pairing) {
  EigenSystem es = decompose(P);
  double scale = std::max(1.0, es.eigenvalues.cwiseAbs().maxCoeff());
  require(es.eigenvalues.minCoeff() > -1e-9 * scale,
          "eigen_oracle: operator must be positive semidefinite");
  VectorXd w = pairing_weights(es, pairing, P.dim());
  cplx acc = 0.0;
  for (int i = 0; i < P.dim(); ++i)
    acc += w[i] * std::exp(-t * std::max(0.0, es.eigenvalues[i]));
  return acc;
}

cplx eigen_oracle_zeta(const GridOperator& P, cplx z,
                       const GridOperator* pairing, double null_tol) {
  EigenSystem es = decompose(P);
  double scale = std::max(1.0, es.eigenvalues.cwiseAbs().maxCoeff());
  require(es.eigenvalues.minCoeff() > -1e-9 * scale,
          "eigen_oracle: operator must be positive semidefinite");
  VectorXd w = pairing_weights(es, pairing, P.dim());
  cplx acc = 0.0;
  for (int i = 0; i < P.dim(); ++i) {
    double lam = es.eigenvalues[i];
    if (lam <= null_tol * scale) continue;  // null modes excluded
    acc += w[i] * std::exp(-z * std::log(lam));
  }
  return acc;
}

cplx eigen_oracle_paired(const GridOperator& P, const GridOperator& pairing,
                         const std::function<cplx(double)>& f) {
  EigenSystem es = decompose(P);
  VectorXd w = pairing_weights(es, &pairing, P.dim());
  cplx acc = 0.0;
  for (int i = 0; i < P.dim(); ++i) acc += w[i] * f(es.eigenvalues[i]);
  return acc;
}

}  // namespace tvc
