#pragma once

#include <optional>

#include "tvc/model.hpp"
#include "tvc/transverse.hpp"

namespace tvc {

/// One Fourier mode of the truncated basis, with its leafwise frequency xi
/// and transverse frequency vector eta (the kronecker lattice decomposes an
/// ambient frequency into leaf and transverse parts).
struct ModePoint {
  int m = 0;
  std::vector<int> n;
  double xi = 0.0;
  VectorXd eta;
};

class ModeBasis {
 public:
  static ModeBasis product(const ModelFoliation& M, int leaf_trunc,
                           int trans_trunc);
  static ModeBasis kronecker(const ModelFoliation& M, int trunc);

  int dim() const { return static_cast<int>(pts_.size()); }
  const std::vector<ModePoint>& points() const { return pts_; }
  const ModePoint& at(int i) const { return pts_[i]; }
  bool is_product() const { return product_; }
  int leaf_trunc() const { return leaf_trunc_; }
  const std::vector<int>& trans_trunc() const { return trans_trunc_; }

  /// Flat index of (m, n); -1 when out of truncation.
  int index(int m, const std::vector<int>& n) const;

 private:
  std::vector<ModePoint> pts_;
  bool product_ = true;
  int leaf_trunc_ = 0;
  std::vector<int> trans_trunc_;
};

/// Matrix-free linear map on the truncated mode space.
struct LinearOp {
  int dim = 0;
  std::function<VectorXcd(const VectorXcd&)> apply;
  std::function<VectorXcd(const VectorXcd&)> apply_adj;
};

struct NormResult {
  double value = 0.0;
  bool converged = false;
  int iterations = 0;
};

/// Largest singular value via power iteration on A*A (deterministic seeded
/// start, fixed reduction order).
NormResult operator_norm(const LinearOp& A, std::uint64_t seed = 11,
                         double tol = 1e-8, int max_iter = 10000);

/// A truncated Fourier-mode matrix realizing a quantized symbol or
/// tangential kernel.
class GridOperator {
 public:
  ModeBasis basis;
  int rank = 1;  // fiber rank; flat index = mode * rank + fiber
  MatrixXcd dense;
  std::optional<VectorXcd> diag;  // set for mode-diagonal operators
  bool hermitian = false;
  std::string source;

  int dim() const { return basis.dim() * rank; }
  bool is_diagonal() const { return bool(diag); }
  VectorXcd apply(const VectorXcd& v) const;
  MatrixXcd to_dense() const;
  double hermitian_defect() const;
  /// Symmetrize when the defect is below tol; throw if flagged hermitian
  /// with a larger defect.
  void enforce_hermitian(double tol = 1e-12);
  LinearOp linear() const;

  static GridOperator diagonal(ModeBasis basis, int rank, VectorXcd d,
                               std::string source);
  static GridOperator from_dense(ModeBasis basis, int rank, MatrixXcd m,
                                 std::string source);
};

/// R_E(k) on the truncated modes (dense).
GridOperator tangential_operator(const ModelFoliation& M,
                                 const TangentialKernel& k,
                                 const ModeBasis& basis, int rank = 1,
                                 int sample_nx = 32, int sample_ny = 32);

/// Matrix-free R_E(k) for large truncations (product model).
LinearOp tangential_apply(const ModelFoliation& M, const TangentialKernel& k,
                          const ModeBasis& basis, int rank = 1,
                          int sample_nx = 32, int sample_ny = 32);

enum class ModelOperatorKind {
  TransverseLaplacian,
  TransverseSignature,
  FirstOrderDirac
};

struct ModelOperatorResult {
  GridOperator op;
  TransverseSymbol symbol;        // transverse ladder (exact)
  FullSymbol full;                // ambient principal symbol
  int rank = 1;
};

ModelOperatorResult model_operator(const ModelFoliation& M,
                                   ModelOperatorKind kind,
                                   const ModeBasis& basis, int ny_symbol = 16);

/// Toroidal quantization of a transverse ladder (with excision cutoff):
/// leaf-diagonal, entries theta(|kappa|) phat_{n-n'}(kappa_{n'}).
GridOperator quantize_transverse(const TransverseSymbol& P,
                                 const CutoffSpec& cutoff,
                                 const ModeBasis& basis);

/// Structured quantization of a classical transversal symbol on the product
/// model: apply / diagonal / trace without materializing the dense matrix.
class QuantizedSymbol {
 public:
  QuantizedSymbol(const ClassicalSymbol& A, const ModeBasis& basis);

  int dim() const { return basis_.dim(); }
  const ModeBasis& basis() const { return basis_; }
  VectorXcd apply(const VectorXcd& v) const;
  LinearOp linear() const;
  cplx trace() const;
  MatrixXcd to_dense() const;
  GridOperator grid_operator(std::string source) const;
  /// True when the mode spacing resolves the cutoff bridge.
  bool cutoff_resolved() const { return cutoff_resolved_; }

 private:
  VectorXcd apply_impl(const VectorXcd& u, bool adj) const;
  ModeBasis basis_;
  int rank_ = 1;
  cplx order_{};
  CutoffSpec cutoff_;
  SphereGrid sgrid_;
  std::vector<cplx> degrees_;
  // spatial Fourier coefficients per component and sphere node:
  // comp j, node s -> tensor [a][b][c] as flat (nx*nx*nyt) of r x r blocks
  std::vector<std::vector<std::vector<MatrixXcd>>> coeff_;
  SpatialGrid grid_;
  double len_x_ = 2.0 * pi;
  bool cutoff_resolved_ = true;
};

/// Exact mode-sum spectral values for Hermitian positive (semi)definite P:
/// the independent ground truth for the trace machinery.
cplx eigen_oracle_heat(const GridOperator& P, double t,
                       const GridOperator* pairing = nullptr);
cplx eigen_oracle_zeta(const GridOperator& P, cplx z,
                       const GridOperator* pairing = nullptr,
                       double null_tol = 1e-10);
cplx eigen_oracle_paired(const GridOperator& P, const GridOperator& pairing,
                         const std::function<cplx(double)>& f);

}  // namespace tvc
