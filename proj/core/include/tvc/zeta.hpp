#pragma once

#include "tvc/powers.hpp"
#include "tvc/traces.hpp"

namespace tvc {

struct PoleRecord {
  cplx location{};     // candidate z_k on the k/m ladder
  cplx refined{};      // fit-refined location
  cplx residue{};
  cplx tau{};          // residue-trace value at z_k
  cplx ratio{};        // residue / tau (empirical proportionality constant)
  double uncertainty = 0.0;
  bool detected = false;
  bool simple = true;
};

struct MeromorphicReport {
  std::vector<PoleRecord> poles;
  std::vector<int> spectrum;  // dimension spectrum (integer pole locations)
  CsvTable samples;
  std::string notes;
};

struct ZetaOptions {
  int extra_depth = 2;        // ladder margin beyond the deepest candidate
  double fit_radius = 0.05;
  int fit_samples = 32;
  ContourSpec contour;
  double detect_threshold = 1e-8;
  bool exact_weights = false;
};

/// Meromorphic structure of z -> TR(Q A^{-z}): candidate poles z_k = k/m
/// with integer k <= l+q inside the window, Laurent-fit residues, and the
/// independent residue-trace values tau(Q A^{-k/m}).
MeromorphicReport zeta_pole_table(const ClassicalSymbol& Q,
                                  const TransverseSymbol& a, double window_lo,
                                  double window_hi, const ZetaOptions& opt);

/// One-dimensional complex slice z(s) = base + s dir through C^N for
/// tr(Q_1 A^{-z_1} ... Q_N A^{-z_N}); reports slice residues and tau values
/// on the intersected hyperplanes.  Errors when the slice is parallel to
/// the pole hyperplanes (sum dir_j = 0).
struct SliceSpec {
  std::vector<cplx> base;
  std::vector<cplx> dir;
};

MeromorphicReport multi_zeta(const std::vector<ClassicalSymbol>& Qs,
                             const TransverseSymbol& a, const SliceSpec& slice,
                             double s_lo, double s_hi, const ZetaOptions& opt);

/// Dimension spectrum: union over b in B of the pole sets of
/// z -> TR(b |D|^{-z}) with |D| = (D^2)^{1/2}, falling back to the default
/// algebra {b, [|D|, b]} when iterate_depth > 0.
MeromorphicReport dimension_spectrum(const std::vector<ClassicalSymbol>& B,
                                     const TransverseSymbol& d_squared, int q,
                                     const ZetaOptions& opt);

}  // namespace tvc
