#pragma once

#include "tvc/classical.hpp"
#include "tvc/laurent.hpp"
#include "tvc/report.hpp"

namespace tvc {

/// Canonical trace of a classical transversal symbol: the regularized fiber
/// integral of the diagonal kernel, integrated over the chart.  Requires a
/// non-integer order or vanishing log obstructions at every critical
/// component; otherwise throws naming the offending degree.
cplx canonical_trace(const ClassicalSymbol& A);

struct ResidueTraceResult {
  cplx tau{};                   // integral over the spherical conormal bundle
  CsvTable form_samples;        // residue form on (x, y, node) grid
};

/// Residue trace: the degree -q diagonal component integrated over
/// {|eta|=1} x chart; zero when no critical component is present.
ResidueTraceResult residue_trace(const ClassicalSymbol& A);

struct FamilyResidueReport {
  cplx fit_residue{};     // Laurent-fit residue of z -> TR(A(z))
  cplx tau{};             // residue trace of A(z_k)
  cplx expected{};        // -(2pi)^{-q} tau / f'(z_k)
  cplx empirical_ratio{}; // fit_residue / tau
  double defect = 0.0;    // |fit - expected| / max(|fit|,|expected|,1)
  LaurentFit fit;
};

/// Residues of TR along a holomorphic family against the residue-trace
/// formula.  order_slope is f'(z_k) of the (affine) order function.
FamilyResidueReport family_residue_check(
    const std::function<ClassicalSymbol(cplx)>& family, cplx z_k,
    double order_slope, double fit_radius = 0.05, int samples = 32);

}  // namespace tvc
