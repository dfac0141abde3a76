#include "tvc/powers.hpp"

#include <cmath>

namespace tvc {

TransverseSymbol power_components(const TransverseSymbol& a, cplx z, int depth,
                                  const ContourSpec& contour,
                                  bool exact_weights) {
  if (std::abs(z) < 1e-14)
    return TransverseSymbol::identity(a.ygrid(), a.sphere(), a.rank(), depth);

  if (z.real() >= 0.0) {
    // A^z = A^{z-k} A^k, k natural, Re(z-k) < 0.
    int k = int(std::floor(z.real())) + 1;
    TransverseSymbol base = power_components(a, z - double(k), depth, contour,
                                             exact_weights);
    for (int rep = 0; rep < k; ++rep) base = compose(base, a.padded(depth));
    return base;
  }

  ResolventSymbolFamily f = ResolventSymbolFamily::build(a, depth);
  const int m = f.m();
  const int nyt = a.ny_total(), ns = a.ns(), rank = a.rank();

  // nu range needed
  int nu_max = 1;
  for (int l = 0; l <= depth; ++l)
    nu_max = std::max(nu_max, int(f.rational(l).size()));

  std::vector<cplx> W(nu_max);
  if (exact_weights) {
    for (int nu = 1; nu <= nu_max; ++nu)
      W[nu - 1] = cauchy_power_weight_exact(z, nu);
  } else {
    W = cauchy_power_weights(z, nu_max, contour);
  }

  TransverseSymbol out = TransverseSymbol::zero(double(m) * z, rank,
                                                a.ygrid(), a.sphere(), depth);
  for (int l = 0; l <= depth; ++l) {
    auto& dst = out.components()[l];
    const auto& rats = f.rational(l);
    for (size_t nu = 1; nu <= rats.size(); ++nu)
      for (int i = 0; i < nyt * ns; ++i) {
        // W_nu(a_m, z) = a_m^{z - nu + 1} W_nu(1, z) by contour scaling
        cplx scale = std::pow(cplx(f.principal(i / ns, i % ns)),
                              z - double(nu) + 1.0) * W[nu - 1];
        dst.data[i] += scale * rats[nu - 1].data[i];
      }
  }
  return out;
}

}  // namespace tvc
