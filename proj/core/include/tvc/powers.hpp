#pragma once

#include "tvc/seeley.hpp"

namespace tvc {

/// Complex power symbol A^z of a transversally elliptic symbol a with
/// positive scalar principal part: components q_{mz-l} obtained by contour
/// integration of lambda^z against the resolvent family.  Direct contour for
/// Re z < 0; other z via A^z = A^{z-k} A^k with integer k.  Leading
/// component equals (a_m)^z.
TransverseSymbol power_components(const TransverseSymbol& a, cplx z, int depth,
                                  const ContourSpec& contour = {},
                                  bool exact_weights = false);

}  // namespace tvc
