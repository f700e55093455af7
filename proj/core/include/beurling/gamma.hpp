#pragma once
// Complex Gamma function (Lanczos approximation + reflection).

#include "beurling/util.hpp"

namespace beurling {

// Relative accuracy ~1e-13 for |Im z| <= ~150 and moderate |Re z|, which
// covers every Gamma factor appearing in the smoothing/contour formulas.
cplx gamma_complex(cplx z);

}    // namespace beurling
