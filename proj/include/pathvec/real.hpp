#pragma once

namespace pathvec {

// Numeric type for all model parameters and math. Double by default; the
// PATHVEC_REAL32 build option switches to float for speed at the cost of
// bit-level determinism guarantees.
#ifdef PATHVEC_REAL32
using real = float;
#else
using real = double;
#endif

}  // namespace pathvec
