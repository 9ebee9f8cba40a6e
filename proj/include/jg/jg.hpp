#pragma once

// Umbrella header for the jg library: finite-dimensional JB*-algebra
// arithmetic, projection-lattice operations, comparison theory, centre-valued
// traces, bounded finitely additive measures and their quasi-linear
// extensions, and the verification suites.

#include "jg/algebra.hpp"
#include "jg/albert.hpp"
#include "jg/comparison.hpp"
#include "jg/complex_matrix.hpp"
#include "jg/errors.hpp"
#include "jg/lattice.hpp"
#include "jg/measures.hpp"
#include "jg/measures_io.hpp"
#include "jg/octonion.hpp"
#include "jg/random.hpp"
#include "jg/spectral.hpp"
#include "jg/suites.hpp"
#include "jg/traces.hpp"
