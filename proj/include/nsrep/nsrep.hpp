#pragma once

// Umbrella header.

#include "nsrep/axioms.hpp"
#include "nsrep/cache.hpp"
#include "nsrep/classify.hpp"
#include "nsrep/errors.hpp"
#include "nsrep/exactnum.hpp"
#include "nsrep/interseries.hpp"
#include "nsrep/linalg.hpp"
#include "nsrep/nsalgebra.hpp"
#include "nsrep/phi.hpp"
#include "nsrep/shifted.hpp"
#include "nsrep/verma.hpp"
#include "nsrep/cli.hpp"
