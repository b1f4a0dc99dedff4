#pragma once

// Classicality and anticlassicality measures of single-mode bosonic states:
// renormalized Hilbert-Schmidt overlaps against the displaced-thermal
// family, and maximum Fock-state occupations with purity-weighted variants,
// each with closed forms and an independent truncated-Fock numeric path.

#include "fock.hpp"
#include "gaussian.hpp"
#include "measure_result.hpp"
#include "measures.hpp"
#include "optimize.hpp"
#include "report.hpp"
#include "special_functions.hpp"
