#pragma once

#include "parsol/structmat.hpp"

namespace parsol {

/// Serial reference solver: plain banded LU without pivoting over the
/// kind's scalar envelope, one sweep, no partitioning.  Corner blocks are
/// folded in by bordering.  Kept for testing the parallel solver and as the
/// baseline in benchmark comparisons; requires a nonsingular no-pivot
/// elimination (e.g. diagonally dominant instances).
Vector solve_sequential(const StructuredMatrix& A, const Vector& f);

}  // namespace parsol
