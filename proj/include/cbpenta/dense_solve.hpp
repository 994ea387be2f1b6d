#pragma once

#include <vector>

#include "cbpenta/system.hpp"

namespace cbpenta {

/// Reference solve of a dense square system by Gaussian elimination with
/// partial row pivoting. Oracle-grade: used for verification, shares no
/// code with the banded solver. Throws SingularError when a pivot falls
/// below tolerance, UsageError on shape mismatch.
std::vector<double> dense_solve(DenseMatrix a, std::vector<double> b);

}  // namespace cbpenta
