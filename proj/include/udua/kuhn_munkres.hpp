#pragma once

#include <vector>

namespace udua {

/// Maximum-weight perfect matching on a dense n x n weight matrix
/// (row-major) via the Kuhn-Munkres algorithm with potentials, O(n^3).
/// Returns match[row] = column. Weights may be negative; every row is
/// matched. Deterministic: no floating-point equality tests, fixed scan
/// order.
std::vector<int> max_weight_perfect_matching(const std::vector<double>& weights,
                                             int n);

}  // namespace udua
