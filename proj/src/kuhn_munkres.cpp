#include "udua/kuhn_munkres.hpp"

#include <limits>
#include <stdexcept>

namespace udua {

// Potential-based Hungarian algorithm on the minimization form (cost =
// -weight). Rows are inserted one at a time; each insertion grows an
// alternating tree over columns, tracking for every unvisited column the
// minimal reduced cost (`minv`) to reach it, until a free column is found.
std::vector<int> max_weight_perfect_matching(const std::vector<double>& weights,
                                             int n) {
  if (n < 0) throw std::invalid_argument("matching: n must be >= 0");
  if (weights.size() != static_cast<std::size_t>(n) * n)
    throw std::invalid_argument("matching: weight matrix must be n x n");
  if (n == 0) return {};

  const double inf = std::numeric_limits<double>::infinity();
  auto cost = [&](int i, int j) { return -weights[i * n + j]; };

  // 1-based with index 0 as the virtual root row/column.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0);    // p[j]: row matched to column j
  std::vector<int> way(n + 1, 0);  // predecessor column in the tree

  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, inf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = inf;
      int j1 = -1;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    // Augment along the alternating path back to the root.
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<int> match(n, -1);
  for (int j = 1; j <= n; ++j) match[p[j] - 1] = j - 1;
  return match;
}

}  // namespace udua
