#include "theta2/strata_nerve.hpp"

#include "theta2/errors.hpp"
#include "theta2/intlinalg.hpp"

namespace theta2 {

Nerve build_nerve(int n_beta, int radius) {
  if (n_beta < 0 || radius < 0) throw Error("domain", "nerve parameters must be nonnegative");
  if (n_beta > 50 || radius > 10)
    throw Error("resource-limit", "nerve truncation capped at n_beta <= 50, radius <= 10");

  Nerve nerve;
  nerve.n_beta = n_beta;
  nerve.radius = radius;
  const int side = 2 * radius + 1;
  const long long per_kind = static_cast<long long>(side) * side;
  nerve.components.reserve(static_cast<std::size_t>(n_beta) * 2 * per_kind);
  for (int beta = 0; beta < n_beta; ++beta)
    for (int kind = 1; kind <= 2; ++kind)
      for (int m = -radius; m <= radius; ++m)
        for (int n = -radius; n <= radius; ++n)
          nerve.components.push_back(ComponentId{beta, kind, m, n});

  nerve.pairs.reserve(static_cast<std::size_t>(n_beta) * per_kind * per_kind);
  for (int beta = 0; beta < n_beta; ++beta) {
    // kind-1 components of this beta precede its kind-2 components in the
    // lexicographic order, so (i, j) below is already sorted.
    const std::int32_t base1 = static_cast<std::int32_t>(beta * 2 * per_kind);
    const std::int32_t base2 = base1 + static_cast<std::int32_t>(per_kind);
    for (std::int32_t i = 0; i < per_kind; ++i)
      for (std::int32_t j = 0; j < per_kind; ++j)
        nerve.pairs.emplace_back(base1 + i, base2 + j);
  }
  return nerve;
}

GradedRanks compute_hc(const Nerve& nerve) {
  GradedRanks ranks;
  if (!nerve.components.empty())
    ranks[6] = static_cast<long long>(nerve.components.size());
  if (!nerve.pairs.empty())
    ranks[5] = static_cast<long long>(nerve.pairs.size());
  return ranks;
}

std::vector<int> gysin_vanishing(const GradedRanks& hc, int open_part_vanishing_from,
                                 int ambient_real_dim) {
  std::vector<int> forced;
  for (int k = std::max(open_part_vanishing_from, 0); k <= ambient_real_dim; ++k) {
    auto it = hc.find(ambient_real_dim - k);
    if (it == hc.end() || it->second == 0) forced.push_back(k);
  }
  return forced;
}

long long kernel_rank(int n_beta) {
  if (n_beta < 0) throw Error("domain", "n_beta must be nonnegative");
  if (n_beta == 0) return 0;

  // Section basis {s_{beta,1}, s_{beta,2}}; the projection collapses the two
  // sections of each family to the same disk class.
  IntMat differences(n_beta, 2 * n_beta);
  IntMat projection(n_beta, 2 * n_beta);
  for (int beta = 0; beta < n_beta; ++beta) {
    differences(beta, 2 * beta) = 1;
    differences(beta, 2 * beta + 1) = -1;
    projection(beta, 2 * beta) = 1;
    projection(beta, 2 * beta + 1) = 1;
  }

  const int difference_rank = rank(differences);
  const IntMat kernel = kernel_rows(projection);
  if (difference_rank != kernel.rows)
    throw Error("table-mismatch", "difference classes do not span the projection kernel");
  // Each difference must actually lie in the kernel lattice.
  IntMat stacked(kernel.rows + n_beta, 2 * n_beta);
  for (int i = 0; i < kernel.rows; ++i)
    for (int j = 0; j < 2 * n_beta; ++j) stacked(i, j) = kernel(i, j);
  for (int i = 0; i < n_beta; ++i)
    for (int j = 0; j < 2 * n_beta; ++j) stacked(kernel.rows + i, j) = differences(i, j);
  if (rank(stacked) != kernel.rows)
    throw Error("table-mismatch", "difference classes fall outside the projection kernel");
  return difference_rank;
}

} // namespace theta2
