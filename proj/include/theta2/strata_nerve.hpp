#ifndef THETA2_STRATA_NERVE_HPP
#define THETA2_STRATA_NERVE_HPP

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace theta2 {

// One irreducible component of the reducible locus in the covering model:
// beta indexes the splitting family, kind is the branch type (1 or 2), and
// (m, n) are the integer translation parameters of the component.
struct ComponentId {
  int beta;
  int kind;
  int m;
  int n;
  auto operator<=>(const ComponentId&) const = default;
};

// Intersection record of the component family.  Components are listed in
// lexicographic (beta, kind, m, n) order; pairs hold component indices with
// first < second.  Two components meet iff they share beta and differ in
// kind, so no triple ever intersects.
struct Nerve {
  int n_beta = 0;
  int radius = 0;
  std::vector<ComponentId> components;
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
};

// Finitely supported map degree -> rank; absent keys mean rank 0.
using GradedRanks = std::map<int, long long>;

// Desk-scale truncation of the component family: all (beta, kind, m, n) with
// beta < n_beta, |m|, |n| <= radius.  Component count n_beta*2*(2r+1)^2,
// pair count n_beta*(2r+1)^4.
Nerve build_nerve(int n_beta, int radius);

// Compactly supported cohomology of the component union through the nerve
// spectral sequence: each component is a 6-cell (rank in degree 6), each
// pairwise intersection a 4-cell read in total degree 5; nothing else
// appears, and the degree gap makes every differential vanish.
GradedRanks compute_hc(const Nerve& nerve);

// Degrees k in [open_part_vanishing_from, ambient_real_dim] where exactness
// of the Gysin sequence forces H_k to vanish: the complement part vanishes by
// hypothesis and the compact-support term hc[ambient_real_dim - k] is zero.
std::vector<int> gysin_vanishing(const GradedRanks& hc, int open_part_vanishing_from,
                                 int ambient_real_dim);

// Rank of the kernel of the section-class projection in the truncated model
// with n_beta splitting families: the differences of the two sections per
// family are verified independent by integer rank, and to span the kernel.
long long kernel_rank(int n_beta);

} // namespace theta2

#endif
