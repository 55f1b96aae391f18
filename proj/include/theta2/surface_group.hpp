#ifndef THETA2_SURFACE_GROUP_HPP
#define THETA2_SURFACE_GROUP_HPP

#include "theta2/intlinalg.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace theta2 {

// Words in pi_1(S_2) over generators a1, b1, a2, b2.  Letters are encoded as
// +1..+4 for the generators and the negative values for their inverses; a
// SurfaceWord is always freely reduced.  Serialization: A B C D for
// a1 b1 a2 b2, lowercase for inverses.
class SurfaceWord {
public:
  SurfaceWord() = default;
  explicit SurfaceWord(std::vector<std::int8_t> letters); // reduces on construction

  static SurfaceWord parse(std::string_view text);
  static SurfaceWord generator(int index, bool inverse = false); // index 1..4

  const std::vector<std::int8_t>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t size() const { return letters_.size(); }
  std::string str() const;

  bool operator==(const SurfaceWord&) const = default;

private:
  std::vector<std::int8_t> letters_;
};

SurfaceWord free_reduce(const std::vector<std::int8_t>& letters);
SurfaceWord concat(const SurfaceWord& x, const SurfaceWord& y);
SurfaceWord inverse(const SurfaceWord& w);
// [x, y] = x y x^-1 y^-1
SurfaceWord commutator(const SurfaceWord& x, const SurfaceWord& y);
// w^g = g^-1 w g
SurfaceWord conjugate(const SurfaceWord& w, const SurfaceWord& g);

struct HomologyClass {
  std::array<long long, 4> coords{}; // basis (a1, b1, a2, b2) images in H_1
  bool is_zero() const { return coords == std::array<long long, 4>{}; }
  bool operator==(const HomologyClass&) const = default;
};

HomologyClass abelianize(const SurfaceWord& w);

// Intersection pairing on H_1(S_2): a_i . b_i = 1, other basis pairs 0.
long long intersection_pairing(const HomologyClass& x, const HomologyClass& y);

// Both Hall-Witt expansions, checked by free reduction:
//   [x, yz] = [x,y] [x,z]^{y^-1}    and    [xy, z] = [y,z]^{x^-1} [x,z].
bool hall_witt_check(const SurfaceWord& x, const SurfaceWord& y, const SurfaceWord& z);

// The commutator rewriting used for the four separating curves, verified in
// the free group: the full identity and its two expansion steps.
bool scc_relation_identity();

// Word problem for <a1,b1,a2,b2 | [a1,b1][a2,b2]> by Dehn's algorithm over
// the symmetrized relator set (replace any subword longer than half a relator
// by the shorter complement until stable).
bool dehn_is_trivial(const SurfaceWord& w);

// Orthogonal rank-2 summands of H_1(S_2) = Z^4.  Row bases are stored in
// canonical Hermite form; the pair is unordered.
struct HomologySplitting {
  IntMat v_plus;
  IntMat v_minus;
};

// Splitting induced by the separating curve c [u,v] c^-1: V+ is the
// saturation of <abelianize(u), abelianize(v)>, V- its symplectic complement.
// Throws degenerate-input when the classes do not span rank 2 and
// not-a-splitting when the result fails the splitting invariants.
HomologySplitting splitting_from_scc(const SurfaceWord& c, const SurfaceWord& u,
                                     const SurfaceWord& v);

bool splittings_equal(const HomologySplitting& s1, const HomologySplitting& s2);

// Symplectic complement of a saturated rank-2 sublattice (rows).
IntMat symplectic_complement(const IntMat& rows);

struct Figure2Row {
  std::string scc;
  HomologySplitting computed;
  bool matches_table;
  bool null_homologous;
};

struct Figure2Report {
  std::vector<Figure2Row> rows;
  bool all_match;
  bool pairwise_distinct;
  bool relation_holds;
  bool ok() const { return all_match && pairwise_distinct && relation_holds; }
};

// Reproduces the four separating-curve splittings, checks them against the
// recorded table, their pairwise distinctness and the commutator relation.
Figure2Report figure2_verify();

} // namespace theta2

#endif
