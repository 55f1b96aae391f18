#include "theta2/surface_group.hpp"

#include "theta2/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace theta2 {

namespace {

const char kLetterNames[5] = {'?', 'A', 'B', 'C', 'D'};

std::vector<std::int8_t> reduce_letters(const std::vector<std::int8_t>& in) {
  std::vector<std::int8_t> out;
  out.reserve(in.size());
  for (std::int8_t l : in) {
    if (l == 0 || l > 4 || l < -4) throw Error("domain", "letter out of range");
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

} // namespace

SurfaceWord::SurfaceWord(std::vector<std::int8_t> letters) : letters_(reduce_letters(letters)) {}

SurfaceWord SurfaceWord::parse(std::string_view text) {
  std::vector<std::int8_t> letters;
  letters.reserve(text.size());
  for (char ch : text) {
    if (ch == ' ' || ch == '1') continue; // allow "1" for the empty word
    const char up = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    const char* pos = std::find(kLetterNames + 1, kLetterNames + 5, up);
    if (pos == kLetterNames + 5)
      throw Error("bad-input", std::string("unknown letter '") + ch + "' in word");
    const auto idx = static_cast<std::int8_t>(pos - kLetterNames);
    letters.push_back(ch == up ? idx : static_cast<std::int8_t>(-idx));
  }
  return SurfaceWord(std::move(letters));
}

SurfaceWord SurfaceWord::generator(int index, bool inv) {
  if (index < 1 || index > 4) throw Error("domain", "generator index must be 1..4");
  return SurfaceWord({static_cast<std::int8_t>(inv ? -index : index)});
}

std::string SurfaceWord::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (std::int8_t l : letters_) {
    char c = kLetterNames[std::abs(l)];
    s.push_back(l > 0 ? c : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return s;
}

SurfaceWord free_reduce(const std::vector<std::int8_t>& letters) { return SurfaceWord(letters); }

SurfaceWord concat(const SurfaceWord& x, const SurfaceWord& y) {
  std::vector<std::int8_t> letters = x.letters();
  letters.insert(letters.end(), y.letters().begin(), y.letters().end());
  return SurfaceWord(std::move(letters));
}

SurfaceWord inverse(const SurfaceWord& w) {
  std::vector<std::int8_t> letters(w.letters().rbegin(), w.letters().rend());
  for (auto& l : letters) l = static_cast<std::int8_t>(-l);
  return SurfaceWord(std::move(letters));
}

SurfaceWord commutator(const SurfaceWord& x, const SurfaceWord& y) {
  return concat(concat(x, y), concat(inverse(x), inverse(y)));
}

SurfaceWord conjugate(const SurfaceWord& w, const SurfaceWord& g) {
  return concat(concat(inverse(g), w), g);
}

HomologyClass abelianize(const SurfaceWord& w) {
  HomologyClass h;
  for (std::int8_t l : w.letters()) h.coords[std::abs(l) - 1] += (l > 0 ? 1 : -1);
  return h;
}

long long intersection_pairing(const HomologyClass& x, const HomologyClass& y) {
  return x.coords[0] * y.coords[1] - x.coords[1] * y.coords[0] + x.coords[2] * y.coords[3] -
         x.coords[3] * y.coords[2];
}

bool hall_witt_check(const SurfaceWord& x, const SurfaceWord& y, const SurfaceWord& z) {
  const SurfaceWord lhs1 = commutator(x, concat(y, z));
  const SurfaceWord rhs1 = concat(commutator(x, y), conjugate(commutator(x, z), inverse(y)));
  const SurfaceWord lhs2 = commutator(concat(x, y), z);
  const SurfaceWord rhs2 = concat(conjugate(commutator(y, z), inverse(x)), commutator(x, z));
  return lhs1 == rhs1 && lhs2 == rhs2;
}

bool scc_relation_identity() {
  const SurfaceWord a1 = SurfaceWord::generator(1);
  const SurfaceWord b1 = SurfaceWord::generator(2);
  const SurfaceWord a2 = SurfaceWord::generator(3);
  const SurfaceWord b1i = inverse(b1);

  // [a1, b1 a2] = [a1,b1] [b1^-1, a2 a1]^{b1^-1 a1^-1 b1^-1} [a1 b1, a2 a1]^{b1^-1}
  const SurfaceWord lhs = commutator(a1, concat(b1, a2));
  const SurfaceWord g = concat(concat(b1i, inverse(a1)), b1i);
  const SurfaceWord rhs = concat(
      concat(commutator(a1, b1), conjugate(commutator(b1i, concat(a2, a1)), g)),
      conjugate(commutator(concat(a1, b1), concat(a2, a1)), b1i));
  const bool full = lhs == rhs;

  // first expansion step: [a1, b1 a2] = [a1,b1] [a1,a2]^{b1^-1}
  const bool step1 = lhs == concat(commutator(a1, b1), conjugate(commutator(a1, a2), b1i));

  // absorbing step: [a1, a2] = [a1, a2 a1]
  const bool step2 = commutator(a1, a2) == commutator(a1, concat(a2, a1));

  return full && step1 && step2;
}

namespace {

std::vector<std::vector<std::int8_t>> symmetrized_relators() {
  // [a1,b1][a2,b2]
  const std::vector<std::int8_t> relator = {1, 2, -1, -2, 3, 4, -3, -4};
  std::vector<std::vector<std::int8_t>> out;
  for (int inv = 0; inv < 2; ++inv) {
    std::vector<std::int8_t> base = relator;
    if (inv) {
      std::reverse(base.begin(), base.end());
      for (auto& l : base) l = static_cast<std::int8_t>(-l);
    }
    for (std::size_t rot = 0; rot < base.size(); ++rot) {
      std::vector<std::int8_t> cyc(base.begin() + rot, base.end());
      cyc.insert(cyc.end(), base.begin(), base.begin() + rot);
      if (std::find(out.begin(), out.end(), cyc) == out.end()) out.push_back(cyc);
    }
  }
  return out;
}

} // namespace

bool dehn_is_trivial(const SurfaceWord& w) {
  static const std::vector<std::vector<std::int8_t>> relators = symmetrized_relators();
  std::vector<std::int8_t> cur = w.letters();
  bool changed = true;
  while (changed && !cur.empty()) {
    changed = false;
    // Strict majority of the length-8 relator: replace subwords of length >= 5.
    for (int len = 8; len >= 5 && !changed; --len) {
      for (std::size_t i = 0; i + len <= cur.size() && !changed; ++i) {
        for (const auto& rel : relators) {
          if (!std::equal(cur.begin() + i, cur.begin() + i + len, rel.begin())) continue;
          // u = rel[0..len) matches, so u = (rel[len..8))^{-1} in the group.
          std::vector<std::int8_t> next(cur.begin(), cur.begin() + i);
          for (std::size_t j = rel.size(); j > static_cast<std::size_t>(len); --j)
            next.push_back(static_cast<std::int8_t>(-rel[j - 1]));
          next.insert(next.end(), cur.begin() + i + len, cur.end());
          cur = SurfaceWord(std::move(next)).letters();
          changed = true;
          break;
        }
      }
    }
  }
  return cur.empty();
}

namespace {

const IntMat kIntersectionForm = IntMat::from_rows({{0, 1, 0, 0},
                                                    {-1, 0, 0, 0},
                                                    {0, 0, 0, 1},
                                                    {0, 0, -1, 0}});

void validate_splitting(const HomologySplitting& s) {
  for (const IntMat* part : {&s.v_plus, &s.v_minus}) {
    if (part->rows != 2 || part->cols != 4)
      throw Error("not-a-splitting", "summand is not a rank-2 sublattice of Z^4");
    const auto divisors = elementary_divisors(*part);
    if (divisors != std::vector<long long>{1, 1})
      throw Error("not-a-splitting", "summand is not saturated");
    // symplectically unimodular: Gram determinant of the pairing is 1
    IntMat gram = mul(mul(*part, kIntersectionForm), part->transposed());
    if (det(gram) != 1)
      throw Error("not-a-splitting", "summand is not symplectically unimodular");
  }
  IntMat stacked(4, 4);
  for (int j = 0; j < 4; ++j) {
    stacked(0, j) = s.v_plus(0, j);
    stacked(1, j) = s.v_plus(1, j);
    stacked(2, j) = s.v_minus(0, j);
    stacked(3, j) = s.v_minus(1, j);
  }
  const long long d = det(stacked);
  if (d != 1 && d != -1)
    throw Error("not-a-splitting", "summands do not span Z^4");
  IntMat pairing = mul(mul(s.v_plus, kIntersectionForm), s.v_minus.transposed());
  for (long long v : pairing.a)
    if (v != 0) throw Error("not-a-splitting", "summands are not symplectically orthogonal");
}

} // namespace

IntMat symplectic_complement(const IntMat& rows) {
  return hnf_rows(kernel_rows(mul(rows, kIntersectionForm)));
}

HomologySplitting splitting_from_scc(const SurfaceWord& c, const SurfaceWord& u,
                                     const SurfaceWord& v) {
  (void)c; // the splitting depends only on the classes of u and v
  const HomologyClass ua = abelianize(u);
  const HomologyClass va = abelianize(v);
  IntMat span = IntMat::from_rows({{ua.coords[0], ua.coords[1], ua.coords[2], ua.coords[3]},
                                   {va.coords[0], va.coords[1], va.coords[2], va.coords[3]}});
  if (rank(span) != 2)
    throw Error("degenerate-input", "u and v do not span a rank-2 sublattice in homology");
  HomologySplitting s{saturate_rows(span), symplectic_complement(saturate_rows(span))};
  validate_splitting(s);
  return s;
}

bool splittings_equal(const HomologySplitting& s1, const HomologySplitting& s2) {
  const IntMat a1 = hnf_rows(s1.v_plus), a2 = hnf_rows(s1.v_minus);
  const IntMat b1 = hnf_rows(s2.v_plus), b2 = hnf_rows(s2.v_minus);
  return (a1 == b1 && a2 == b2) || (a1 == b2 && a2 == b1);
}

Figure2Report figure2_verify() {
  struct RowSpec {
    const char* scc_name;
    const char* conj; // g in w = [u,v]^g
    const char* u;
    const char* v;
    std::vector<std::vector<long long>> plus;
    std::vector<std::vector<long long>> minus;
  };
  // Splittings induced by the four separating curves, as recorded: e.g.
  // [a1,b1 a2] gives <a1, b1+a2> + <a2, b2+a1>.
  const std::vector<RowSpec> table = {
      {"[a1,b1a2]", "", "A", "BC", {{1, 0, 0, 0}, {0, 1, 1, 0}}, {{0, 0, 1, 0}, {1, 0, 0, 1}}},
      {"[b1^-1,a2a1]^(b1^-1 a1^-1 b1^-1)", "bab", "b", "CA",
       {{0, -1, 0, 0}, {1, 0, 1, 0}},
       {{0, 0, 1, 0}, {0, -1, 0, 1}}},
      {"[a1,b1]", "", "A", "B", {{1, 0, 0, 0}, {0, 1, 0, 0}}, {{0, 0, 1, 0}, {0, 0, 0, 1}}},
      {"[a1b1,a2a1]^(b1^-1)", "b", "AB", "CA",
       {{1, 1, 0, 0}, {1, 0, 1, 0}},
       {{0, 0, 1, 0}, {-1, -1, 0, 1}}},
  };

  Figure2Report report;
  report.all_match = true;
  report.pairwise_distinct = true;
  report.relation_holds = scc_relation_identity();

  for (const RowSpec& spec : table) {
    const SurfaceWord g = SurfaceWord::parse(spec.conj);
    const SurfaceWord u = SurfaceWord::parse(spec.u);
    const SurfaceWord v = SurfaceWord::parse(spec.v);
    const SurfaceWord word = conjugate(commutator(u, v), g);

    Figure2Row row;
    row.scc = spec.scc_name;
    row.computed = splitting_from_scc(inverse(g), u, v);
    const HomologySplitting expected{hnf_rows(IntMat::from_rows(spec.plus)),
                                     hnf_rows(IntMat::from_rows(spec.minus))};
    row.matches_table = splittings_equal(row.computed, expected);
    row.null_homologous = abelianize(word).is_zero();
    report.all_match = report.all_match && row.matches_table && row.null_homologous;
    report.rows.push_back(std::move(row));
  }

  for (std::size_t i = 0; i < report.rows.size(); ++i)
    for (std::size_t j = i + 1; j < report.rows.size(); ++j)
      if (splittings_equal(report.rows[i].computed, report.rows[j].computed))
        report.pairwise_distinct = false;

  return report;
}

} // namespace theta2
