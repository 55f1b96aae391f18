#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "theta2/errors.hpp"
#include "theta2/rng.hpp"
#include "theta2/surface_group.hpp"

#include <vector>

using namespace theta2;

namespace {

SurfaceWord w(const char* text) { return SurfaceWord::parse(text); }

SurfaceWord random_word(Rng& rng, int max_len) {
  const int len = 1 + int(rng.below(max_len));
  std::vector<std::int8_t> letters;
  for (int i = 0; i < len; ++i) {
    const int idx = 1 + int(rng.below(4));
    letters.push_back(std::int8_t(rng.below(2) ? idx : -idx));
  }
  return SurfaceWord(std::move(letters));
}

const SurfaceWord kRelator =
    concat(commutator(SurfaceWord::generator(1), SurfaceWord::generator(2)),
           commutator(SurfaceWord::generator(3), SurfaceWord::generator(4)));

} // namespace

TEST_CASE("free reduction") {
  CHECK(w("Aa").empty());
  CHECK(w("ABbC") == w("AC"));
  CHECK(commutator(w("A"), w("B")) == w("ABab"));
  CHECK(commutator(w("A"), w("B")).size() == 4);
  CHECK(free_reduce({1, -1, 2, 3, -3, -2}).empty());
  CHECK(w("1").empty());
  CHECK_THROWS_AS(w("AxB"), Error);
}

TEST_CASE("string round trip") {
  const SurfaceWord word = w("AbCdDa");
  CHECK(SurfaceWord::parse(word.str()) == word);
  CHECK(w("AbC").str() == "AbC");
}

TEST_CASE("conjugation") {
  const SurfaceWord a1 = w("A");
  CHECK(conjugate(a1, SurfaceWord()) == a1);
  CHECK(conjugate(a1, w("B")) == w("bAB"));

  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    SurfaceWord x = random_word(rng, 8), g = random_word(rng, 8);
    CHECK(abelianize(conjugate(x, g)) == abelianize(x));
  }
}

TEST_CASE("abelianization") {
  CHECK(abelianize(commutator(w("A"), w("B"))).is_zero());
  CHECK(abelianize(w("BC")).coords == std::array<long long, 4>{0, 1, 1, 0});
  CHECK(abelianize(w("CA")).coords == std::array<long long, 4>{1, 0, 1, 0});
}

TEST_CASE("hall-witt identities") {
  CHECK(hall_witt_check(SurfaceWord(), SurfaceWord(), SurfaceWord()));
  CHECK(hall_witt_check(w("A"), w("B"), w("C")));
  Rng rng(9);
  for (int i = 0; i < 100; ++i)
    CHECK(hall_witt_check(random_word(rng, 8), random_word(rng, 8), random_word(rng, 8)));
}

TEST_CASE("the commutator rewriting identity") { CHECK(scc_relation_identity()); }

TEST_CASE("word problem") {
  CHECK(dehn_is_trivial(kRelator));
  CHECK_FALSE(dehn_is_trivial(w("A")));

  Rng rng(13);
  for (int i = 0; i < 20; ++i)
    CHECK(dehn_is_trivial(conjugate(kRelator, random_word(rng, 8))));

  // products of conjugates of the relator are trivial too
  SurfaceWord product = concat(conjugate(kRelator, w("Ab")), conjugate(inverse(kRelator), w("D")));
  CHECK(dehn_is_trivial(product));
}

TEST_CASE("short words are trivial only when freely trivial") {
  // all letter sequences of length <= 3
  std::vector<std::vector<std::int8_t>> seqs{{}};
  for (int len = 1; len <= 3; ++len) {
    std::vector<std::vector<std::int8_t>> next;
    for (const auto& s : seqs)
      if (int(s.size()) == len - 1)
        for (int l = -4; l <= 4; ++l) {
          if (l == 0) continue;
          auto t = s;
          t.push_back(std::int8_t(l));
          next.push_back(std::move(t));
        }
    for (auto& s : next) seqs.push_back(std::move(s));
  }
  for (const auto& s : seqs) {
    SurfaceWord word{std::vector<std::int8_t>(s)};
    CHECK(dehn_is_trivial(word) == word.empty());
  }
}

TEST_CASE("triviality implies zero abelianization") {
  Rng rng(21);
  for (int i = 0; i < 200; ++i) {
    SurfaceWord word = random_word(rng, 10);
    if (dehn_is_trivial(word)) CHECK(abelianize(word).is_zero());
    if (!abelianize(word).is_zero()) CHECK_FALSE(dehn_is_trivial(word));
  }
}

TEST_CASE("splittings from separating curves") {
  // <a1, b1> + <a2, b2>
  HomologySplitting std_split = splitting_from_scc(SurfaceWord(), w("A"), w("B"));
  HomologySplitting expected_std{
      hnf_rows(IntMat::from_rows({{1, 0, 0, 0}, {0, 1, 0, 0}})),
      hnf_rows(IntMat::from_rows({{0, 0, 1, 0}, {0, 0, 0, 1}}))};
  CHECK(splittings_equal(std_split, expected_std));

  // <a1, b1+a2> + <a2, b2+a1>
  HomologySplitting row1 = splitting_from_scc(SurfaceWord(), w("A"), w("BC"));
  HomologySplitting expected_row1{
      hnf_rows(IntMat::from_rows({{1, 0, 0, 0}, {0, 1, 1, 0}})),
      hnf_rows(IntMat::from_rows({{0, 0, 1, 0}, {1, 0, 0, 1}}))};
  CHECK(splittings_equal(row1, expected_row1));

  // <-b1, a1+a2> + <a2, b2-b1>, with the conjugator present
  HomologySplitting row2 = splitting_from_scc(w("bab"), w("b"), w("CA"));
  HomologySplitting expected_row2{
      hnf_rows(IntMat::from_rows({{0, -1, 0, 0}, {1, 0, 1, 0}})),
      hnf_rows(IntMat::from_rows({{0, 0, 1, 0}, {0, -1, 0, 1}}))};
  CHECK(splittings_equal(row2, expected_row2));
}

TEST_CASE("splitting equality is unordered and canonical") {
  HomologySplitting s = splitting_from_scc(SurfaceWord(), w("A"), w("B"));
  CHECK(splittings_equal(s, s));
  HomologySplitting swapped{s.v_minus, s.v_plus};
  CHECK(splittings_equal(s, swapped));
}

TEST_CASE("splitting is independent of the conjugator") {
  Rng rng(33);
  HomologySplitting base = splitting_from_scc(SurfaceWord(), w("A"), w("BC"));
  for (int i = 0; i < 20; ++i) {
    HomologySplitting conj = splitting_from_scc(random_word(rng, 8), w("A"), w("BC"));
    CHECK(splittings_equal(base, conj));
  }
}

TEST_CASE("symplectic complement is an involution") {
  Figure2Report rep = figure2_verify();
  for (const Figure2Row& row : rep.rows) {
    CHECK(symplectic_complement(symplectic_complement(row.computed.v_plus)) ==
          hnf_rows(row.computed.v_plus));
    CHECK(symplectic_complement(row.computed.v_plus) == hnf_rows(row.computed.v_minus));
    CHECK(symplectic_complement(row.computed.v_minus) == hnf_rows(row.computed.v_plus));
  }
}

TEST_CASE("degenerate inputs are rejected") {
  CHECK_THROWS_AS((void)splitting_from_scc(SurfaceWord(), w("A"), w("a")), Error);
  CHECK_THROWS_AS((void)splitting_from_scc(SurfaceWord(), w("A"), w("A")), Error);
  // rank 2 but not symplectically unimodular
  try {
    (void)splitting_from_scc(SurfaceWord(), w("A"), w("C"));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == "not-a-splitting");
  }
}

TEST_CASE("figure-2 table reproduces") {
  Figure2Report rep = figure2_verify();
  CHECK(rep.ok());
  CHECK(rep.rows.size() == 4);
  for (const Figure2Row& row : rep.rows) {
    CHECK(row.matches_table);
    CHECK(row.null_homologous);
  }
  CHECK(rep.pairwise_distinct);
  CHECK(rep.relation_holds);
}
