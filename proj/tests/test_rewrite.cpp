#include <doctest.h>

#include <random>

#include "lut/rewrite.hpp"
#include "lut/semantics.hpp"
#include "lut/suite.hpp"

using namespace lut;

namespace {

FormulaPtr step(const char* text) {
  auto r = reduce_once(parse_formula(text));
  REQUIRE(r);
  return *r;
}

}  // namespace

TEST_SUITE_BEGIN("rewrite");

TEST_CASE("single reduction steps") {
  CHECK(*step("[p] q") == *parse_formula("p -> q"));
  CHECK(*step("[p] top") == *parse_formula("p -> top"));
  CHECK(*step("[p] ~q") == *parse_formula("p -> ~[p] q"));
  CHECK(*step("[p] (q & r)") == *parse_formula("[p] q & [p] r"));
  CHECK(*step("[p] K_a q") == *parse_formula("p -> K_a [p] q"));
  CHECK(*step("[p][q] r") == *parse_formula("[p & [p] q] r"));
}

TEST_CASE("announced U is not a redex") {
  CHECK(!reduce_once(parse_formula("[p] U_a q")));
  CHECK(!reduce_once(parse_formula("K_a p")));
  CHECK(!reduce_once(parse_formula("p & ~q")));
  // but redexes below and beside a U are still found
  CHECK(*step("[p] U_a q & [p] r") == *parse_formula("[p] U_a q & (p -> r)"));
  CHECK(*step("[[p] q] U_a r") == *parse_formula("[p -> q] U_a r"));
}

TEST_CASE("reduction is leftmost-outermost") {
  CHECK(*step("K_a [p] q & [p] r") == *parse_formula("K_a (p -> q) & [p] r"));
  // the outer announcement pair contracts before anything inside
  CHECK(*step("[[p] q][r] s") == *parse_formula("[[p] q & [[p] q] r] s"));
}

TEST_CASE("elimination fixpoints") {
  CHECK(*eliminate_announcements(parse_formula("[p] K_a q")) ==
        *parse_formula("p -> K_a (p -> q)"));
  CHECK(*eliminate_announcements(parse_formula("K_a p")) == *parse_formula("K_a p"));
  CHECK(*eliminate_announcements(parse_formula("[p][q] r")) ==
        *parse_formula("(p & (p -> q)) -> r"));
}

TEST_CASE("the pinned chain for a nested announcement") {
  const auto chain = reduction_chain(parse_formula("[p][q] r"));
  REQUIRE(chain.size() == 4);
  CHECK(*chain[1] == *parse_formula("[p & [p] q] r"));
  CHECK(*chain[2] == *parse_formula("(p & [p] q) -> r"));
  CHECK(*chain[3] == *parse_formula("(p & (p -> q)) -> r"));
  const std::uint64_t sizes[] = {36, 13, 12, 11};
  for (std::size_t i = 0; i < chain.size(); ++i) CHECK(measures(chain[i]).size == sizes[i]);
}

TEST_CASE("every step strictly decreases the measure") {
  std::mt19937_64 rng(606);
  RandomFormulaOptions fopt;
  fopt.max_depth = 4;
  fopt.agents = {"a"};
  fopt.allow_unk = false;
  for (int i = 0; i < 200; ++i) {
    const auto chain = reduction_chain(random_formula(rng, fopt));
    for (std::size_t k = 1; k < chain.size(); ++k)
      CHECK(measures(chain[k]) < measures(chain[k - 1]));
    CHECK(is_el(chain.back()));
    CHECK(!reduce_once(chain.back()));
  }
}

TEST_CASE("input with a U operator is rejected") {
  CHECK_THROWS_AS(eliminate_announcements(parse_formula("U_a p")), std::invalid_argument);
  CHECK_THROWS_AS(eliminate_announcements(parse_formula("[p] U_a q")), std::invalid_argument);
  CHECK_THROWS_AS(reduction_chain(parse_formula("K_a U_a p")), std::invalid_argument);
}

TEST_CASE("rewriting preserves truth on random pointed models") {
  std::mt19937_64 rng(909);
  RandomFormulaOptions fopt;
  fopt.max_depth = 3;
  fopt.agents = {"i"};
  fopt.allow_unk = false;
  for (int round = 0; round < 60; ++round) {
    const FormulaPtr f = random_formula(rng, fopt);
    const auto chain = reduction_chain(f);
    const Model m = random_model(rng, 4, {"i"}, {"p", "q"});
    Evaluator ev(m);
    for (int s = 0; s < m.num_states(); ++s) {
      const bool expected = ev.eval(s, chain.front());
      for (const auto& g : chain) CHECK(ev.eval(s, g) == expected);
    }
  }
}

TEST_SUITE_END();
