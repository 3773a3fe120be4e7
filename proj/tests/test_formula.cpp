#include <doctest.h>

#include <random>

#include "lut/formula.hpp"
#include "lut/suite.hpp"

using namespace lut;

TEST_SUITE_BEGIN("formula");

TEST_CASE("parser desugars derived connectives to primitives") {
  CHECK(*parse_formula("U_a (p & ~K_a p)") ==
        *unk("a", conj(atom("p"), neg(know("a", atom("p"))))));
  CHECK(*parse_formula("B_a p") == *conj(atom("p"), neg(know("a", atom("p")))));
  CHECK(*parse_formula("<p> K_a p") == *neg(ann(atom("p"), neg(know("a", atom("p"))))));
  CHECK(*parse_formula("p -> q") == *neg(conj(atom("p"), neg(atom("q")))));
  CHECK(*parse_formula("p | q") == *neg(conj(neg(atom("p")), neg(atom("q")))));
  CHECK(*parse_formula("p <-> q") == *conj(impl(atom("p"), atom("q")), impl(atom("q"), atom("p"))));
  CHECK(*parse_formula("bot") == *neg(top()));
  CHECK(parse_formula("top")->conn() == Conn::Top);
}

TEST_CASE("precedence and associativity") {
  CHECK(*parse_formula("~p & q") == *conj(neg(atom("p")), atom("q")));
  CHECK(*parse_formula("p & q & r") == *conj(conj(atom("p"), atom("q")), atom("r")));
  CHECK(*parse_formula("p -> q -> r") == *impl(atom("p"), impl(atom("q"), atom("r"))));
  CHECK(*parse_formula("p <-> q <-> r") ==
        *iff(iff(atom("p"), atom("q")), atom("r")));
  CHECK(*parse_formula("K_a p & q") == *conj(know("a", atom("p")), atom("q")));
  CHECK(*parse_formula("[p & q] r") == *ann(conj(atom("p"), atom("q")), atom("r")));
  CHECK(*parse_formula("U_a p & q") == *conj(unk("a", atom("p")), atom("q")));
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse_formula("p &"), parse_error);
  try {
    parse_formula("p &");
  } catch (const parse_error& e) {
    CHECK(e.offset == 3);
  }
  try {
    parse_formula("p q");
  } catch (const parse_error& e) {
    CHECK(e.offset == 2);
  }
  CHECK_THROWS_AS(parse_formula(""), parse_error);
  CHECK_THROWS_AS(parse_formula("K p"), parse_error);
  CHECK_THROWS_AS(parse_formula("(p"), parse_error);
  CHECK_THROWS_AS(parse_formula("Top"), parse_error);
  CHECK_THROWS_AS(parse_formula("p - q"), parse_error);
  CHECK_THROWS_AS(parse_formula("K_ p"), parse_error);
}

TEST_CASE("render examples") {
  CHECK(render(neg(atom("p"))) == "~p");
  CHECK(render(ann(atom("p"), know("a", atom("q")))) == "[p] K_a q");
  CHECK(render(unk("a", top())) == "U_a top");
  CHECK(render(parse_formula("U_a (p & ~K_a p)")) == "U_a (p & ~K_a p)");
  CHECK(render(conj(atom("p"), conj(atom("q"), atom("r")))) == "p & (q & r)");
  CHECK(render(conj(conj(atom("p"), atom("q")), atom("r"))) == "p & q & r");
}

TEST_CASE("render round-trips on random formulas") {
  std::mt19937_64 rng(2024);
  RandomFormulaOptions opt;
  opt.max_depth = 5;
  opt.agents = {"a", "b"};
  for (int i = 0; i < 500; ++i) {
    const FormulaPtr f = random_formula(rng, opt);
    CAPTURE(render(f));
    CHECK(*parse_formula(render(f)) == *f);
  }
}

TEST_CASE("measures match the recursive definitions") {
  CHECK(measures(atom("p")) == Complexity{0, 1});
  CHECK(measures(top()) == Complexity{0, 1});
  CHECK(measures(ann(atom("p"), atom("q"))) == Complexity{0, 6});
  CHECK(measures(unk("a", atom("p"))) == Complexity{1, 2});
  CHECK(measures(parse_formula("p -> q")) == Complexity{0, 5});
  CHECK(measures(parse_formula("[p] K_a q")) == Complexity{0, 12});
  CHECK(measures(parse_formula("B_a p")) == Complexity{0, 5});
  CHECK(measures(parse_formula("[p] top")) == Complexity{0, 6});
  CHECK(measures(parse_formula("U_a U_b p")) == Complexity{2, 3});
  CHECK(measures(parse_formula("[U_a p] q")) == Complexity{1, 7});
}

TEST_CASE("less_complex on pinned pairs") {
  CHECK(less_complex(parse_formula("p"), parse_formula("U_a p")));
  CHECK(!less_complex(parse_formula("p"), parse_formula("p")));
  CHECK(less_complex(parse_formula("[p & [p] q] r"), parse_formula("[p][q] r")));
}

TEST_CASE("less_complex is a strict partial order") {
  std::mt19937_64 rng(7);
  RandomFormulaOptions opt;
  for (int i = 0; i < 300; ++i) {
    const FormulaPtr a = random_formula(rng, opt);
    const FormulaPtr b = random_formula(rng, opt);
    const FormulaPtr c = random_formula(rng, opt);
    CHECK(!less_complex(a, a));
    if (less_complex(a, b) && less_complex(b, c)) CHECK(less_complex(a, c));
    if (less_complex(a, b)) CHECK(!less_complex(b, a));
  }
}

TEST_CASE("size positivity and U-depth characterization") {
  std::mt19937_64 rng(11);
  RandomFormulaOptions opt;
  for (int i = 0; i < 300; ++i) {
    const FormulaPtr f = random_formula(rng, opt);
    const Complexity c = measures(f);
    CHECK(c.size >= 1);
    CHECK((c.udepth == 0) == is_pal(f));
  }
}

TEST_CASE("fragment tests") {
  CHECK(is_el(know("a", atom("p"))));
  CHECK(!is_el(ann(atom("p"), atom("q"))));
  CHECK(!is_el(unk("a", atom("p"))));
  CHECK(is_pal(ann(atom("p"), atom("q"))));
  CHECK(!is_pal(unk("a", atom("p"))));
  CHECK(is_el(top()));
}

TEST_CASE("atom and agent collection") {
  const FormulaPtr f = parse_formula("[q] (K_a p & U_b (r & p))");
  CHECK(collect_atoms(*f) == std::vector<std::string>{"p", "q", "r"});
  CHECK(collect_agents(*f) == std::vector<std::string>{"a", "b"});
  CHECK(collect_atoms(*top()).empty());
}

TEST_SUITE_END();
