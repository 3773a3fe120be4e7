#include <doctest.h>

#include <random>

#include "lut/bisim.hpp"
#include "lut/semantics.hpp"
#include "lut/suite.hpp"
#include "testutil.hpp"

using namespace lut;

namespace {

Model chain_model(const char* valuation) {
  std::string doc = R"({
    "states": ["a", "b", "c"], "agents": ["i"],
    "relations": { "i": [["a", "b"], ["b", "c"]] },
    "reflexive_closure": true,
    "valuation": )";
  doc += valuation;
  doc += "}";
  return load_model(doc);
}

}  // namespace

TEST_SUITE_BEGIN("bisim");

TEST_CASE("partition of the fixtures") {
  const Partition p3 = compute_partition(three_state_fixture());
  CHECK(p3.num_blocks() == 3);  // valuations already distinct
  for (const auto& block : p3.blocks) CHECK(block.count() == 1);

  const Model sym = load_model(R"({
    "states": ["x", "y"], "agents": ["i"],
    "relations": {}, "reflexive_closure": true,
    "valuation": { "p": ["x", "y"] } })");
  CHECK(compute_partition(sym).num_blocks() == 1);
}

TEST_CASE("chain with a uniform valuation collapses to one block") {
  // frozen from the pairwise refinement oracle: no atom can split, and with
  // every state reflexive each state can mimic the others' moves
  const Model m = chain_model(R"({ "p": ["a", "b", "c"] })");
  const Partition p = compute_partition(m);
  CHECK(p.num_blocks() == 1);
  CHECK(p.block_of == testutil::naive_bisim_classes(m));
}

TEST_CASE("chain split by an atom refines to singletons") {
  const Model m = chain_model(R"({ "p": ["a", "b"] })");
  const Partition p = compute_partition(m);
  CHECK(p.num_blocks() == 3);
  CHECK(p.block_of == testutil::naive_bisim_classes(m));
}

TEST_CASE("partition agrees with the naive oracle on random models") {
  std::mt19937_64 rng(31337);
  for (int i = 0; i < 200; ++i) {
    const Model m = random_model(rng, 5, {"i", "j"}, {"p", "q"});
    const Partition p = compute_partition(m);
    CHECK(p.block_of == testutil::naive_bisim_classes(m));
    CHECK(is_stable(m, p));
  }
}

TEST_CASE("quotient of a discrete partition is an isomorphic copy") {
  const Model m = three_state_fixture();
  const Model q = quotient(m, compute_partition(m));
  CHECK(save_model(q) == save_model(m));
}

TEST_CASE("quotient collapses bisimilar states") {
  const Model sym = load_model(R"({
    "states": ["x", "y"], "agents": ["i"],
    "relations": { "i": [["x", "y"], ["y", "x"]] }, "reflexive_closure": true,
    "valuation": { "p": ["x", "y"] } })");
  const Model q = quotient(sym, compute_partition(sym));
  CHECK(q.num_states() == 1);
  CHECK(q.relates(0, 0, 0));
  CHECK(q.atom_true("p", 0));
}

TEST_CASE("quotient of the uniform chain is a single reflexive state") {
  const Model m = chain_model(R"({ "p": ["a", "b", "c"] })");
  const Model q = quotient(m, compute_partition(m));
  CHECK(q.num_states() == 1);
  CHECK(q.relates(0, 0, 0));
  CHECK(q.atom_true("p", 0));
}

TEST_CASE("quotient rejects unstable partitions") {
  const Model m = three_state_fixture();
  Partition bad;
  bad.blocks = {StateSet(3, 0b011), StateSet(3, 0b100)};  // merges s and t
  bad.block_of = {0, 0, 1};
  CHECK_THROWS_AS(quotient(m, bad), model_error);
}

TEST_CASE("quotient preserves truth, including nested U") {
  std::mt19937_64 rng(404);
  RandomFormulaOptions fopt;
  fopt.max_depth = 3;
  fopt.agents = {"i"};
  for (int round = 0; round < 40; ++round) {
    const Model m = random_model(rng, 4, {"i"}, {"p", "q"});
    const Partition part = compute_partition(m);
    const Model q = quotient(m, part);
    Evaluator em(m);
    Evaluator eq(q);
    for (int k = 0; k < 10; ++k) {
      const FormulaPtr f = random_formula(rng, fopt);
      for (int s = 0; s < m.num_states(); ++s)
        CHECK(em.eval(s, f) == eq.eval(part.block_of[s], f));
    }
  }
}

TEST_CASE("characteristic formulas of the two-state fixture") {
  const Model m = two_state_fixture();
  const int s = m.state_index("s");
  CHECK(*characteristic(m, s, 0) == *atom("p"));
  CHECK(*characteristic(m, m.state_index("t"), 0) == *neg(atom("p")));
  // rank 1 pins the state: its extension is exactly {s}
  const FormulaPtr c1 = characteristic(m, s, 1);
  CHECK(is_el(c1));
  CHECK(extension(m, c1) == StateSet::single(2, s));
}

TEST_CASE("characteristic extension at full rank equals the block") {
  std::mt19937_64 rng(555);
  for (int round = 0; round < 30; ++round) {
    const Model m = random_model(rng, 4, {"i"}, {"p"});
    const Partition p = compute_partition(m);
    Evaluator ev(m);
    for (int s = 0; s < m.num_states(); ++s) {
      const FormulaPtr c = characteristic(m, s, m.num_states());
      CHECK(is_el(c));
      CHECK(ev.extension(c) == p.blocks[p.block_of[s]]);
    }
  }
}

TEST_CASE("closed subsets enumerate unions containing the pivot block") {
  const Model m = three_state_fixture();
  const Partition p = compute_partition(m);
  const int s = m.state_index("s"), t = m.state_index("t"), u = m.state_index("u");
  const auto subsets = closed_subsets(p, s);
  REQUIRE(subsets.size() == 4);
  CHECK(subsets[0] == StateSet::single(3, s));
  CHECK(subsets[1] == (StateSet::single(3, s) | StateSet::single(3, t)));
  CHECK(subsets[2] == (StateSet::single(3, s) | StateSet::single(3, u)));
  CHECK(subsets[3] == StateSet::all(3));

  const Model one = quotient(load_model(R"({
    "states": ["x", "y"], "agents": ["i"],
    "relations": { "i": [["x","y"],["y","x"]] }, "reflexive_closure": true,
    "valuation": {} })"), compute_partition(load_model(R"({
    "states": ["x", "y"], "agents": ["i"],
    "relations": { "i": [["x","y"],["y","x"]] }, "reflexive_closure": true,
    "valuation": {} })")));
  const auto single = closed_subsets(compute_partition(one), 0);
  REQUIRE(single.size() == 1);
  CHECK(single[0].full());

  const Model two = two_state_fixture();
  const auto pair = closed_subsets(compute_partition(two), two.state_index("s"));
  REQUIRE(pair.size() == 2);
  CHECK(pair[0] == StateSet::single(2, two.state_index("s")));
  CHECK(pair[1].full());
}

TEST_CASE("definability: closed subsets are exactly the characteristic unions") {
  std::mt19937_64 rng(777);
  for (int round = 0; round < 25; ++round) {
    const Model m = random_model(rng, 4, {"i"}, {"p", "q"});
    const Partition p = compute_partition(m);
    Evaluator ev(m);
    std::vector<FormulaPtr> block_formula;
    for (const auto& block : p.blocks)
      block_formula.push_back(characteristic(m, block.members().front(), m.num_states()));
    // every nonempty union of blocks is definable by the disjunction of its
    // blocks' characteristic formulas
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << p.num_blocks()); ++mask) {
      StateSet expected = StateSet::none(m.num_states());
      FormulaPtr psi;
      for (int b = 0; b < p.num_blocks(); ++b) {
        if (!((mask >> b) & 1)) continue;
        expected = expected | p.blocks[b];
        psi = psi ? disj(psi, block_formula[b]) : block_formula[b];
      }
      CHECK(ev.extension(psi) == expected);
    }
  }
}

TEST_SUITE_END();
