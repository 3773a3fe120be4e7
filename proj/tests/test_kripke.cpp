#include <doctest.h>

#include <random>
#include <string>

#include "lut/kripke.hpp"
#include "lut/suite.hpp"

using namespace lut;

namespace {

std::string two_state_doc(bool closure) {
  std::string doc = R"({
    "states": ["s", "t"],
    "agents": ["i"],
    "relations": { "i": [["s", "s"], ["s", "t"]] },
    "reflexive_closure": )";
  doc += closure ? "true" : "false";
  doc += R"(, "valuation": { "p": ["s"] } })";
  return doc;
}

// Reference count of reflexive labeled models: every relation matrix that
// contains the diagonal, counted per state count, times the valuations.
std::uint64_t reference_reflexive_count(int max_states, int agents, int atoms) {
  std::uint64_t total = 0;
  for (int k = 1; k <= max_states; ++k) {
    std::uint64_t relations = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (k * k)); ++mask) {
      bool reflexive = true;
      for (int s = 0; s < k && reflexive; ++s)
        if (!((mask >> (s * k + s)) & 1)) reflexive = false;
      if (reflexive) ++relations;
    }
    std::uint64_t models = 1;
    for (int a = 0; a < agents; ++a) models *= relations;
    models <<= static_cast<unsigned>(atoms * k);
    total += models;
  }
  return total;
}

}  // namespace

TEST_SUITE_BEGIN("kripke");

TEST_CASE("loading applies the reflexive closure") {
  const Model m = load_model(two_state_doc(true));
  const int s = m.state_index("s"), t = m.state_index("t"), i = m.agent_index("i");
  CHECK(m.relates(i, s, s));
  CHECK(m.relates(i, t, t));
  CHECK(m.relates(i, s, t));
  CHECK(!m.relates(i, t, s));
  CHECK(m.atom_true("p", s));
  CHECK(!m.atom_true("p", t));
  CHECK(!m.atom_true("unlisted", s));  // absent atoms are false everywhere
}

TEST_CASE("missing reflexive pair without closure is an error") {
  CHECK_THROWS_WITH_AS(load_model(two_state_doc(false)),
                       doctest::Contains("missing (t,t)"), model_error);
}

TEST_CASE("document validation errors") {
  CHECK_THROWS_WITH_AS(
      load_model(R"({"states":["s"],"agents":["i"],"relations":{"i":[["s","u"]]},
                     "reflexive_closure":true,"valuation":{}})"),
      doctest::Contains("unknown state 'u'"), model_error);
  CHECK_THROWS_WITH_AS(
      load_model(R"({"states":["s","s"],"agents":["i"],"relations":{},
                     "reflexive_closure":true,"valuation":{}})"),
      doctest::Contains("duplicate state name 's'"), model_error);
  CHECK_THROWS_WITH_AS(
      load_model(R"({"states":[],"agents":["i"],"relations":{},
                     "reflexive_closure":true,"valuation":{}})"),
      doctest::Contains("at least one state"), model_error);
  CHECK_THROWS_WITH_AS(
      load_model(R"({"states":["s"],"agents":["i"],"relations":{},
                     "reflexive_closure":true,"valuation":{"p":["x"]}})"),
      doctest::Contains("unknown state 'x'"), model_error);
  CHECK_THROWS_WITH_AS(
      load_model(R"({"states":["s"],"agents":["i"],"relations":{"j":[]},
                     "reflexive_closure":true,"valuation":{}})"),
      doctest::Contains("undeclared agent 'j'"), model_error);
  CHECK_THROWS_AS(load_model("not json"), model_error);
  CHECK_THROWS_AS(load_model(R"({"agents":["i"]})"), model_error);
}

TEST_CASE("restriction keeps order, relations and valuation") {
  const Model m = three_state_fixture();
  const int s = m.state_index("s"), u = m.state_index("u");
  StateSet keep = StateSet::none(3);
  keep.insert(s).insert(u);
  const Model r = m.restrict(keep);
  CHECK(r.states() == std::vector<std::string>{"s", "u"});
  const int rs = r.state_index("s"), ru = r.state_index("u"), i = r.agent_index("i");
  CHECK(r.relates(i, rs, rs));
  CHECK(r.relates(i, ru, ru));
  CHECK(r.relates(i, rs, ru));
  CHECK(!r.relates(i, ru, rs));
  CHECK(r.atom_true("p", rs));
  CHECK(!r.atom_true("p", ru));
  CHECK(r.atom_true("q", rs));
  CHECK(r.atom_true("q", ru));
}

TEST_CASE("restriction invariants") {
  const Model m = three_state_fixture();
  CHECK(save_model(m.restrict(StateSet::all(3))) == save_model(m));
  CHECK_THROWS_AS(m.restrict(StateSet::none(3)), model_error);

  StateSet st = StateSet::none(3);
  st.insert(m.state_index("s")).insert(m.state_index("t"));
  StateSet su = StateSet::none(3);
  su.insert(m.state_index("s")).insert(m.state_index("u"));
  // restrict twice = restrict to the intersection
  const Model once = m.restrict(st & su);
  StateSet inner = StateSet::none(2);
  inner.insert(m.restrict(st).state_index("s"));
  const Model twice = m.restrict(st).restrict(inner);
  CHECK(save_model(once) == save_model(twice));
}

TEST_CASE("save and load round-trip") {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 20; ++i) {
    const Model m = random_model(rng, 5, {"i", "j"}, {"p", "q"});
    const std::string saved = save_model(m);
    CHECK(save_model(load_model(saved)) == saved);
  }
  CHECK(save_model(load_model(save_model(two_state_fixture()))) ==
        save_model(two_state_fixture()));
}

TEST_CASE("frame properties of the fixtures") {
  const FrameFlags two = two_state_fixture().frame_properties();
  CHECK(two.reflexive);
  CHECK(two.transitive);
  CHECK(!two.euclidean);

  const FrameFlags three = three_state_fixture().frame_properties();
  CHECK(three.reflexive);
  CHECK(three.transitive);
  CHECK(!three.euclidean);

  const Model total = load_model(R"({
    "states":["a","b","c"],"agents":["i"],
    "relations":{"i":[["a","b"],["a","c"],["b","a"],["b","c"],["c","a"],["c","b"]]},
    "reflexive_closure":true,"valuation":{}})");
  const FrameFlags all = total.frame_properties();
  CHECK(all.reflexive);
  CHECK(all.transitive);
  CHECK(all.euclidean);
}

TEST_CASE("enumeration counts against an independent count") {
  {
    EnumOptions o;
    o.max_states = 1;
    o.agents = {"i"};
    o.atoms = {"p"};
    ModelEnumerator en(o);
    int count = 0;
    while (en.next()) ++count;
    CHECK(count == 2);
  }
  {
    EnumOptions o;
    o.max_states = 2;
    o.agents = {"i"};
    ModelEnumerator en(o);
    int count = 0;
    while (en.next()) ++count;
    CHECK(count == reference_reflexive_count(2, 1, 0));
    CHECK(count == 5);
  }
  {
    EnumOptions o;
    o.max_states = 3;
    o.agents = {"i"};
    o.atoms = {"p", "q"};
    ModelEnumerator en(o);
    std::uint64_t count = 0;
    while (en.next()) ++count;
    CHECK(count == reference_reflexive_count(3, 1, 2));
    CHECK(count == 4164);
  }
  {
    // two agents pick relations independently
    EnumOptions o;
    o.max_states = 2;
    o.agents = {"i", "j"};
    ModelEnumerator en(o);
    std::uint64_t count = 0;
    while (en.next()) ++count;
    CHECK(count == reference_reflexive_count(2, 2, 0));
  }
}

TEST_CASE("frame class filters hold for every yielded model") {
  for (FrameClass fc : {FrameClass::Transitive, FrameClass::Euclidean, FrameClass::Both}) {
    EnumOptions o;
    o.max_states = 3;
    o.agents = {"i"};
    o.frame = fc;
    ModelEnumerator en(o);
    std::uint64_t count = 0;
    while (auto m = en.next()) {
      ++count;
      CHECK(m->satisfies(fc));
      CHECK(m->frame_properties().reflexive);
    }
    CHECK(count > 0);
  }
}

TEST_CASE("enumeration cap") {
  EnumOptions o;
  o.max_states = 3;
  o.agents = {"i"};
  o.atoms = {"p"};
  o.max_models = 10;
  ModelEnumerator en(o);
  for (int i = 0; i < 10; ++i) CHECK(en.next());
  CHECK_THROWS_AS(en.next(), enum_cap_exceeded);
}

TEST_CASE("state set basics") {
  StateSet set = StateSet::none(5);
  CHECK(set.empty());
  set.insert(1).insert(3);
  CHECK(set.count() == 2);
  CHECK(set.contains(3));
  CHECK(!set.contains(0));
  CHECK(set.members() == std::vector<int>{1, 3});
  CHECK(set.subset_of(StateSet::all(5)));
  CHECK((set & StateSet::single(5, 3)) == StateSet::single(5, 3));
  CHECK((set | StateSet::single(5, 0)).count() == 3);
  CHECK(StateSet::all(5).full());
}

TEST_SUITE_END();
