#include "lut/suite.hpp"

#include <atomic>
#include <functional>
#include <stdexcept>
#include <thread>

#include "lut/proofcheck.hpp"
#include "lut/semantics.hpp"

namespace lut {

Model two_state_fixture() {
  return load_model(R"({
    "states": ["s", "t"],
    "agents": ["i"],
    "relations": { "i": [["s", "t"]] },
    "reflexive_closure": true,
    "valuation": { "p": ["s"] }
  })");
}

Model three_state_fixture() {
  return load_model(R"({
    "states": ["s", "t", "u"],
    "agents": ["i"],
    "relations": { "i": [["s", "t"], ["s", "u"]] },
    "reflexive_closure": true,
    "valuation": { "p": ["s", "t"], "q": ["s", "u"] }
  })");
}

FormulaPtr random_formula(std::mt19937_64& rng, const RandomFormulaOptions& opt) {
  auto pick = [&rng](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  auto leaf = [&]() -> FormulaPtr {
    if (opt.atoms.empty() || rng() % 8 == 0) return top();
    return atom(opt.atoms[pick(opt.atoms.size())]);
  };
  std::function<FormulaPtr(int)> gen = [&](int depth) -> FormulaPtr {
    if (depth <= 0 || rng() % 5 == 0) return leaf();
    const bool modal = !opt.agents.empty();
    const bool dynamic = modal && !opt.el_only;
    const int choices = 2 + (modal ? 1 : 0) + (dynamic ? 1 : 0) + (dynamic && opt.allow_unk ? 1 : 0);
    switch (pick(static_cast<std::size_t>(choices))) {
      case 0: return neg(gen(depth - 1));
      case 1: return conj(gen(depth - 1), gen(depth - 1));
      case 2: return know(opt.agents[pick(opt.agents.size())], gen(depth - 1));
      case 3: return ann(gen(depth - 1), gen(depth - 1));
      default: return unk(opt.agents[pick(opt.agents.size())], gen(depth - 1));
    }
  };
  return gen(opt.max_depth);
}

Model random_model(std::mt19937_64& rng, int max_states, std::vector<std::string> agents,
                   std::vector<std::string> atoms) {
  const int n = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_states));
  std::vector<std::string> states;
  for (int i = 0; i < n; ++i) states.push_back("s" + std::to_string(i));
  std::vector<std::vector<StateSet>> relations(agents.size(), std::vector<StateSet>(n, StateSet::none(n)));
  for (auto& rows : relations)
    for (int s = 0; s < n; ++s) {
      rows[s].insert(s);
      for (int t = 0; t < n; ++t)
        if (t != s && rng() % 3 == 0) rows[s].insert(t);
    }
  std::map<std::string, StateSet> valuation;
  for (const auto& a : atoms) {
    StateSet set = StateSet::none(n);
    for (int s = 0; s < n; ++s)
      if (rng() % 2 == 0) set.insert(s);
    valuation.emplace(a, set);
  }
  return Model(std::move(states), std::move(agents), std::move(relations), std::move(valuation));
}

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Entry {
  const char* id;
  const char* section;
  std::function<Outcome(const SuiteOptions&)> run;
};

FormulaPtr p_atom() { return atom("p"); }

std::vector<FormulaPtr> schema_pool() {
  return {atom("p"),
          atom("q"),
          neg(atom("p")),
          conj(atom("p"), atom("q")),
          know("i", atom("p")),
          neg(know("i", atom("p")))};
}

std::vector<FormulaPtr> each1(const std::function<FormulaPtr(FormulaPtr)>& make) {
  std::vector<FormulaPtr> out;
  for (const auto& x : schema_pool()) out.push_back(make(x));
  return out;
}

std::vector<FormulaPtr> each2(const std::function<FormulaPtr(FormulaPtr, FormulaPtr)>& make) {
  std::vector<FormulaPtr> out;
  for (const auto& x : schema_pool())
    for (const auto& y : schema_pool()) out.push_back(make(x, y));
  return out;
}

void append(std::vector<FormulaPtr>& into, std::vector<FormulaPtr> more) {
  into.insert(into.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

Outcome check_valid_battery(const std::vector<FormulaPtr>& formulas, int bound, FrameClass frame,
                            std::vector<std::string> atoms = {"p", "q"}) {
  EnumOptions eo;
  eo.max_states = bound;
  eo.agents = {"i"};
  eo.atoms = std::move(atoms);
  eo.frame = frame;
  ModelEnumerator en(eo);
  std::uint64_t models = 0;
  while (auto m = en.next()) {
    ++models;
    Evaluator ev(*m);
    for (const auto& f : formulas)
      for (int s = 0; s < m->num_states(); ++s)
        if (!ev.eval(s, f))
          return {false, "\"" + render(f) + "\" fails at state " + m->state_name(s) + " of model #" +
                             std::to_string(models)};
  }
  return {true, std::to_string(formulas.size()) + " formulas hold at every state of " +
                    std::to_string(models) + " models"};
}

Outcome check_invalid(const FormulaPtr& f, const Model& fixture, const std::string& state, int bound,
                      int expect_countermodel_states = 0) {
  if (eval(fixture, state, f))
    return {false, "fixture fails to refute \"" + render(f) + "\" at state " + state};
  ValidityOptions vo;
  vo.max_states = bound;
  vo.agents = {"i"};
  auto search = bounded_validity(f, vo);
  if (search.valid)
    return {false, "search found no countermodel for \"" + render(f) + "\" within bound " +
                       std::to_string(bound)};
  const int found = search.countermodel->model.num_states();
  if (expect_countermodel_states > 0 && found != expect_countermodel_states)
    return {false, "search found a " + std::to_string(found) + "-state countermodel, expected " +
                       std::to_string(expect_countermodel_states) + " states"};
  return {true, "fixture refutes at " + state + "; search re-found a " + std::to_string(found) +
                    "-state countermodel (model #" + std::to_string(search.models_checked) + ")"};
}

Model single_state_fixture() {
  return load_model(R"({
    "states": ["s"], "agents": ["i"],
    "relations": {}, "reflexive_closure": true,
    "valuation": { "p": ["s"] }
  })");
}

FormulaPtr size_bounded(std::mt19937_64& rng, const RandomFormulaOptions& opt) {
  // keeps announcement products comfortably inside 64-bit sizes
  for (;;) {
    FormulaPtr f = random_formula(rng, opt);
    if (measures(f).size <= 1'000'000) return f;
  }
}

Outcome check_complexity_properties(const SuiteOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  RandomFormulaOptions any;
  any.max_depth = 4;
  RandomFormulaOptions el;
  el.max_depth = 3;
  el.el_only = true;
  const std::string agent = "i";

  for (int sample = 0; sample < opt.complexity_samples; ++sample) {
    const FormulaPtr psi = size_bounded(rng, any);
    const FormulaPtr chi = size_bounded(rng, any);
    const FormulaPtr chi2 = size_bounded(rng, any);
    const FormulaPtr delta = size_bounded(rng, any);
    const FormulaPtr el_chi = size_bounded(rng, el);
    const FormulaPtr el_delta = size_bounded(rng, el);

    const struct {
      const char* label;
      FormulaPtr less;
      FormulaPtr more;
    } cases[] = {
        {"(1)", psi, neg(psi)},
        {"(2) left", psi, conj(psi, chi)},
        {"(2) right", chi, conj(psi, chi)},
        {"(3)", psi, know(agent, psi)},
        {"(4)", impl(psi, p_atom()), ann(psi, p_atom())},
        {"(5)", impl(psi, neg(ann(psi, chi))), ann(psi, neg(chi))},
        {"(6) left", ann(psi, chi), ann(psi, conj(chi, chi2))},
        {"(6) right", ann(psi, chi2), ann(psi, conj(chi, chi2))},
        {"(7)", impl(psi, know(agent, ann(psi, chi))), ann(psi, know(agent, chi))},
        {"(8)", ann(conj(psi, ann(psi, chi)), delta), ann(psi, ann(chi, delta))},
        {"(9) body", ann(psi, chi), ann(psi, unk(agent, chi))},
        {"(9) unfolded", ann(psi, ann(el_delta, neg(know(agent, chi)))), ann(psi, unk(agent, chi))},
        {"(10) body", psi, unk(agent, psi)},
        {"(10) unfolded", ann(el_chi, neg(know(agent, psi))), unk(agent, psi)},
    };
    for (const auto& c : cases)
      if (!less_complex(c.less, c.more))
        return {false, std::string("sample ") + std::to_string(sample) + " " + c.label + ": \"" +
                           render(c.less) + "\" is not less complex than \"" + render(c.more) + "\""};
  }
  return {true, std::to_string(opt.complexity_samples) +
                    " samples x 14 strict inequalities, no violations"};
}

Outcome check_axioms_sound(const SuiteOptions& opt) {
  std::mt19937_64 rng(opt.seed ^ 0xa10a105u);
  RandomFormulaOptions small;
  small.max_depth = 2;
  RandomFormulaOptions el;
  el.max_depth = 2;
  el.el_only = true;
  const std::string i = "i";

  std::vector<std::pair<AxiomName, FormulaPtr>> instances;
  for (int round = 0; round < 3; ++round) {
    const FormulaPtr f = size_bounded(rng, small);
    const FormulaPtr g = size_bounded(rng, small);
    const FormulaPtr a = size_bounded(rng, small);
    const FormulaPtr b = size_bounded(rng, small);
    const FormulaPtr e = size_bounded(rng, el);
    instances.emplace_back(AxiomName::K, impl(know(i, impl(f, g)), impl(know(i, f), know(i, g))));
    instances.emplace_back(AxiomName::KA, impl(ann(a, impl(f, g)), impl(ann(a, f), ann(a, g))));
    instances.emplace_back(AxiomName::T, impl(know(i, f), f));
    instances.emplace_back(AxiomName::AP, iff(ann(a, p_atom()), impl(a, p_atom())));
    instances.emplace_back(AxiomName::AN, iff(ann(a, neg(f)), impl(a, neg(ann(a, f)))));
    instances.emplace_back(AxiomName::AC, iff(ann(a, conj(f, g)), conj(ann(a, f), ann(a, g))));
    instances.emplace_back(AxiomName::AK, iff(ann(a, know(i, f)), impl(a, know(i, ann(a, f)))));
    instances.emplace_back(AxiomName::AA, iff(ann(a, ann(b, f)), ann(conj(a, ann(a, b)), f)));
    instances.emplace_back(AxiomName::AU, impl(unk(i, f), conj(f, ann(e, neg(know(i, f))))));
  }

  std::vector<FormulaPtr> formulas;
  for (const auto& [name, instance] : instances) {
    if (!match_axiom(*instance, name))
      return {false, std::string("constructed ") + axiom_name_string(name) +
                         " instance does not match its own schema: " + render(instance)};
    formulas.push_back(instance);
  }
  Outcome battery = check_valid_battery(formulas, std::min(opt.bound, 3), FrameClass::Reflexive);
  if (!battery.pass) return battery;
  return {true, std::to_string(instances.size()) + " random axiom instances valid up to bound; " +
                    battery.detail};
}

const std::vector<Entry>& catalog() {
  static const std::vector<Entry> entries = {
      {"truth-axiom", "3.1",
       [](const SuiteOptions& o) {
         std::vector<FormulaPtr> fs = each1([](FormulaPtr x) { return impl(bullet("i", x), x); });
         append(fs, each1([](FormulaPtr x) { return impl(unk("i", x), x); }));
         return check_valid_battery(fs, o.bound, FrameClass::Reflexive);
       }},
      {"k-distribution", "3.1",
       [](const SuiteOptions& o) {
         std::vector<FormulaPtr> fs = each2([](FormulaPtr x, FormulaPtr y) {
           return impl(bullet("i", impl(x, y)), impl(bullet("i", x), bullet("i", y)));
         });
         append(fs, each2([](FormulaPtr x, FormulaPtr y) {
                  return impl(unk("i", impl(x, y)), impl(unk("i", x), unk("i", y)));
                }));
         return check_valid_battery(fs, o.bound, FrameClass::Reflexive);
       }},
      {"conj-aggregation", "3.1",
       [](const SuiteOptions& o) {
         std::vector<FormulaPtr> fs = each2([](FormulaPtr x, FormulaPtr y) {
           return impl(conj(bullet("i", x), bullet("i", y)), bullet("i", conj(x, y)));
         });
         append(fs, each2([](FormulaPtr x, FormulaPtr y) {
                  return impl(conj(unk("i", x), unk("i", y)), unk("i", conj(x, y)));
                }));
         return check_valid_battery(fs, o.bound, FrameClass::Reflexive);
       }},
      {"idempotence", "3.1",
       [](const SuiteOptions& o) {
         std::vector<FormulaPtr> fs =
             each1([](FormulaPtr x) { return impl(bullet("i", x), bullet("i", bullet("i", x))); });
         append(fs, each1([](FormulaPtr x) { return iff(bullet("i", x), bullet("i", bullet("i", x))); }));
         append(fs, each1([](FormulaPtr x) { return impl(unk("i", x), unk("i", unk("i", x))); }));
         append(fs, each1([](FormulaPtr x) { return iff(unk("i", x), unk("i", unk("i", x))); }));
         return check_valid_battery(fs, o.bound, FrameClass::Reflexive);
       }},
      {"never-known", "3.1",
       [](const SuiteOptions& o) {
         std::vector<FormulaPtr> fs =
             each1([](FormulaPtr x) { return neg(know("i", bullet("i", x))); });
         append(fs, each1([](FormulaPtr x) { return neg(know("i", unk("i", x))); }));
         return check_valid_battery(fs, o.bound, FrameClass::Reflexive);
       }},
      {"knowledge-not-unknown-transitive", "3.1",
       [](const SuiteOptions& o) {
         std::vector<FormulaPtr> fs =
             each1([](FormulaPtr x) { return neg(bullet("i", know("i", x))); });
         append(fs, each1([](FormulaPtr x) { return neg(unk("i", know("i", x))); }));
         return check_valid_battery(fs, o.bound, FrameClass::Transitive);
       }},
      {"ignorance-not-unknown-euclidean", "3.1",
       [](const SuiteOptions& o) {
         std::vector<FormulaPtr> fs =
             each1([](FormulaPtr x) { return neg(bullet("i", neg(know("i", x)))); });
         append(fs, each1([](FormulaPtr x) { return neg(unk("i", neg(know("i", x)))); }));
         return check_valid_battery(fs, o.bound, FrameClass::Euclidean);
       }},
      {"self-refuting", "3.1",
       [](const SuiteOptions& o) {
         const std::vector<FormulaPtr> fs = {
             ann(bullet("i", p_atom()), neg(bullet("i", p_atom()))),
             ann(unk("i", p_atom()), neg(unk("i", p_atom()))),
         };
         return check_valid_battery(fs, o.bound, FrameClass::Reflexive);
       }},
      {"negative-introspection-invalid", "3.1",
       [](const SuiteOptions& o) {
         const Model fixture = single_state_fixture();
         const FormulaPtr cases[] = {
             impl(neg(bullet("i", p_atom())), bullet("i", neg(bullet("i", p_atom())))),
             impl(neg(bullet("i", top())), bullet("i", neg(bullet("i", top())))),
             impl(neg(unk("i", p_atom())), unk("i", neg(unk("i", p_atom())))),
             impl(neg(unk("i", top())), unk("i", neg(unk("i", top())))),
         };
         std::string detail;
         for (const auto& f : cases) {
           Outcome r = check_invalid(f, fixture, "s", o.bound);
           if (!r.pass) return r;
           detail = r.detail;
         }
         return Outcome{true, "4 instances refuted by the single-state fixture and by search; " + detail};
       }},
      {"distribution-over-and-invalid", "3.1",
       [](const SuiteOptions& o) {
         const Model m = three_state_fixture();
         Evaluator ev(m);
         const FormulaPtr both = unk("i", conj(neg(know("i", p_atom())), neg(know("i", atom("q")))));
         const FormulaPtr left = unk("i", neg(know("i", p_atom())));
         const FormulaPtr right = unk("i", neg(know("i", atom("q"))));
         if (!ev.eval("s", both))
           return Outcome{false, "fixture: U of the conjunction should hold at s"};
         if (ev.eval("s", left) || ev.eval("s", right))
           return Outcome{false, "fixture: U of a single conjunct should fail at s"};
         const FormulaPtr schema = impl(both, disj(left, right));
         ValidityOptions vo;
         vo.max_states = o.bound;
         auto search = bounded_validity(schema, vo);
         if (search.valid)
           return Outcome{false, "search found no countermodel within bound " +
                                     std::to_string(o.bound)};
         return Outcome{true, "fixture verdicts as stated; search re-found a " +
                                  std::to_string(search.countermodel->model.num_states()) +
                                  "-state countermodel"};
       }},
      {"unknowable-implies-unknown", "3.2",
       [](const SuiteOptions& o) {
         return check_valid_battery(
             each1([](FormulaPtr x) { return impl(unk("i", x), bullet("i", x)); }), o.bound,
             FrameClass::Reflexive);
       }},
      {"bullet-to-u-invalid", "3.2",
       [](const SuiteOptions& o) {
         return check_invalid(impl(bullet("i", p_atom()), unk("i", p_atom())), two_state_fixture(),
                              "s", std::min(o.bound, 2), 2);
       }},
      {"unknown-truths-unknowable", "3.2",
       [](const SuiteOptions& o) {
         std::vector<FormulaPtr> fs =
             each1([](FormulaPtr x) { return impl(bullet("i", x), unk("i", bullet("i", x))); });
         append(fs, each1([](FormulaPtr x) { return iff(bullet("i", x), unk("i", bullet("i", x))); }));
         return check_valid_battery(fs, o.bound, FrameClass::Reflexive);
       }},
      {"u-bullet-down-invalid", "3.2",
       [](const SuiteOptions& o) {
         return check_invalid(impl(unk("i", bullet("i", p_atom())), unk("i", p_atom())),
                              two_state_fixture(), "s", std::min(o.bound, 2), 2);
       }},
      {"unknowable-is-unknown", "3.2",
       [](const SuiteOptions& o) {
         std::vector<FormulaPtr> fs =
             each1([](FormulaPtr x) { return impl(unk("i", x), bullet("i", unk("i", x))); });
         append(fs, each1([](FormulaPtr x) { return iff(unk("i", x), bullet("i", unk("i", x))); }));
         return check_valid_battery(fs, o.bound, FrameClass::Reflexive);
       }},
      {"fitch-instance", "3.2",
       [](const SuiteOptions&) {
         const Model m = two_state_fixture();
         Evaluator ev(m);
         if (!ev.eval("s", bullet("i", p_atom())))
           return Outcome{false, "fixture: B_i p should hold at s"};
         if (!ev.eval("s", unk("i", bullet("i", p_atom()))))
           return Outcome{false, "fixture: U_i B_i p should hold at s"};
         return Outcome{true, "an unknown truth is satisfiable and is an unknowable truth at the "
                              "same point (B_i p and U_i B_i p both hold at s)"};
       }},
      {"validity-knowable", "3.2",
       [](const SuiteOptions& o) {
         const std::vector<FormulaPtr> fs = {
             neg(unk("i", top())),
             neg(unk("i", disj(p_atom(), neg(p_atom())))),
             neg(unk("i", impl(know("i", p_atom()), p_atom()))),
         };
         return check_valid_battery(fs, o.bound, FrameClass::Reflexive, {"p"});
       }},
      {"complexity-properties", "5", check_complexity_properties},
      {"axioms-sound", "4", check_axioms_sound},
  };
  return entries;
}

}  // namespace

bool SuiteReport::all_pass() const {
  for (const auto& row : rows)
    if (!row.pass) return false;
  return true;
}

std::vector<std::string> suite_entry_ids() {
  std::vector<std::string> ids;
  for (const auto& entry : catalog()) ids.emplace_back(entry.id);
  return ids;
}

SuiteReport run_property_suite(const SuiteOptions& options) {
  std::vector<const Entry*> selected;
  for (const auto& entry : catalog()) {
    if (options.entries.empty()) {
      selected.push_back(&entry);
      continue;
    }
    for (const auto& wanted : options.entries)
      if (wanted == entry.id) {
        selected.push_back(&entry);
        break;
      }
  }
  if (!options.entries.empty() && selected.size() != options.entries.size()) {
    std::string known;
    for (const auto& id : suite_entry_ids()) known += " " + id;
    throw std::invalid_argument("unknown suite entry; known entries:" + known);
  }

  SuiteReport report;
  report.rows.resize(selected.size());
  auto run_one = [&](std::size_t index) {
    const Entry& entry = *selected[index];
    Outcome outcome = entry.run(options);
    report.rows[index] = {entry.id, entry.section, outcome.pass, std::move(outcome.detail)};
  };

  if (options.jobs <= 1 || selected.size() <= 1) {
    for (std::size_t i = 0; i < selected.size(); ++i) run_one(i);
    return report;
  }
  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= selected.size()) return;
      run_one(i);
    }
  };
  std::vector<std::thread> threads;
  const std::size_t n = std::min<std::size_t>(options.jobs, selected.size());
  threads.reserve(n);
  for (std::size_t i = 0; i < n; ++i) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  return report;
}

}  // namespace lut
