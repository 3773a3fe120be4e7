#include "lut/semantics.hpp"

#include <algorithm>
#include <mutex>
#include <thread>

namespace lut {

namespace {

struct MemoKey {
  const Formula* f;
  int state;
  friend bool operator==(const MemoKey&, const MemoKey&) = default;
};

struct MemoKeyHash {
  std::size_t operator()(const MemoKey& k) const {
    return std::hash<const void*>()(k.f) * 31 + static_cast<std::size_t>(k.state);
  }
};

}  // namespace

struct Evaluator::Ctx {
  explicit Ctx(Model m) : model(std::move(m)) {}

  Model model;
  std::vector<int> local_of_parent;  // empty for the root
  std::optional<Partition> part;
  std::unordered_map<MemoKey, bool, MemoKeyHash> memo;
  std::map<std::uint64_t, std::unique_ptr<Ctx>> children;  // keyed by keep mask
};

Evaluator::Evaluator(Model m) : root_(std::make_unique<Ctx>(std::move(m))) {}
Evaluator::Evaluator(Evaluator&&) noexcept = default;
Evaluator& Evaluator::operator=(Evaluator&&) noexcept = default;
Evaluator::~Evaluator() = default;

const Model& Evaluator::model() const { return root_->model; }

Evaluator::Ctx& Evaluator::restriction(Ctx& ctx, const StateSet& keep) {
  auto it = ctx.children.find(keep.bits());
  if (it != ctx.children.end()) return *it->second;
  auto child = std::make_unique<Ctx>(ctx.model.restrict(keep));
  child->local_of_parent.assign(ctx.model.num_states(), -1);
  int local = 0;
  for (int s = 0; s < ctx.model.num_states(); ++s)
    if (keep.contains(s)) child->local_of_parent[s] = local++;
  return *ctx.children.emplace(keep.bits(), std::move(child)).first->second;
}

const Partition& Evaluator::partition_of(Ctx& ctx) {
  if (!ctx.part) ctx.part = compute_partition(ctx.model);
  return *ctx.part;
}

bool Evaluator::know_all(Ctx& ctx, int agent, int state, const Formula* body) {
  for (int t : ctx.model.successors(agent, state).members())
    if (!eval_in(ctx, t, body)) return false;
  return true;
}

StateSet Evaluator::extension_in(Ctx& ctx, const Formula* f) {
  StateSet out = StateSet::none(ctx.model.num_states());
  for (int s = 0; s < ctx.model.num_states(); ++s)
    if (eval_in(ctx, s, f)) out.insert(s);
  return out;
}

bool Evaluator::eval_in(Ctx& ctx, int state, const Formula* f) {
  const MemoKey key{f, state};
  if (auto it = ctx.memo.find(key); it != ctx.memo.end()) return it->second;

  bool value = false;
  switch (f->conn()) {
    case Conn::Atom:
      value = ctx.model.atom_true(f->atom_name(), state);
      break;
    case Conn::Top:
      value = true;
      break;
    case Conn::Neg:
      value = !eval_in(ctx, state, f->child().get());
      break;
    case Conn::And:
      value = eval_in(ctx, state, f->lhs().get()) && eval_in(ctx, state, f->rhs().get());
      break;
    case Conn::Know:
      value = know_all(ctx, ctx.model.agent_index(f->agent()), state, f->child().get());
      break;
    case Conn::Ann: {
      if (!eval_in(ctx, state, f->announced().get())) {
        value = true;  // vacuous: the announcement is false here
        break;
      }
      const StateSet kept = extension_in(ctx, f->announced().get());
      Ctx& sub = restriction(ctx, kept);
      value = eval_in(sub, sub.local_of_parent[state], f->body().get());
      break;
    }
    case Conn::Unk: {
      if (!eval_in(ctx, state, f->child().get())) {
        value = false;
        break;
      }
      const int agent = ctx.model.agent_index(f->agent());
      value = true;
      ClosedSubsets subsets(partition_of(ctx), state);
      while (auto keep = subsets.next()) {
        Ctx& sub = keep->full() ? ctx : restriction(ctx, *keep);
        const int local = keep->full() ? state : sub.local_of_parent[state];
        if (know_all(sub, agent, local, f->child().get())) {
          value = false;  // this announcement would make the body known
          break;
        }
      }
      break;
    }
  }
  ctx.memo.emplace(key, value);
  return value;
}

bool Evaluator::eval(int state, const FormulaPtr& f) {
  if (state < 0 || state >= root_->model.num_states())
    throw model_error("state index out of range");
  retained_.push_back(f);
  return eval_in(*root_, state, f.get());
}

bool Evaluator::eval(std::string_view state_name, const FormulaPtr& f) {
  return eval(root_->model.state_index(state_name), f);
}

Verdict Evaluator::eval_with_witness(int state, const FormulaPtr& f) {
  if (f->conn() != Conn::Unk)
    throw model_error("witness evaluation requires an outermost U formula");
  if (state < 0 || state >= root_->model.num_states())
    throw model_error("state index out of range");
  retained_.push_back(f);

  const Formula* body = f->child().get();
  if (!eval_in(*root_, state, body)) return {false, std::nullopt};

  const int agent = root_->model.agent_index(f->agent());
  const Partition& part = partition_of(*root_);
  ClosedSubsets subsets(part, state);
  while (auto keep = subsets.next()) {
    Ctx& sub = keep->full() ? *root_ : restriction(*root_, *keep);
    const int local = keep->full() ? state : sub.local_of_parent[state];
    if (!know_all(sub, agent, local, body)) continue;

    // Defeated: build a defining EL formula for the subset out of
    // characteristic disjunctions, one representative per block.
    const int rank = root_->model.num_states();
    FormulaPtr psi;
    for (const StateSet& block : part.blocks) {
      if (!block.subset_of(*keep)) continue;
      FormulaPtr c = characteristic(root_->model, block.members().front(), rank);
      psi = psi ? disj(std::move(psi), std::move(c)) : std::move(c);
    }
    return {false, Witness{*keep, std::move(psi)}};
  }
  return {true, std::nullopt};
}

Verdict Evaluator::eval_with_witness(std::string_view state_name, const FormulaPtr& f) {
  return eval_with_witness(root_->model.state_index(state_name), f);
}

StateSet Evaluator::extension(const FormulaPtr& f) {
  retained_.push_back(f);
  return extension_in(*root_, f.get());
}

bool eval(const Model& m, std::string_view state_name, const FormulaPtr& f) {
  Evaluator ev(m);
  return ev.eval(state_name, f);
}

Verdict eval_with_witness(const Model& m, std::string_view state_name, const FormulaPtr& f) {
  Evaluator ev(m);
  return ev.eval_with_witness(state_name, f);
}

StateSet extension(const Model& m, const FormulaPtr& f) {
  Evaluator ev(m);
  return ev.extension(f);
}

namespace {

// First state falsifying f in m, if any.
std::optional<int> falsifying_state(const Model& m, const FormulaPtr& f) {
  Evaluator ev(m);
  for (int s = 0; s < m.num_states(); ++s)
    if (!ev.eval(s, f)) return s;
  return std::nullopt;
}

EnumOptions enum_options_for(const FormulaPtr& f, const ValidityOptions& opt) {
  EnumOptions eo;
  eo.max_states = opt.max_states;
  eo.agents = opt.agents.empty() ? collect_agents(*f) : opt.agents;
  eo.atoms = opt.atoms.empty() ? collect_atoms(*f) : opt.atoms;
  eo.frame = opt.frame;
  eo.max_models = opt.max_models;
  return eo;
}

ValidityResult bounded_validity_parallel(const FormulaPtr& f, const EnumOptions& eo, int jobs) {
  std::mutex mu;
  ModelEnumerator en(eo);
  std::uint64_t seq = 0;
  bool source_empty = false;
  std::optional<std::pair<std::uint64_t, Countermodel>> best;
  std::exception_ptr failure;

  auto worker = [&] {
    for (;;) {
      std::optional<Model> m;
      std::uint64_t my_seq = 0;
      {
        std::lock_guard<std::mutex> lock(mu);
        if (source_empty || failure) return;
        if (best && seq + 1 > best->first) return;  // later models cannot win
        try {
          m = en.next();
        } catch (...) {
          failure = std::current_exception();
          return;
        }
        if (!m) {
          source_empty = true;
          return;
        }
        my_seq = ++seq;
      }
      if (auto s = falsifying_state(*m, f)) {
        std::lock_guard<std::mutex> lock(mu);
        if (!best || my_seq < best->first)
          best = {my_seq, Countermodel{*m, m->state_name(*s)}};
      }
    }
  };

  std::vector<std::thread> threads;
  threads.reserve(jobs);
  for (int i = 0; i < jobs; ++i) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);

  if (best) return {false, best->first, std::move(best->second)};
  return {true, seq, std::nullopt};
}

}  // namespace

ValidityResult bounded_validity(const FormulaPtr& f, const ValidityOptions& opt) {
  const EnumOptions eo = enum_options_for(f, opt);
  if (opt.jobs > 1) return bounded_validity_parallel(f, eo, opt.jobs);

  ModelEnumerator en(eo);
  std::uint64_t checked = 0;
  while (auto m = en.next()) {
    ++checked;
    if (auto s = falsifying_state(*m, f))
      return {false, checked, Countermodel{*m, m->state_name(*s)}};
  }
  return {true, checked, std::nullopt};
}

}  // namespace lut
