#include "lut/bisim.hpp"

#include <algorithm>
#include <map>

namespace lut {

namespace {

// Renumbers class ids in first-occurrence order so that fixpoint detection
// can compare assignments directly and blocks come out ordered by smallest
// member.
std::vector<int> canonicalize(const std::vector<int>& cls) {
  std::vector<int> renames(cls.size(), -1);
  std::vector<int> out(cls.size());
  int next = 0;
  for (std::size_t s = 0; s < cls.size(); ++s) {
    if (renames[cls[s]] == -1) renames[cls[s]] = next++;
    out[s] = renames[cls[s]];
  }
  return out;
}

Partition from_assignment(const Model& m, const std::vector<int>& cls) {
  Partition p;
  p.block_of = cls;
  const int blocks = *std::max_element(cls.begin(), cls.end()) + 1;
  p.blocks.assign(blocks, StateSet::none(m.num_states()));
  for (int s = 0; s < m.num_states(); ++s) p.blocks[cls[s]].insert(s);
  return p;
}

// Per-state signature under an assignment: own class plus, for every
// agent, the set of successor classes.
std::vector<int> refine_step(const Model& m, const std::vector<int>& cls) {
  const int n = m.num_states();
  std::map<std::vector<int>, int> groups;
  std::vector<int> next(n);
  for (int s = 0; s < n; ++s) {
    std::vector<int> sig{cls[s]};
    for (int a = 0; a < m.num_agents(); ++a) {
      std::vector<int> succ;
      for (int t : m.successors(a, s).members()) succ.push_back(cls[t]);
      std::sort(succ.begin(), succ.end());
      succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
      sig.push_back(-1);  // agent separator
      sig.insert(sig.end(), succ.begin(), succ.end());
    }
    auto [it, inserted] = groups.emplace(std::move(sig), static_cast<int>(groups.size()));
    next[s] = it->second;
  }
  return canonicalize(next);
}

}  // namespace

Partition compute_partition(const Model& m) {
  const int n = m.num_states();
  std::vector<int> cls(n, 0);
  {
    std::map<std::vector<char>, int> groups;
    for (int s = 0; s < n; ++s) {
      std::vector<char> profile;
      for (const auto& [atom, set] : m.valuation()) {
        if (set.empty() || set.full()) continue;  // uniform atoms cannot split
        profile.push_back(set.contains(s) ? 1 : 0);
      }
      auto [it, inserted] = groups.emplace(std::move(profile), static_cast<int>(groups.size()));
      cls[s] = it->second;
    }
    cls = canonicalize(cls);
  }
  for (int round = 0; round < n; ++round) {
    std::vector<int> next = refine_step(m, cls);
    if (next == cls) break;
    cls = std::move(next);
  }
  return from_assignment(m, cls);
}

bool is_stable(const Model& m, const Partition& p) {
  const int n = m.num_states();
  if (static_cast<int>(p.block_of.size()) != n) return false;
  StateSet covered = StateSet::none(n);
  for (std::size_t b = 0; b < p.blocks.size(); ++b) {
    const StateSet& block = p.blocks[b];
    if (block.empty() || block.universe() != n) return false;
    if (!(covered & block).empty()) return false;
    covered = covered | block;
    for (int s : block.members())
      if (p.block_of[s] != static_cast<int>(b)) return false;
  }
  if (!covered.full()) return false;

  for (const StateSet& block : p.blocks) {
    const std::vector<int> members = block.members();
    for (const auto& [atom, set] : m.valuation())
      for (int s : members)
        if (set.contains(s) != set.contains(members[0])) return false;
    // successor-block signatures must agree within the block
    for (int a = 0; a < m.num_agents(); ++a) {
      auto succ_blocks = [&](int s) {
        std::vector<int> out;
        for (int t : m.successors(a, s).members()) out.push_back(p.block_of[t]);
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
      };
      const std::vector<int> first = succ_blocks(members[0]);
      for (int s : members)
        if (succ_blocks(s) != first) return false;
    }
  }
  return true;
}

Model quotient(const Model& m, const Partition& p) {
  if (!is_stable(m, p)) throw model_error("partition is not stable for this model");
  const int blocks = p.num_blocks();
  std::vector<std::string> states;
  states.reserve(blocks);
  std::vector<int> rep(blocks);
  for (int b = 0; b < blocks; ++b) {
    rep[b] = p.blocks[b].members().front();
    states.push_back(m.state_name(rep[b]));
  }
  std::vector<std::vector<StateSet>> relations(m.num_agents(),
                                               std::vector<StateSet>(blocks, StateSet::none(blocks)));
  for (int a = 0; a < m.num_agents(); ++a)
    for (int b = 0; b < blocks; ++b)
      for (int s : p.blocks[b].members())
        for (int t : m.successors(a, s).members()) relations[a][b].insert(p.block_of[t]);
  std::map<std::string, StateSet> valuation;
  for (const auto& [atom, set] : m.valuation()) {
    StateSet v = StateSet::none(blocks);
    for (int b = 0; b < blocks; ++b)
      if (set.contains(rep[b])) v.insert(b);
    valuation.emplace(atom, v);
  }
  return Model(std::move(states), m.agents(), std::move(relations), std::move(valuation));
}

namespace {

FormulaPtr literal_profile(const Model& m, int state) {
  FormulaPtr f;
  for (const auto& [name, set] : m.valuation()) {
    FormulaPtr lit = set.contains(state) ? atom(name) : neg(atom(name));
    f = f ? conj(std::move(f), std::move(lit)) : std::move(lit);
  }
  return f ? f : top();
}

void push_unique(std::vector<FormulaPtr>& out, const FormulaPtr& f) {
  for (const auto& g : out)
    if (*g == *f) return;
  out.push_back(f);
}

}  // namespace

FormulaPtr characteristic(const Model& m, int state, int rank) {
  const int n = m.num_states();
  if (state < 0 || state >= n) throw model_error("characteristic: state index out of range");
  if (rank < 0) throw model_error("characteristic: rank must be nonnegative");

  std::vector<FormulaPtr> cur(n);
  for (int s = 0; s < n; ++s) cur[s] = literal_profile(m, s);
  for (int r = 1; r <= rank; ++r) {
    std::vector<FormulaPtr> prev = std::move(cur);
    cur.assign(n, nullptr);
    for (int s = 0; s < n; ++s) {
      FormulaPtr f = literal_profile(m, s);
      for (int a = 0; a < m.num_agents(); ++a) {
        std::vector<FormulaPtr> succ;
        for (int t : m.successors(a, s).members()) push_unique(succ, prev[t]);
        for (const auto& c : succ) f = conj(std::move(f), neg(know(m.agents()[a], neg(c))));
        FormulaPtr any;  // successors are nonempty: the relation is reflexive
        for (const auto& c : succ) any = any ? disj(std::move(any), c) : c;
        f = conj(std::move(f), know(m.agents()[a], std::move(any)));
      }
      cur[s] = std::move(f);
    }
  }
  return cur[state];
}

ClosedSubsets::ClosedSubsets(const Partition& p, int pivot_state) {
  if (pivot_state < 0 || pivot_state >= static_cast<int>(p.block_of.size()))
    throw model_error("closed subsets: pivot state out of range");
  const int pivot_block = p.block_of[pivot_state];
  base_ = p.blocks[pivot_block];
  for (int b = 0; b < p.num_blocks(); ++b)
    if (b != pivot_block) others_.push_back(p.blocks[b]);
  if (others_.size() > 25)
    throw model_error("too many bisimulation blocks to enumerate announcements");
}

std::optional<StateSet> ClosedSubsets::next() {
  if (done_) return std::nullopt;
  StateSet set = base_;
  for (std::size_t b = 0; b < others_.size(); ++b)
    if ((mask_ >> b) & 1) set = set | others_[b];
  ++mask_;
  if (mask_ >= (std::uint64_t{1} << others_.size())) done_ = true;
  return set;
}

std::vector<StateSet> closed_subsets(const Partition& p, int pivot_state) {
  ClosedSubsets stream(p, pivot_state);
  std::vector<StateSet> out;
  while (auto s = stream.next()) out.push_back(*s);
  return out;
}

}  // namespace lut
