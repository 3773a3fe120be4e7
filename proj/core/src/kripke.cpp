#include "lut/kripke.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace lut {

using nlohmann::json;

Model::Model(std::vector<std::string> states, std::vector<std::string> agents,
             std::vector<std::vector<StateSet>> relations, std::map<std::string, StateSet> valuation)
    : states_(std::move(states)),
      agents_(std::move(agents)),
      relations_(std::move(relations)),
      valuation_(std::move(valuation)) {
  if (states_.empty()) throw model_error("a model needs at least one state");
  if (states_.size() > 64) throw model_error("models with more than 64 states are not supported");
  {
    std::set<std::string> seen;
    for (const auto& s : states_)
      if (!seen.insert(s).second) throw model_error("duplicate state name '" + s + "'");
  }
  {
    std::set<std::string> seen;
    for (const auto& a : agents_)
      if (!seen.insert(a).second) throw model_error("duplicate agent name '" + a + "'");
  }
  const int n = num_states();
  if (relations_.size() != agents_.size())
    throw model_error("one relation per agent is required");
  for (std::size_t a = 0; a < relations_.size(); ++a) {
    if (relations_[a].size() != states_.size())
      throw model_error("relation for agent '" + agents_[a] + "' has the wrong arity");
    for (int s = 0; s < n; ++s) {
      if (relations_[a][s].universe() != n)
        throw model_error("relation for agent '" + agents_[a] + "' has the wrong arity");
      if (!relations_[a][s].contains(s))
        throw model_error("relation for agent '" + agents_[a] + "' is not reflexive: missing (" +
                          states_[s] + "," + states_[s] + ")");
    }
  }
  for (const auto& [atom, set] : valuation_)
    if (set.universe() != n)
      throw model_error("valuation of atom '" + atom + "' has the wrong arity");
}

std::optional<int> Model::find_state(std::string_view name) const {
  for (std::size_t i = 0; i < states_.size(); ++i)
    if (states_[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

int Model::state_index(std::string_view name) const {
  if (auto i = find_state(name)) return *i;
  throw model_error("unknown state '" + std::string(name) + "'");
}

std::optional<int> Model::find_agent(std::string_view name) const {
  for (std::size_t i = 0; i < agents_.size(); ++i)
    if (agents_[i] == name) return static_cast<int>(i);
  return std::nullopt;
}

int Model::agent_index(std::string_view name) const {
  if (auto i = find_agent(name)) return *i;
  throw model_error("unknown agent '" + std::string(name) + "'");
}

bool Model::atom_true(const std::string& atom, int state) const {
  auto it = valuation_.find(atom);
  return it != valuation_.end() && it->second.contains(state);
}

Model Model::restrict(const StateSet& keep) const {
  if (keep.empty()) throw model_error("cannot restrict a model to the empty state set");
  const int n = num_states();
  std::vector<int> local(n, -1);
  std::vector<std::string> states;
  for (int s = 0; s < n; ++s) {
    if (keep.contains(s)) {
      local[s] = static_cast<int>(states.size());
      states.push_back(states_[s]);
    }
  }
  const int m = static_cast<int>(states.size());
  std::vector<std::vector<StateSet>> relations(agents_.size(), std::vector<StateSet>(m, StateSet::none(m)));
  for (std::size_t a = 0; a < agents_.size(); ++a)
    for (int s = 0; s < n; ++s) {
      if (!keep.contains(s)) continue;
      for (int t = 0; t < n; ++t)
        if (keep.contains(t) && relations_[a][s].contains(t)) relations[a][local[s]].insert(local[t]);
    }
  std::map<std::string, StateSet> valuation;
  for (const auto& [atom, set] : valuation_) {
    StateSet v = StateSet::none(m);
    for (int s = 0; s < n; ++s)
      if (keep.contains(s) && set.contains(s)) v.insert(local[s]);
    valuation.emplace(atom, v);
  }
  return Model(std::move(states), agents_, std::move(relations), std::move(valuation));
}

FrameFlags Model::frame_properties(int agent) const {
  const int n = num_states();
  FrameFlags flags{true, true, true};
  for (int x = 0; x < n; ++x)
    if (!relates(agent, x, x)) flags.reflexive = false;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!relates(agent, x, y)) continue;
      for (int z = 0; z < n; ++z) {
        if (relates(agent, y, z) && !relates(agent, x, z)) flags.transitive = false;
        if (relates(agent, x, z) && !relates(agent, y, z)) flags.euclidean = false;
      }
    }
  return flags;
}

FrameFlags Model::frame_properties() const {
  FrameFlags flags{true, true, true};
  for (int a = 0; a < num_agents(); ++a) {
    FrameFlags f = frame_properties(a);
    flags.reflexive &= f.reflexive;
    flags.transitive &= f.transitive;
    flags.euclidean &= f.euclidean;
  }
  return flags;
}

bool Model::satisfies(FrameClass fc) const {
  FrameFlags f = frame_properties();
  switch (fc) {
    case FrameClass::Reflexive: return f.reflexive;
    case FrameClass::Transitive: return f.reflexive && f.transitive;
    case FrameClass::Euclidean: return f.reflexive && f.euclidean;
    case FrameClass::Both: return f.reflexive && f.transitive && f.euclidean;
  }
  return false;
}

namespace {

const json& require(const json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) throw model_error(std::string("model document is missing \"") + key + "\"");
  return *it;
}

std::vector<std::string> string_list(const json& arr, const std::string& what) {
  if (!arr.is_array()) throw model_error(what + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& e : arr) {
    if (!e.is_string()) throw model_error(what + " must be an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

Model load_model(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw model_error(std::string("invalid model document: ") + e.what());
  }
  if (!doc.is_object()) throw model_error("model document must be a JSON object");

  std::vector<std::string> states = string_list(require(doc, "states"), "\"states\"");
  std::vector<std::string> agents = string_list(require(doc, "agents"), "\"agents\"");
  const bool closure = doc.value("reflexive_closure", false);

  const int n = static_cast<int>(states.size());
  if (n == 0) throw model_error("a model needs at least one state");
  if (n > 64) throw model_error("models with more than 64 states are not supported");
  std::map<std::string, int> index;
  for (int i = 0; i < n; ++i) {
    if (!index.emplace(states[i], i).second)
      throw model_error("duplicate state name '" + states[i] + "'");
  }
  auto state_of = [&](const std::string& name, const std::string& where) {
    auto it = index.find(name);
    if (it == index.end()) throw model_error("unknown state '" + name + "' in " + where);
    return it->second;
  };

  std::vector<std::vector<StateSet>> relations(agents.size(), std::vector<StateSet>(n, StateSet::none(n)));
  if (auto it = doc.find("relations"); it != doc.end()) {
    if (!it->is_object()) throw model_error("\"relations\" must map agents to edge lists");
    for (const auto& [agent, edges] : it->items()) {
      std::size_t a = 0;
      while (a < agents.size() && agents[a] != agent) ++a;
      if (a == agents.size()) throw model_error("relation for undeclared agent '" + agent + "'");
      if (!edges.is_array()) throw model_error("relation for agent '" + agent + "' must be an edge list");
      for (const auto& edge : edges) {
        if (!edge.is_array() || edge.size() != 2 || !edge[0].is_string() || !edge[1].is_string())
          throw model_error("relation for agent '" + agent + "' must contain [from,to] pairs");
        const int from = state_of(edge[0].get<std::string>(), "relation for agent '" + agent + "'");
        const int to = state_of(edge[1].get<std::string>(), "relation for agent '" + agent + "'");
        relations[a][from].insert(to);
      }
    }
  }
  for (std::size_t a = 0; a < agents.size(); ++a)
    for (int s = 0; s < n; ++s) {
      if (closure) relations[a][s].insert(s);
      else if (!relations[a][s].contains(s))
        throw model_error("relation for agent '" + agents[a] + "' is not reflexive: missing (" +
                          states[s] + "," + states[s] + ")");
    }

  std::map<std::string, StateSet> valuation;
  if (auto it = doc.find("valuation"); it != doc.end()) {
    if (!it->is_object()) throw model_error("\"valuation\" must map atoms to state lists");
    for (const auto& [atom, list] : it->items()) {
      StateSet set = StateSet::none(n);
      for (const auto& name : string_list(list, "valuation of atom '" + atom + "'")) {
        set.insert(state_of(name, "valuation of atom '" + atom + "'"));
      }
      valuation.emplace(atom, set);
    }
  }

  return Model(std::move(states), std::move(agents), std::move(relations), std::move(valuation));
}

Model load_model_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw model_error("cannot open model file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_model(buf.str());
}

std::string save_model(const Model& m) {
  json doc;
  doc["states"] = m.states();
  doc["agents"] = m.agents();
  doc["reflexive_closure"] = false;
  json rels = json::object();
  for (int a = 0; a < m.num_agents(); ++a) {
    json edges = json::array();
    for (int s = 0; s < m.num_states(); ++s)
      for (int t = 0; t < m.num_states(); ++t)
        if (m.relates(a, s, t)) edges.push_back(json::array({m.state_name(s), m.state_name(t)}));
    rels[m.agents()[a]] = std::move(edges);
  }
  doc["relations"] = std::move(rels);
  json val = json::object();
  for (const auto& [atom, set] : m.valuation()) {
    json list = json::array();
    for (int s : set.members()) list.push_back(m.state_name(s));
    val[atom] = std::move(list);
  }
  doc["valuation"] = std::move(val);
  return doc.dump(2);
}

namespace {

// Adjacency rows for a relation mask over the off-diagonal pair slots
// (from-major order), diagonal always present.
std::vector<StateSet> mask_to_relation(int k, std::uint64_t mask) {
  std::vector<StateSet> rows(k, StateSet::none(k));
  int bit = 0;
  for (int from = 0; from < k; ++from) {
    rows[from].insert(from);
    for (int to = 0; to < k; ++to) {
      if (from == to) continue;
      if ((mask >> bit) & 1) rows[from].insert(to);
      ++bit;
    }
  }
  return rows;
}

bool relation_in_class(const std::vector<StateSet>& rows, FrameClass fc) {
  if (fc == FrameClass::Reflexive) return true;
  const int k = static_cast<int>(rows.size());
  const bool need_trans = fc == FrameClass::Transitive || fc == FrameClass::Both;
  const bool need_eucl = fc == FrameClass::Euclidean || fc == FrameClass::Both;
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) {
      if (!rows[x].contains(y)) continue;
      if (need_trans && !rows[y].subset_of(rows[x])) return false;
      if (need_eucl && !rows[x].subset_of(rows[y])) return false;
    }
  return true;
}

}  // namespace

ModelEnumerator::ModelEnumerator(EnumOptions options) : opt_(std::move(options)) {
  if (opt_.max_states < 1) throw model_error("enumeration needs max_states >= 1");
  if (opt_.max_states > 5)
    throw model_error("enumeration beyond 5 states is not supported (relation space too large)");
  {
    std::set<std::string> seen(opt_.agents.begin(), opt_.agents.end());
    if (seen.size() != opt_.agents.size()) throw model_error("duplicate agent in enumeration options");
  }
  {
    std::set<std::string> seen(opt_.atoms.begin(), opt_.atoms.end());
    if (seen.size() != opt_.atoms.size()) throw model_error("duplicate atom in enumeration options");
  }
  exhausted_ = !start_state_count(1);
}

bool ModelEnumerator::start_state_count(int k) {
  if (k > opt_.max_states) return false;
  k_ = k;
  valid_rels_.clear();
  const int free_pairs = k * k - k;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_pairs); ++mask) {
    if (relation_in_class(mask_to_relation(k, mask), opt_.frame)) valid_rels_.push_back(mask);
  }
  rel_digit_.assign(opt_.agents.size(), 0);
  val_mask_ = 0;
  val_limit_ = std::uint64_t{1} << (opt_.atoms.size() * static_cast<std::size_t>(k));
  return true;
}

Model ModelEnumerator::build() const {
  std::vector<std::string> states;
  for (int i = 0; i < k_; ++i) states.push_back("s" + std::to_string(i));
  std::vector<std::vector<StateSet>> relations;
  relations.reserve(opt_.agents.size());
  for (std::size_t a = 0; a < opt_.agents.size(); ++a)
    relations.push_back(mask_to_relation(k_, valid_rels_[rel_digit_[a]]));
  std::map<std::string, StateSet> valuation;
  for (std::size_t j = 0; j < opt_.atoms.size(); ++j) {
    StateSet set = StateSet::none(k_);
    for (int i = 0; i < k_; ++i)
      if ((val_mask_ >> (j * k_ + i)) & 1) set.insert(i);
    valuation.emplace(opt_.atoms[j], set);
  }
  return Model(std::move(states), opt_.agents, std::move(relations), std::move(valuation));
}

std::optional<Model> ModelEnumerator::next() {
  if (exhausted_) return std::nullopt;
  if (yielded_ >= opt_.max_models)
    throw enum_cap_exceeded("model enumeration exceeded the cap of " +
                            std::to_string(opt_.max_models) + " models");
  Model m = build();
  ++yielded_;

  // Advance: valuation fastest, then relation digits (last agent fastest),
  // then the state count.
  if (++val_mask_ >= val_limit_) {
    val_mask_ = 0;
    std::size_t a = opt_.agents.size();
    while (a > 0) {
      --a;
      if (++rel_digit_[a] < valid_rels_.size()) break;
      rel_digit_[a] = 0;
      if (a == 0) {
        if (!start_state_count(k_ + 1)) exhausted_ = true;
        break;
      }
    }
    if (opt_.agents.empty()) {
      if (!start_state_count(k_ + 1)) exhausted_ = true;
    }
  }
  return m;
}

}  // namespace lut
