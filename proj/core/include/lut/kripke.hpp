#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lut {

struct model_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Subset of a model's states, bitset over the state ordering.
/// Models are capped at 64 states so one word suffices.
class StateSet {
public:
  StateSet() = default;
  StateSet(int universe, std::uint64_t bits) : universe_(universe), bits_(bits) {}

  static StateSet none(int universe) { return {universe, 0}; }
  static StateSet all(int universe) {
    return {universe, universe >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << universe) - 1};
  }
  static StateSet single(int universe, int i) { return {universe, std::uint64_t{1} << i}; }

  int universe() const { return universe_; }
  std::uint64_t bits() const { return bits_; }

  bool contains(int i) const { return (bits_ >> i) & 1; }
  StateSet& insert(int i) {
    bits_ |= std::uint64_t{1} << i;
    return *this;
  }
  StateSet& remove(int i) {
    bits_ &= ~(std::uint64_t{1} << i);
    return *this;
  }

  int count() const { return __builtin_popcountll(bits_); }
  bool empty() const { return bits_ == 0; }
  bool full() const { return *this == all(universe_); }
  bool subset_of(const StateSet& other) const { return (bits_ & ~other.bits_) == 0; }

  StateSet operator&(const StateSet& o) const { return {universe_, bits_ & o.bits_}; }
  StateSet operator|(const StateSet& o) const { return {universe_, bits_ | o.bits_}; }

  friend bool operator==(const StateSet&, const StateSet&) = default;

  std::vector<int> members() const {
    std::vector<int> out;
    for (int i = 0; i < universe_; ++i)
      if (contains(i)) out.push_back(i);
    return out;
  }

private:
  int universe_ = 0;
  std::uint64_t bits_ = 0;
};

struct FrameFlags {
  bool reflexive = false;
  bool transitive = false;
  bool euclidean = false;
};

enum class FrameClass { Reflexive, Transitive, Euclidean, Both };

/// Finite Kripke model with one reflexive accessibility relation per agent
/// and a valuation mapping atoms to state sets. Atoms absent from the
/// valuation are false at every state. Immutable after construction.
class Model {
public:
  Model(std::vector<std::string> states, std::vector<std::string> agents,
        std::vector<std::vector<StateSet>> relations,  // [agent][state] -> successors
        std::map<std::string, StateSet> valuation);

  int num_states() const { return static_cast<int>(states_.size()); }
  const std::vector<std::string>& states() const { return states_; }
  const std::string& state_name(int i) const { return states_[i]; }
  std::optional<int> find_state(std::string_view name) const;
  int state_index(std::string_view name) const;  // throws model_error

  int num_agents() const { return static_cast<int>(agents_.size()); }
  const std::vector<std::string>& agents() const { return agents_; }
  std::optional<int> find_agent(std::string_view name) const;
  int agent_index(std::string_view name) const;  // throws model_error

  const StateSet& successors(int agent, int state) const { return relations_[agent][state]; }
  bool relates(int agent, int from, int to) const { return relations_[agent][from].contains(to); }

  const std::map<std::string, StateSet>& valuation() const { return valuation_; }
  bool atom_true(const std::string& atom, int state) const;

  /// Submodel induced by a nonempty subset of states (announcement update).
  /// Relative state order is preserved; all declared atoms are kept.
  Model restrict(const StateSet& keep) const;

  FrameFlags frame_properties(int agent) const;
  /// Conjunction of the per-agent flags.
  FrameFlags frame_properties() const;

  bool satisfies(FrameClass fc) const;

private:
  std::vector<std::string> states_;
  std::vector<std::string> agents_;
  std::vector<std::vector<StateSet>> relations_;
  std::map<std::string, StateSet> valuation_;
};

/// Loads a model from its JSON document form:
///
///   { "states": ["s", "t"], "agents": ["i"],
///     "relations": { "i": [["s", "t"]] },
///     "reflexive_closure": true,
///     "valuation": { "p": ["s"] } }
///
/// With "reflexive_closure" true the diagonal is added to every relation;
/// otherwise a missing reflexive pair is an error.
Model load_model(std::string_view json_text);
Model load_model_file(const std::string& path);

/// Canonical JSON form; load_model(save_model(m)) reproduces m exactly.
std::string save_model(const Model& m);

struct enum_cap_exceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EnumOptions {
  int max_states = 3;
  std::vector<std::string> agents;
  std::vector<std::string> atoms;
  FrameClass frame = FrameClass::Reflexive;
  std::uint64_t max_models = 50'000'000;  // cap on yielded models
};

/// Streams every labeled model with 1..max_states states, every per-agent
/// relation that contains the diagonal and satisfies the frame class, and
/// every valuation of the listed atoms. No isomorphism reduction. The
/// order is deterministic: state counts ascending, relation choices as an
/// odometer (last agent fastest), valuations fastest of all.
class ModelEnumerator {
public:
  explicit ModelEnumerator(EnumOptions options);

  /// Next model, or nullopt when the space is exhausted.
  /// Throws enum_cap_exceeded when more than max_models would be yielded.
  std::optional<Model> next();

  std::uint64_t yielded() const { return yielded_; }

private:
  bool start_state_count(int k);
  Model build() const;

  EnumOptions opt_;
  int k_ = 0;
  std::vector<std::uint64_t> valid_rels_;
  std::vector<std::size_t> rel_digit_;
  std::uint64_t val_mask_ = 0;
  std::uint64_t val_limit_ = 1;
  bool exhausted_ = false;
  std::uint64_t yielded_ = 0;
};

}  // namespace lut
