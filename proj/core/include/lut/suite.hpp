#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lut/formula.hpp"
#include "lut/kripke.hpp"

namespace lut {

/// Two reflexive single-agent fixtures used throughout the property
/// catalog: a two-state model (s satisfies p, sees a ~p state t) and a
/// three-state model (s satisfies p,q and sees t: p,~q and u: ~p,q, each
/// of which sees only itself).
Model two_state_fixture();
Model three_state_fixture();

struct RandomFormulaOptions {
  int max_depth = 4;
  std::vector<std::string> atoms{"p", "q"};
  std::vector<std::string> agents{"i"};
  bool el_only = false;    // restrict to ~, &, K over atoms/top
  bool allow_unk = true;   // permit the U operator (ignored when el_only)
};

FormulaPtr random_formula(std::mt19937_64& rng, const RandomFormulaOptions& options);

/// Random reflexive model with 1..max_states states; every off-diagonal
/// edge present with probability ~1/3, atoms assigned uniformly.
Model random_model(std::mt19937_64& rng, int max_states, std::vector<std::string> agents,
                   std::vector<std::string> atoms);

struct SuiteOptions {
  int bound = 3;                      // max states for search-backed entries
  int jobs = 1;                       // entries run in parallel when > 1
  std::vector<std::string> entries;   // empty: run the whole catalog
  int complexity_samples = 1000;
  std::uint64_t seed = 0x5eed5u;
};

struct SuiteEntryResult {
  std::string id;
  std::string section;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::vector<SuiteEntryResult> rows;
  bool all_pass() const;
};

/// Ids of the catalog, in report order.
std::vector<std::string> suite_entry_ids();

/// Runs the catalog of validity, invalidity, frame-conditional and
/// complexity-measure properties. Validities are checked by bounded search
/// over every reflexive model within the bound; invalidities both against
/// the stored fixture and by a fresh countermodel search. Failures become
/// report rows, not exceptions.
SuiteReport run_property_suite(const SuiteOptions& options);

}  // namespace lut
