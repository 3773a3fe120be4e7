#pragma once

#include <cstdio>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "lut/kripke.hpp"

namespace testutil {

// Independent bisimulation oracle: pairwise coinductive refinement of the
// "possibly bisimilar" relation, O(n^3)-ish and deliberately different from
// the partition-refinement code under test. Classes are numbered in
// first-occurrence order, matching Partition::block_of.
inline std::vector<int> naive_bisim_classes(const lut::Model& m) {
  const int n = m.num_states();
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, true));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (const auto& [atom, set] : m.valuation())
        if (set.contains(x) != set.contains(y)) rel[x][y] = false;

  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        if (!rel[x][y]) continue;
        bool ok = true;
        for (int a = 0; ok && a < m.num_agents(); ++a) {
          for (int xs : m.successors(a, x).members()) {
            bool matched = false;
            for (int ys : m.successors(a, y).members())
              if (rel[xs][ys]) {
                matched = true;
                break;
              }
            if (!matched) {
              ok = false;
              break;
            }
          }
          if (!ok) break;
          for (int ys : m.successors(a, y).members()) {
            bool matched = false;
            for (int xs : m.successors(a, x).members())
              if (rel[xs][ys]) {
                matched = true;
                break;
              }
            if (!matched) {
              ok = false;
              break;
            }
          }
        }
        if (!ok) {
          rel[x][y] = false;
          changed = true;
        }
      }
  }

  std::vector<int> cls(n, -1);
  int next = 0;
  for (int x = 0; x < n; ++x) {
    int found = -1;
    for (int y = 0; y < x; ++y)
      if (rel[x][y] && rel[y][x]) {
        found = cls[y];
        break;
      }
    cls[x] = found == -1 ? next++ : found;
  }
  return cls;
}

struct ProcResult {
  int exit_code = -1;
  std::string output;
};

// Runs a shell command, merging stderr into stdout.
inline ProcResult run_process(const std::string& command) {
  const std::string cmd = command + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, "popen failed"};
  std::string out;
  char buf[4096];
  std::size_t k;
  while ((k = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, k);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace testutil
