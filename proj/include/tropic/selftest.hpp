#pragma once

#include <string>

#include "tropic/scatter.hpp"

namespace tropic {

struct ConsistencyReport {
  int diagrams = 0;        // diagrams completed
  int walls_checked = 0;   // crossing automorphisms passing is_symplectic
  bool ok = false;
  std::string detail;      // first failure, empty when ok
};

// Completes `count` pseudo-random initial diagrams (two to four lines with
// random primitive directions and random admissible wall functions) at the
// given order, then checks that the full loop product is the identity from
// three distinct base directions and that every crossing automorphism of the
// completed diagram preserves the symplectic form.  Deterministic in `seed`.
ConsistencyReport run_consistency_suite(int count, int order, unsigned seed);

}  // namespace tropic
