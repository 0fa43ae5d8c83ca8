#pragma once

#include <string>
#include <vector>

namespace fadesplit {

// Named parameter bundles for the bundled comparison sweeps:
//   fig2: R = 0.1, d = (5,4,3,2)/14                  (4 blocks)
//   fig3: R = 0.1, d = (100,85,70,60,50,40,25,10)/440 (8 blocks)
//   fig9: R = 0.1, d = 16-block vector for the pairwise-aggregation
//         partition sweep
// All with P = 1.
struct Preset {
  double R;
  double P;
  std::vector<double> d;
};

// Throws std::invalid_argument for unknown names.
Preset preset(const std::string& name);

// Sums adjacent pairs: (d_1 + d_2, d_3 + d_4, ...). Requires even size.
std::vector<double> aggregate_pairs(const std::vector<double>& d);

}  // namespace fadesplit
