#pragma once
// Named graphs shared by the tests (same systems as data/graphs/).

#include <string>
#include <utility>
#include <vector>

#include "coxpack/graph.hpp"

namespace samples {

using coxpack::CoxeterGraph;
using coxpack::parse_compact;

/// K4 with all edges labeled 4: level 2.
inline CoxeterGraph k4_all4() { return parse_compact("n=4; 0-1:4 0-2:4 0-3:4 1-2:4 1-3:4 2-3:4"); }

/// K4 with edges labeled 4 except one dotted edge with c = 1.1: level 3.
inline CoxeterGraph k4_all4_dotted() {
  return parse_compact("n=4; 0-1:4 0-2:4 0-3:4 1-2:4 1-3:4 2-3:inf(1.1)");
}

inline CoxeterGraph cycle5_all4() { return parse_compact("n=5; 0-1:4 1-2:4 2-3:4 3-4:4 0-4:4"); }

/// Complete graph on four vertices with all edges infinite.
inline CoxeterGraph universal_rank4() {
  return parse_compact("n=4; 0-1:inf 0-2:inf 0-3:inf 1-2:inf 1-3:inf 2-3:inf");
}

/// Star with three infinite edges.
inline CoxeterGraph star3_inf() { return parse_compact("n=4; 0-1:inf 0-2:inf 0-3:inf"); }

inline CoxeterGraph butterfly_all3() { return parse_compact("n=5; 0-1:3 0-2:3 1-2:3 0-3:3 0-4:3 3-4:3"); }

inline std::vector<CoxeterGraph> level3_graphs() {
  return {k4_all4_dotted(), parse_compact("n=4; 0-1:inf 0-2:inf 0-3:inf 1-2:inf 1-3:inf 2-3:inf(1.5)"),
          parse_compact("n=5; 0-1:7 1-2:7 2-3:7 3-4:7 0-4:7")};
}

inline std::vector<std::pair<std::string, CoxeterGraph>> limit_systems() {
  return {{"universal4", universal_rank4()}, {"star3", star3_inf()}, {"k4_m4", k4_all4()}};
}

}  // namespace samples
