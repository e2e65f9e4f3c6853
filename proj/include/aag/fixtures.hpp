#pragma once

#include "aag/graph.hpp"

// Named graph families used by the tests, the acceptance suite and the CLI
// data directory.
namespace aag::fixtures {

Graph path(int n);            // P_n, vertices 0-1-...-(n-1)
Graph cycle(int n);           // C_n
Graph complete(int n);        // K_n
Graph star(int leaves);       // K_{1,leaves}, hub 0
Graph wheel(int rim);         // C_rim plus hub `rim` adjacent to all
Graph wheel_minus_spoke(int rim);  // wheel without the spoke hub-0
/// 3-sun (Hajos graph): inner triangle {0,1,2}; corner 3 ~ {0,1},
/// corner 4 ~ {1,2}, corner 5 ~ {2,0}.
Graph sun3();
/// Triangle strip on n vertices: i ~ i+1 and i ~ i+2. Chordal.
Graph triangle_strip(int n);
/// A 10-vertex bridged, 2-self-centered, non-chordal graph: a 6-cycle with two
/// adjacent hubs plus two ears. Not nicely bridged. Found by random search.
Graph twin_hub_wheel();
/// A 14-vertex bridged, 2-self-centered graph with no simplicial vertex.
/// Found by simulated annealing; not nicely bridged.
Graph no_simplicial_bridged();

}  // namespace aag::fixtures
