#pragma once

// Named reference graphs built from first principles: the pentagon, Petersen,
// Clebsch, Hoffman-Singleton, Gewirtz, the M22 graph and the Higman-Sims
// graph, together with the S(3,6,22) design they hang off.

#include <string>
#include <vector>

#include "pqi/graphcore.hpp"

namespace pqi {

struct Design {
    int npoints = 0;
    std::vector<std::vector<int>> blocks;  // strictly increasing rows, sorted
};

// Hyperovals of PG(2,4) in one transvection orbit: 56 six-point sets meeting
// pairwise in 0 or 2 points.
std::vector<std::vector<int>> hyperoval_orbit();

// Points: the 21 points of PG(2,4) in coordinate order plus a 22nd point
// adjoined to every line. Blocks: the 21 extended lines and the 56 hyperovals
// of one orbit. Construction self-checks the triple coverage.
Design steiner_3_6_22();

Graph pentagon();
Graph petersen();             // disjointness on the 2-subsets of a 5-set
Graph clebsch();              // apex + 5 singletons + 10 pairs
Graph hoffman_singleton();    // five pentagons and five pentagrams
Graph gewirtz();              // disjointness on the 56 hyperovals
Graph m22();                  // disjointness on the 77 blocks
Graph higman_sims();          // apex + 22 design points + 77 blocks

Graph build_named(const std::string& name);
std::vector<std::string> catalog_names();

}  // namespace pqi
