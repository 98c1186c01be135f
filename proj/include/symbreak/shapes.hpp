#pragma once

#include "symbreak/lattice.hpp"

namespace symbreak {

// Canonical face lattices used as inputs, oracles, and gadget raw material.
// Ids are small consecutive integers, deterministic per shape.

FaceLattice simplex_lattice(int d);        // boundary lattice of the d-simplex
FaceLattice cube_lattice();                // 3-cube
FaceLattice crosspolytope_lattice(int d);  // d-crosspolytope (octahedron for d = 3)
FaceLattice polygon_lattice(int n);        // n-gon, n >= 3
FaceLattice hemicube_lattice();            // antipodal quotient of the 3-cube
FaceLattice bipyramid_lattice(int n);      // bipyramid over an n-gon
FaceLattice segment_lattice();             // the 1-polytope

// Pyramid over a polytope: every face F of the base gains a companion F+apex.
// Returns the new lattice and the apex id through *apex_id.
FaceLattice pyramid_lattice(const FaceLattice& base, FaceId* apex_id = nullptr);

// Combinatorial truncation of a simple vertex: the vertex is replaced by its
// vertex figure, faces through it are trimmed in place (ids kept), and each
// face F > v spawns a cut face with a fresh id. Returns the new lattice and
// fills cut_ids with (old face id, new cut face id), ordered by old id.
FaceLattice truncate_vertex(const FaceLattice& l, FaceId vertex,
                            std::vector<std::pair<FaceId, FaceId>>* cut_ids = nullptr);

}  // namespace symbreak
