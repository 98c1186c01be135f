#pragma once

#include <vector>

#include <json.hpp>

#include "symbreak/lattice.hpp"
#include "symbreak/perm.hpp"

namespace symbreak {

// Barycentric subdivision of the proper part of a validated lattice Q, built
// purely combinatorially: one complex vertex per proper face of Q, simplices
// are the chains, chambers the flags. Vertex v carries label = rank of its
// source face; vertex ids in serialized form are the source face ids.
struct LabelledComplex {
  int d = 0;  // rank of Q; the complex has dimension d-1
  std::vector<FaceIndex> vertex_source;  // complex vertex -> Q face index
  std::vector<int> vertex_label;
  // simplices_by_dim[k]: concatenated (k+1)-tuples of complex vertices,
  // sorted by label inside a tuple and lexicographically across tuples.
  std::vector<std::vector<std::uint32_t>> simplices_by_dim;
  FlagGraph chambers;  // chamber i <-> flag i of Q

  std::size_t vertex_count() const { return vertex_source.size(); }
  std::size_t simplex_count(int dim) const {
    return simplices_by_dim[static_cast<std::size_t>(dim)].size() /
           static_cast<std::size_t>(dim + 1);
  }
  std::size_t chamber_count() const { return chambers.flag_count; }
  std::uint32_t vertex_of_face(FaceIndex q_face) const;

  nlohmann::ordered_json to_json(const FaceLattice& q) const;
};

LabelledComplex subdivide(const FaceLattice& q);  // requires validated, d >= 2

struct ValencyTable {
  std::vector<int> val;  // edge-graph valency in the complex
  std::vector<int> s;    // number of chambers containing the vertex
};

ValencyTable valencies(const LabelledComplex& c);

struct ChamberOrbits {
  Orbits orbits;                          // over chamber indices
  std::vector<std::uint32_t> transfer;    // chamber -> element index in closure
                                          // carrying the orbit representative there
  std::uint32_t representative(std::uint32_t chamber) const {
    return orbits.members[orbits.orbit_of[chamber]].front();
  }
};

// Orbit decomposition of the chambers under a label-preserving action of a
// subgroup of Gamma(Q), with transfer maps (unique by freeness).
ChamberOrbits chamber_action(const LabelledComplex& c, const PermGroup& gamma);

}  // namespace symbreak
