#pragma once

#include <vector>

#include <json.hpp>

#include "symbreak/lattice.hpp"

namespace symbreak {

// Combinatorial Schlegel diagram of the d-crosspolytope: the full lattice
// plus the distinguished outer facet D (removed as a tile), the central tile
// Z opposite to it, and for each outer vertex u_i the unique tile F_{u_i}
// adjacent to Z that contains it.
struct CrosspolytopeDiagram {
  int d = 0;
  FaceLattice lattice;
  FaceId outer_facet = 0, central_tile = 0;
  std::vector<FaceId> u_vertex, z_vertex, f_u;  // indexed by i = 0..d-1
  std::size_t tile_count = 0;                   // 2^d - 1
};

CrosspolytopeDiagram crosspolytope_diagram(int d);  // d >= 3

// Smallest apex valency attainable by the pyramid family at rank d that is
// >= want: any value >= 3 for d = 3 (polygon bases), d + k(d-2) for d >= 4
// (vertex truncations of the (d-1)-simplex keeping one facet intact).
int feasible_apex_valency(int d, int want);

// Pyramid over a simple (d-1)-polytope with m vertices and a simplex facet;
// the outer facet of its Schlegel diagram is a simplex facet through the
// apex, so the apex lands on an outer vertex with diagram valency m.
struct PyramidGadget {
  int d = 0;
  int m = 0;  // attained apex valency
  FaceLattice lattice;
  FaceId apex = 0, outer_facet = 0;
};

PyramidGadget make_pyramid_gadget(int d, int m);

// Stacked simplicial d-polytope with exactly n vertices. The stacking
// schedule picks the facet whose vertices have the smallest valency load
// (max, then sum, then lex), which keeps the valencies bounded as n grows.
struct StackedPolytope {
  int d = 0;
  int n = 0;
  FaceLattice lattice;
  std::vector<std::vector<int>> facets;  // sorted vertex lists
  std::vector<int> valency;
  std::vector<int> outer_facet;  // lex-min facet, used as the Schlegel frame
  int max_valency = 0;
};

StackedPolytope make_stacked(int d, int n);  // n >= d+1

// The gadget complex: crosspolytope diagram with each F_{u_i} replaced by the
// pyramid diagram (apex on u_i) and the central tile replaced by the Schlegel
// diagram of L. Boundary faces of D stay unrefined and are stored only as
// label masks; everything else is an interior face.
struct GadgetTemplate {
  int d = 0;
  std::vector<int> m;  // attained apex valencies per label
  int L_vertices = 0;

  // interior faces, grouped by rank (rank_begin[r] .. rank_begin[r+1])
  std::vector<std::int8_t> rank;
  std::vector<std::uint32_t> rank_begin;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> covers_int;  // lo < hi by rank
  std::vector<std::pair<std::uint32_t, std::uint32_t>> covers_bnd;  // (u-label mask, interior)

  std::vector<int> u_valency;      // d entries, = m_i + d - 1
  int max_interior_valency = 0;    // largest valency among interior vertices
  std::size_t interior_count() const { return rank.size(); }

  nlohmann::ordered_json to_json() const;
};

GadgetTemplate assemble_gadget(int d, const std::vector<PyramidGadget>& pyramids,
                               const StackedPolytope& L);

// Interior valency bound contributed by an L choice, without building the
// template: central-simplex vertices pick up val_L + 2(d-1), other inserted
// vertices keep val_L resp. d.
int interior_valency_bound(int d, const StackedPolytope& L);

}  // namespace symbreak
