#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "symbreak/gadget.hpp"
#include "symbreak/perm.hpp"
#include "symbreak/shapes.hpp"

using namespace symbreak;

TEST_CASE("crosspolytope diagram structure") {
  CrosspolytopeDiagram d3 = crosspolytope_diagram(3);
  CHECK(d3.tile_count == 7);
  CHECK(d3.lattice.rank_end(0) - d3.lattice.rank_begin(0) == 6);
  CHECK(validate(d3.lattice).ok());

  CrosspolytopeDiagram d4 = crosspolytope_diagram(4);
  CHECK(d4.tile_count == 15);
  CHECK(d4.lattice.rank_end(0) - d4.lattice.rank_begin(0) == 8);

  // the tiles sharing a facet with Z number d, one per outer vertex
  {
    const FaceLattice& l = d4.lattice;
    FaceIndex z = l.require_index(d4.central_tile);
    std::set<FaceIndex> adjacent;
    for (FaceIndex ridge : l.down(z))
      for (FaceIndex tile : l.up(ridge))
        if (tile != z && l.rank_of(tile) == 3 && l.id_of(tile) != d4.outer_facet)
          adjacent.insert(tile);
    CHECK(adjacent.size() == 4);
    for (int i = 0; i < 4; ++i)
      CHECK(adjacent.count(l.require_index(d4.f_u[i])) == 1);
  }
  CHECK_THROWS_AS(crosspolytope_diagram(2), Error);
}

TEST_CASE("pyramid gadgets: attainable apex valencies") {
  CHECK(feasible_apex_valency(3, 5) == 5);
  CHECK(feasible_apex_valency(4, 4) == 4);
  CHECK(feasible_apex_valency(4, 5) == 6);
  CHECK(feasible_apex_valency(4, 6) == 6);
  CHECK(feasible_apex_valency(5, 5) == 5);
  CHECK(feasible_apex_valency(5, 6) == 8);
  CHECK_THROWS_AS(make_pyramid_gadget(4, 5), Error);
}

TEST_CASE("pyramid over a pentagon: apex valency 5, others 3") {
  PyramidGadget g = make_pyramid_gadget(3, 5);
  CHECK(validate(g.lattice).ok());
  FaceIndex apex = g.lattice.require_index(g.apex);
  for (FaceIndex v = g.lattice.rank_begin(0); v < g.lattice.rank_end(0); ++v)
    CHECK(g.lattice.up(v).size() == (v == apex ? 5u : 3u));
  // outer facet is a simplex through the apex
  FaceIndex outer = g.lattice.require_index(g.outer_facet);
  CHECK(g.lattice.rank_of(outer) == 2);
  CHECK(g.lattice.down(outer).size() == 3);
}

TEST_CASE("rank-4 pyramid gadgets: simplex base and truncated bases") {
  {
    PyramidGadget g = make_pyramid_gadget(4, 4);  // pyramid over the tetrahedron = 4-simplex
    CHECK(validate(g.lattice).ok());
    CHECK(g.lattice.rank_end(0) - g.lattice.rank_begin(0) == 5);
    CHECK(automorphisms(g.lattice).order() == 120);
  }
  {
    PyramidGadget g = make_pyramid_gadget(4, 6);  // once-truncated tetrahedron base
    CHECK(validate(g.lattice).ok());
    FaceIndex apex = g.lattice.require_index(g.apex);
    CHECK(g.lattice.up(apex).size() == 6);
    // base vertices are simple: valency 4 in the pyramid
    for (FaceIndex v = g.lattice.rank_begin(0); v < g.lattice.rank_end(0); ++v)
      if (v != apex) CHECK(g.lattice.up(v).size() == 4);
    // base = simple 3-polytope with 6 vertices and 5 facets, so the pyramid
    // has 6 facets (base + one per base facet)
    CHECK(g.lattice.rank_end(3) - g.lattice.rank_begin(3) == 6);
  }
  {
    PyramidGadget g = make_pyramid_gadget(4, 10);
    CHECK(validate(g.lattice).ok());
    CHECK(g.lattice.require_index(g.apex) != kNoFace);
    CHECK(g.lattice.up(g.lattice.require_index(g.apex)).size() == 10);
  }
}

TEST_CASE("stacked polytopes: vertex counts and facet counts") {
  CHECK(make_stacked(3, 4).facets.size() == 4);
  CHECK(make_stacked(3, 5).facets.size() == 6);
  for (int k = 0; k <= 4; ++k) CHECK(make_stacked(3, 4 + k).facets.size() == 4 + 2u * k);
  for (int n : {4, 5, 9}) {
    StackedPolytope L = make_stacked(3, n);
    CHECK(validate(L.lattice).ok());
    CHECK(static_cast<int>(L.lattice.rank_end(0) - L.lattice.rank_begin(0)) == n);
  }
  StackedPolytope L4 = make_stacked(4, 9);
  CHECK(validate(L4.lattice).ok());
  CHECK(L4.facets.size() == 3u * 9 - 10);
  CHECK_THROWS_AS(make_stacked(3, 3), Error);
}

TEST_CASE("balanced stacking keeps valencies low") {
  StackedPolytope big = make_stacked(3, 40);
  CHECK(big.max_valency <= 12);
  StackedPolytope big4 = make_stacked(4, 40);
  CHECK(big4.max_valency <= 16);
}

TEST_CASE("gadget assembly: ledger, frame, and ball checks") {
  std::vector<PyramidGadget> pyr;
  for (int i = 0; i < 3; ++i) pyr.push_back(make_pyramid_gadget(3, 5));
  StackedPolytope L = make_stacked(3, 4);
  GadgetTemplate t = assemble_gadget(3, pyr, L);
  CHECK(t.u_valency == std::vector<int>{7, 7, 7});
  // interior bound: central-simplex vertices pick up val_L + 2(d-1) = 3 + 4
  CHECK(t.max_interior_valency == 7);
  CHECK(t.max_interior_valency == interior_valency_bound(3, L));

  // interior vertex count: 3 per pentagon pyramid + 3 central + 1 inside L
  CHECK(t.rank_begin[1] - t.rank_begin[0] == 3u * 3 + 3 + 1);
}

TEST_CASE("assemblies with different L are non-isomorphic") {
  std::vector<PyramidGadget> pyr;
  for (int i = 0; i < 3; ++i) pyr.push_back(make_pyramid_gadget(3, 4));
  GadgetTemplate t5 = assemble_gadget(3, pyr, make_stacked(3, 5));
  GadgetTemplate t6 = assemble_gadget(3, pyr, make_stacked(3, 6));
  CHECK(t5.interior_count() != t6.interior_count());
  auto p5 = oracles::template_poset(t5, nullptr);
  auto p6 = oracles::template_poset(t6, nullptr);
  CHECK(oracles::count_isomorphisms(p5, p6, 1) == 0);
}

TEST_CASE("only the identity extends the identity on the frame") {
  std::vector<PyramidGadget> pyr;
  for (int m : {4, 5, 6}) pyr.push_back(make_pyramid_gadget(3, m));
  GadgetTemplate t = assemble_gadget(3, pyr, make_stacked(3, 5));
  std::vector<int> boundary;
  auto poset = oracles::template_poset(t, &boundary);
  std::vector<std::pair<int, int>> pinned;
  for (int b : boundary) pinned.emplace_back(b, b);
  CHECK(oracles::count_automorphisms(poset, pinned) == 1);
}

TEST_CASE("rank-5 gadgets assemble and keep their ledgers") {
  std::vector<PyramidGadget> pyr;
  for (int m : {5, 8, 11, 14, 17}) pyr.push_back(make_pyramid_gadget(5, m));
  StackedPolytope L = make_stacked(5, 7);
  GadgetTemplate t = assemble_gadget(5, pyr, L);
  CHECK(t.u_valency == std::vector<int>{9, 12, 15, 18, 21});
  CHECK(t.max_interior_valency == interior_valency_bound(5, L));
}

TEST_CASE("rank-4 assembly passes its internal ball checks") {
  std::vector<PyramidGadget> pyr;
  for (int m : {4, 6, 8, 10}) pyr.push_back(make_pyramid_gadget(4, m));
  StackedPolytope L = make_stacked(4, 6);
  GadgetTemplate t = assemble_gadget(4, pyr, L);
  CHECK(t.u_valency == std::vector<int>{7, 9, 11, 13});
  CHECK(t.max_interior_valency == interior_valency_bound(4, L));
}
