#include <doctest.h>

#include "oracles.hpp"
#include "symbreak/breaker.hpp"
#include "symbreak/shapes.hpp"

using namespace symbreak;

namespace {

FaceLattice validated(FaceLattice l) {
  REQUIRE(validate(l).ok());
  return l;
}

int order_of(const Permutation& p) {
  Permutation q = p;
  int k = 1;
  while (!q.is_identity() && k < 1000) {
    q = compose(p, q);
    ++k;
  }
  return k;
}

// an element of the prescribed order from the full automorphism group
Permutation element_of_order(const PermGroup& g, int order) {
  for (const Permutation& p : g.closure())
    if (order_of(p) == order) return p;
  REQUIRE(false);
  return identity_permutation(0);
}

}  // namespace

TEST_CASE("parameter plan: tetrahedron with the trivial group") {
  FaceLattice tetra = validated(simplex_lattice(3));
  LabelledComplex c = subdivide(tetra);
  ValencyTable vt = valencies(c);
  // s-pattern per label is 6 / 4 / 6 on the tetrahedron
  for (std::size_t v = 0; v < c.vertex_count(); ++v)
    CHECK(vt.s[v] == (c.vertex_label[v] == 1 ? 4 : 6));

  std::vector<StackedPolytope> Ls;
  for (int o = 0; o < 24; ++o) Ls.push_back(make_stacked(3, 4 + o));
  ParameterPlan plan = plan_parameters(c, vt, Ls);
  CHECK(plan.bound_m < plan.intervals[2][0]);
  CHECK(plan.intervals[2][1] < plan.intervals[1][0]);
  CHECK(plan.intervals[1][1] < plan.intervals[0][0]);
}

TEST_CASE("break the tetrahedron to the trivial group") {
  FaceLattice tetra = validated(simplex_lattice(3));
  BrokenPolytope b = break_polytope(tetra, PermGroup::trivial(tetra));
  CHECK(b.p.rank() == 3);
  VerificationReport rep = verify_broken(b);
  INFO(rep.summary());
  CHECK(rep.ok());
  CHECK(rep.group_order_found == 1);
}

TEST_CASE("break the tetrahedron to a cyclic group of order 3") {
  FaceLattice tetra = validated(simplex_lattice(3));
  PermGroup full = automorphisms(tetra);
  PermGroup c3 = PermGroup::from_generators(tetra, {element_of_order(full, 3)});
  REQUIRE(c3.order() == 3);
  BrokenPolytope b = break_polytope(tetra, c3);
  VerificationReport rep = verify_broken(b);
  INFO(rep.summary());
  CHECK(rep.ok());
  CHECK(rep.group_order_found == 3);
}

TEST_CASE("break the cube to a cyclic group of order 4") {
  FaceLattice cube = validated(cube_lattice());
  PermGroup full = automorphisms(cube);
  PermGroup c4 = PermGroup::from_generators(cube, {element_of_order(full, 4)});
  REQUIRE(c4.order() == 4);
  BrokenPolytope b = break_polytope(cube, c4);
  VerificationReport rep = verify_broken(b);
  INFO(rep.summary());
  CHECK(rep.ok());
  CHECK(rep.group_order_found == 4);
}

TEST_CASE("break the cube to its full group") {
  FaceLattice cube = validated(cube_lattice());
  PermGroup full = automorphisms(cube);
  REQUIRE(full.order() == 48);
  std::vector<Permutation> gens(full.closure().begin(), full.closure().end());
  PermGroup again = PermGroup::from_generators(cube, gens);
  BrokenPolytope b = break_polytope(cube, again);
  VerificationReport rep = verify_broken(b);
  INFO(rep.summary());
  CHECK(rep.ok());
  CHECK(rep.group_order_found == 48);
}

TEST_CASE("the pipeline accepts abstract polytopes: the hemi-cube") {
  FaceLattice hemi = validated(hemicube_lattice());
  PermGroup full = automorphisms(hemi);
  REQUIRE(full.order() == 24);
  PermGroup c3 = PermGroup::from_generators(hemi, {element_of_order(full, 3)});
  BrokenPolytope b = break_polytope(hemi, c3);
  VerificationReport rep = verify_broken(b);
  INFO(rep.summary());
  CHECK(rep.ok());
  CHECK(rep.group_order_found == 3);
}

TEST_CASE("rank 2 input is rejected") {
  FaceLattice square = validated(polygon_lattice(4));
  CHECK_THROWS_AS(break_polytope(square, PermGroup::trivial(square)), Error);
}

TEST_CASE("fault injection: a rewired gadget edge fails verification") {
  FaceLattice tetra = validated(simplex_lattice(3));
  BrokenPolytope b = break_polytope(tetra, PermGroup::trivial(tetra));
  // take gadget vertices in the first and last chamber and exchange one edge
  // membership between them: valency-preserving but geometrically wrong
  FaceIndex v1 = kNoFace, v2 = kNoFace;
  for (FaceIndex f = b.p.rank_begin(0); f < b.p.rank_end(0); ++f) {
    if (b.provenance(f).is_chain) continue;
    if (v1 == kNoFace) v1 = f;
    v2 = f;
  }
  REQUIRE(v1 != v2);
  FaceId e1 = b.p.id_of(b.p.up(v1).front());
  FaceId e2 = b.p.id_of(b.p.up(v2).front());
  auto j = b.p.to_json();
  for (auto& cover : j["covers"]) {
    if (cover[0].get<FaceId>() == b.p.id_of(v1) && cover[1].get<FaceId>() == e1)
      cover[0] = b.p.id_of(v2);
    else if (cover[0].get<FaceId>() == b.p.id_of(v2) && cover[1].get<FaceId>() == e2)
      cover[0] = b.p.id_of(v1);
  }
  BrokenPolytope mutated = b;
  mutated.p = FaceLattice::from_json(j);
  VerificationReport rep = verify_broken(mutated);
  CHECK(!rep.ok());
}

TEST_CASE("provenance accessors are positional and consistent") {
  FaceLattice tetra = validated(simplex_lattice(3));
  BrokenPolytope b = break_polytope(tetra, PermGroup::trivial(tetra));
  std::size_t chains = 0, gadget = 0;
  for (FaceIndex f = 0; f < b.p.face_count(); ++f) {
    int r = b.p.rank_of(f);
    if (r < 0 || r == b.p.rank()) continue;
    (b.provenance(f).is_chain ? chains : gadget)++;
  }
  // chains of sizes 1 and 2 over 14 proper faces: 14 vertices + comparable pairs
  CHECK(chains == b.complex.simplex_count(0) + b.complex.simplex_count(1));
  CHECK(gadget > 0);
}
