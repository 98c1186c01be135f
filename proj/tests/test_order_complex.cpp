#include <doctest.h>

#include <map>
#include <set>

#include "oracles.hpp"
#include "symbreak/order_complex.hpp"
#include "symbreak/shapes.hpp"

using namespace symbreak;

namespace {

FaceLattice validated(FaceLattice l) {
  REQUIRE(validate(l).ok());
  return l;
}

}  // namespace

TEST_CASE("subdivision counts: tetrahedron, cube, triangle") {
  {
    LabelledComplex c = subdivide(validated(simplex_lattice(3)));
    CHECK(c.vertex_count() == 14);
    CHECK(c.chamber_count() == 24);
  }
  {
    LabelledComplex c = subdivide(validated(cube_lattice()));
    CHECK(c.vertex_count() == 26);
    CHECK(c.chamber_count() == 48);
  }
  {
    LabelledComplex c = subdivide(validated(polygon_lattice(3)));
    CHECK(c.vertex_count() == 6);
    CHECK(c.chamber_count() == 6);
  }
  CHECK_THROWS_AS(subdivide(validated(segment_lattice())), Error);
}

TEST_CASE("every chamber carries one vertex of each label") {
  FaceLattice cube = validated(cube_lattice());
  LabelledComplex c = subdivide(cube);
  for (std::size_t i = 0; i < c.chamber_count(); ++i) {
    auto f = c.chambers.flag(i);
    std::set<int> labels;
    for (int r = 0; r < c.chambers.degree; ++r)
      labels.insert(c.vertex_label[c.vertex_of_face(f[r])]);
    CHECK(labels == std::set<int>{0, 1, 2});
  }
}

TEST_CASE("valencies and chamber counts per vertex") {
  FaceLattice cube = validated(cube_lattice());
  LabelledComplex c = subdivide(cube);
  ValencyTable t = valencies(c);
  for (std::size_t v = 0; v < c.vertex_count(); ++v) {
    switch (c.vertex_label[v]) {
      case 0:
        CHECK(t.s[v] == 6);
        CHECK(t.val[v] == 6);
        break;
      case 1:
        CHECK(t.s[v] == 4);
        CHECK(t.val[v] == 4);
        break;
      default:
        CHECK(t.s[v] == 8);
        CHECK(t.val[v] == 8);
    }
  }
  // sum of s over a label equals the chamber count
  for (int label = 0; label < 3; ++label) {
    int sum = 0;
    for (std::size_t v = 0; v < c.vertex_count(); ++v)
      if (c.vertex_label[v] == label) sum += t.s[v];
    CHECK(sum == 48);
  }
}

TEST_CASE("the complex is a closed pseudo-manifold") {
  for (auto make : {+[] { return simplex_lattice(3); }, +[] { return cube_lattice(); },
                    +[] { return hemicube_lattice(); }}) {
    FaceLattice q = validated(make());
    LabelledComplex c = subdivide(q);
    // each (d-2)-simplex lies in exactly two chambers
    std::map<std::vector<std::uint32_t>, int> ridge_count;
    for (std::size_t i = 0; i < c.chamber_count(); ++i) {
      auto f = c.chambers.flag(i);
      for (int drop = 0; drop < c.chambers.degree; ++drop) {
        std::vector<std::uint32_t> ridge;
        for (int r = 0; r < c.chambers.degree; ++r)
          if (r != drop) ridge.push_back(c.vertex_of_face(f[r]));
        ++ridge_count[ridge];
      }
    }
    for (const auto& [ridge, cnt] : ridge_count) CHECK(cnt == 2);
  }
}

TEST_CASE("chamber orbits and transfer maps") {
  FaceLattice cube = validated(cube_lattice());
  LabelledComplex c = subdivide(cube);

  ChamberOrbits trivial = chamber_action(c, PermGroup::trivial(cube));
  CHECK(trivial.orbits.count() == 48);

  PermGroup full = automorphisms(cube);
  const Permutation* four = nullptr;
  for (const Permutation& p : full.closure())
    if (!p.is_identity() && !compose(p, p).is_identity() &&
        compose(compose(p, p), compose(p, p)).is_identity())
      four = &p;
  REQUIRE(four != nullptr);
  PermGroup c4 = PermGroup::from_generators(cube, {*four});
  ChamberOrbits o = chamber_action(c, c4);
  CHECK(o.orbits.count() == 12);
  for (const auto& mem : o.orbits.members) CHECK(mem.size() == 4);
  // the transfer element carries the representative to the chamber
  const auto& els = c4.closure();
  for (std::uint32_t ch = 0; ch < c.chamber_count(); ++ch) {
    std::uint32_t rep = o.representative(ch);
    CHECK(map_flag(c.chambers, els[o.transfer[ch]], rep) == ch);
  }

  // the rotation subgroup = automorphisms preserving the proper 2-coloring
  // of the flag graph (the cube is orientable), acting with 2 chamber orbits
  FlagGraph fg = build_flag_graph(cube);
  std::vector<int> color(fg.flag_count, -1);
  std::vector<std::uint32_t> stack{0};
  color[0] = 0;
  while (!stack.empty()) {
    std::uint32_t x = stack.back();
    stack.pop_back();
    for (int cc = 0; cc < fg.degree; ++cc) {
      std::uint32_t y = fg.adjacent[cc][x];
      if (color[y] == -1) {
        color[y] = 1 - color[x];
        stack.push_back(y);
      }
    }
  }
  std::vector<Permutation> gens;
  for (const Permutation& p : full.closure())
    if (color[map_flag(fg, p, 0)] == 0) gens.push_back(p);
  PermGroup rot = PermGroup::from_generators(cube, gens);
  REQUIRE(rot.order() == 24);
  ChamberOrbits ro = chamber_action(c, rot);
  CHECK(ro.orbits.count() == 2);
  for (const auto& mem : ro.orbits.members) CHECK(mem.size() == 24);
}

TEST_CASE("complex json lists vertices with labels and chambers") {
  FaceLattice tetra = validated(simplex_lattice(3));
  LabelledComplex c = subdivide(tetra);
  auto j = c.to_json(tetra);
  CHECK(j["vertices"].size() == 14);
  CHECK(j["chambers"].size() == 24);
  CHECK(j["dimension"] == 2);
}
