#include <doctest.h>

#include "oracles.hpp"
#include "symbreak/lattice.hpp"
#include "symbreak/shapes.hpp"

using namespace symbreak;

TEST_CASE("cube lattice validates with all axioms") {
  FaceLattice cube = cube_lattice();
  CHECK(cube.face_count() == 28);
  ValidationReport rep = validate(cube);
  CHECK(rep.bounded.passed());
  CHECK(rep.graded.passed());
  CHECK(rep.diamond.passed());
  CHECK(rep.flag_connected.passed());
  CHECK(rep.ok());
  CHECK(rep.flag_count == 48);
}

TEST_CASE("the segment is the smallest polytope") {
  FaceLattice seg = segment_lattice();
  ValidationReport rep = validate(seg);
  CHECK(rep.ok());
  CHECK(rep.flag_count == 2);
}

TEST_CASE("a removed cover breaks the diamond condition with a witness") {
  FaceLattice cube = cube_lattice();
  auto j = cube.to_json();
  // drop the first vertex-edge cover
  auto& covers = j["covers"];
  for (std::size_t i = 0; i < covers.size(); ++i) {
    FaceId lo = covers[i][0].get<FaceId>();
    if (lo >= 0 && cube.rank_of(cube.require_index(lo)) == 0) {
      covers.erase(i);
      break;
    }
  }
  FaceLattice broken = FaceLattice::from_json(j);
  ValidationReport rep = validate(broken);
  CHECK(!rep.ok());
  CHECK(rep.diamond.status == AxiomResult::Status::fail);
  CHECK(!rep.diamond.witness.empty());
}

TEST_CASE("flag graph construction insists on a validated lattice") {
  CHECK_THROWS_AS(build_flag_graph(cube_lattice()), Error);
}

TEST_CASE("flag graphs agree with the oracle and are involutive matchings") {
  for (auto make : {+[] { return cube_lattice(); }, +[] { return simplex_lattice(3); },
                    +[] { return simplex_lattice(4); }, +[] { return crosspolytope_lattice(3); },
                    +[] { return hemicube_lattice(); }}) {
    FaceLattice l = make();
    REQUIRE(validate(l).ok());
    FlagGraph fg = build_flag_graph(l);
    CHECK(fg.flag_count == oracles::count_maximal_chains(l));
    CHECK(fg.flag_count % 2 == 0);
    for (int c = 0; c < fg.degree; ++c)
      for (std::uint32_t i = 0; i < fg.flag_count; ++i) {
        CHECK(fg.adjacent[c][i] != i);
        CHECK(fg.adjacent[c][fg.adjacent[c][i]] == i);
      }
  }
}

TEST_CASE("skeleton of the cube at rank 1 is the vertex-edge graph") {
  FaceLattice cube = cube_lattice();
  PosetFragment frag = skeleton(cube, 1);
  std::size_t vertices = 0, edges = 0;
  for (const FaceEntry& f : frag.faces) (f.rank == 0 ? vertices : edges)++;
  CHECK(vertices == 8);
  CHECK(edges == 12);
  CHECK(frag.covers.size() == 24);
  CHECK(skeleton(segment_lattice(), 0).faces.size() == 2);
}

TEST_CASE("sections are polytopes in their own right") {
  FaceLattice cube = cube_lattice();
  REQUIRE(validate(cube).ok());
  // vertex figure at vertex 0 (digits 0,0,0) is a triangle
  FaceLattice vf = section(cube, 0, 26);
  CHECK(vf.rank() == 2);
  CHECK(validate(vf).ok());
  auto triangle = polygon_lattice(3);
  CHECK(oracles::count_isomorphisms(oracles::to_poset(vf), oracles::to_poset(triangle), 1) == 1);

  // an edge two ranks below the top spans a 1-polytope (its two facets)
  FaceIndex edge = cube.rank_begin(1);
  FaceLattice seg = section(cube, cube.id_of(edge), 26);
  CHECK(seg.rank() == 1);
  CHECK(validate(seg).ok());
  CHECK(seg.rank_end(0) - seg.rank_begin(0) == 2);
  CHECK_THROWS_AS(section(cube, 0, 13), Error);  // two opposite vertices, incomparable

  // the whole lattice is a section of itself
  FaceLattice whole = section(cube, -1, 26);
  CHECK(whole.face_count() == cube.face_count());
  CHECK(validate(whole).ok());
}

TEST_CASE("rebuilding a lattice from its flag graph gives an isomorphic lattice") {
  for (auto make : {+[] { return cube_lattice(); }, +[] { return simplex_lattice(3); }}) {
    FaceLattice l = make();
    REQUIRE(validate(l).ok());
    FlagGraph fg = build_flag_graph(l);
    const int d = fg.degree;
    // face of rank r containing flag i = component of i under all colors != r
    std::vector<FaceEntry> faces;
    std::vector<std::pair<FaceId, FaceId>> covers;
    std::vector<std::vector<std::uint32_t>> comp_of_rank;
    FaceId next_id = 0;
    for (int r = 0; r < d; ++r) {
      std::vector<std::uint32_t> comp(fg.flag_count, 0xffffffffu);
      for (std::uint32_t i = 0; i < fg.flag_count; ++i) {
        if (comp[i] != 0xffffffffu) continue;
        std::uint32_t id = static_cast<std::uint32_t>(next_id);
        std::vector<std::uint32_t> stack{i};
        comp[i] = id;
        while (!stack.empty()) {
          std::uint32_t x = stack.back();
          stack.pop_back();
          for (int c = 0; c < d; ++c) {
            if (c == r) continue;
            std::uint32_t y = fg.adjacent[c][x];
            if (comp[y] == 0xffffffffu) {
              comp[y] = id;
              stack.push_back(y);
            }
          }
        }
        faces.push_back({next_id++, r});
      }
      comp_of_rank.push_back(std::move(comp));
    }
    faces.push_back({next_id, -1});
    faces.push_back({next_id + 1, d});
    for (std::uint32_t i = 0; i < fg.flag_count; ++i) {
      covers.emplace_back(next_id, comp_of_rank[0][i]);
      covers.emplace_back(comp_of_rank[static_cast<std::size_t>(d - 1)][i], next_id + 1);
      for (int r = 0; r + 1 < d; ++r)
        covers.emplace_back(comp_of_rank[static_cast<std::size_t>(r)][i],
                            comp_of_rank[static_cast<std::size_t>(r + 1)][i]);
    }
    FaceLattice rebuilt = FaceLattice::from_parts(d, std::move(faces), covers);
    CHECK(validate(rebuilt).ok());
    CHECK(oracles::count_isomorphisms(oracles::to_poset(rebuilt), oracles::to_poset(l), 1) == 1);
  }
}

TEST_CASE("json round trip preserves the lattice") {
  FaceLattice cube = cube_lattice();
  FaceLattice back = FaceLattice::from_json(cube.to_json());
  CHECK(back.face_count() == cube.face_count());
  CHECK(back.to_json() == cube.to_json());
  CHECK_THROWS_AS(FaceLattice::from_json(nlohmann::json{{"rank", 2}}), Error);
}

TEST_CASE("structural defects are rejected before validation") {
  std::vector<FaceEntry> faces{{0, -1}, {1, 0}, {2, 1}};
  CHECK_THROWS_AS(FaceLattice::from_parts(1, faces, {{0, 2}}), Error);   // rank gap
  CHECK_THROWS_AS(FaceLattice::from_parts(1, faces, {{0, 99}}), Error);  // dangling id
  std::vector<FaceEntry> dup{{0, -1}, {0, 0}};
  CHECK_THROWS_AS(FaceLattice::from_parts(1, dup, {}), Error);
}
