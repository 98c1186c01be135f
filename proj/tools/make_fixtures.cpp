// Writes the sample lattices, groups, and group specs under a directory
// (default data/). The committed files in data/ were produced by this tool.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "symbreak/perm.hpp"
#include "symbreak/shapes.hpp"

using namespace symbreak;

namespace {

void write(const std::filesystem::path& path, const nlohmann::ordered_json& j) {
  std::ofstream out(path);
  out << j.dump(2) << "\n";
  std::cout << "wrote " << path.string() << "\n";
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

nlohmann::ordered_json cyclic_subgroup_json(const FaceLattice& l, int order) {
  PermGroup full = automorphisms(l);
  for (const Permutation& p : full.closure())
    if (order_of(p) == order) return PermGroup::from_generators(l, {p}).to_json();
  fail(ErrorKind::input, "no element of the requested order");
}

}  // namespace

int main(int argc, char** argv) {
  std::filesystem::path dir = argc > 1 ? argv[1] : "data";
  std::filesystem::create_directories(dir);

  auto validated = [](FaceLattice l) {
    if (!validate(l).ok()) fail(ErrorKind::internal, "shape does not validate");
    return l;
  };

  FaceLattice cube = validated(cube_lattice());
  FaceLattice tetra = validated(simplex_lattice(3));
  FaceLattice hemi = validated(hemicube_lattice());

  write(dir / "cube.json", cube.to_json());
  write(dir / "tetrahedron.json", tetra.to_json());
  write(dir / "octahedron.json", validated(crosspolytope_lattice(3)).to_json());
  write(dir / "hemicube.json", hemi.to_json());
  write(dir / "simplex4.json", validated(simplex_lattice(4)).to_json());
  write(dir / "square.json", validated(polygon_lattice(4)).to_json());
  write(dir / "segment.json", validated(segment_lattice()).to_json());
  write(dir / "hexagonal-bipyramid.json", validated(bipyramid_lattice(6)).to_json());

  // a cube lattice with one vertex-edge cover removed: fails the diamond check
  {
    auto j = cube.to_json();
    auto& covers = j["covers"];
    for (std::size_t i = 0; i < covers.size(); ++i) {
      FaceId lo = covers[i][0].get<FaceId>();
      if (lo >= 0 && cube.rank_of(cube.require_index(lo)) == 0) {
        covers.erase(i);
        break;
      }
    }
    write(dir / "broken-diamond.json", j);
  }

  write(dir / "cube-c4.json", cyclic_subgroup_json(cube, 4));
  write(dir / "tetrahedron-c3.json", cyclic_subgroup_json(tetra, 3));
  write(dir / "hemicube-c3.json", cyclic_subgroup_json(hemi, 3));
  write(dir / "trivial-group.json", nlohmann::ordered_json{{"generators", nlohmann::ordered_json::array()}});

  write(dir / "c2.json",
        {{"factors", {{{"type", "cyclic"}, {"order", 2}, {"sigma_power", 1}}}}});
  write(dir / "c6.json",
        {{"factors", {{{"type", "cyclic"}, {"order", 6}, {"sigma_power", 3}}}}});
  write(dir / "c6-bipyramid.json", {{"factors", {{{"type", "cyclic"}, {"order", 6}, {"sigma_power", 3}}}},
                                    {"route", "bipyramid"}});
  write(dir / "c10-bipyramid.json", {{"factors", {{{"type", "cyclic"}, {"order", 10}, {"sigma_power", 5}}}},
                                     {"route", "bipyramid"}});
  write(dir / "c2xc2.json", {{"factors",
                              {{{"type", "cyclic"}, {"order", 2}, {"sigma_power", 1}},
                               {{"type", "cyclic"}, {"order", 2}, {"sigma_power", 0}}}}});

  // point configuration of the 3-cube corners, for the hull subcommand
  {
    nlohmann::ordered_json j;
    j["dimension"] = 3;
    j["epsilon"] = 1e-9;
    auto& pts = j["points"] = nlohmann::ordered_json::array();
    for (int i = 0; i < 8; ++i)
      pts.push_back({i & 1 ? 1.0 : -1.0, i & 2 ? 1.0 : -1.0, i & 4 ? 1.0 : -1.0});
    write(dir / "cube-points.json", j);
  }
  return 0;
}
