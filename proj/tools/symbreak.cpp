// Command-line front end: polytope validation, flag graphs, automorphism
// groups, barycentric subdivision, symmetry breaking, and the centrally
// symmetric constructions.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "symbreak/breaker.hpp"
#include "symbreak/geom.hpp"
#include "symbreak/lattice.hpp"
#include "symbreak/order_complex.hpp"
#include "symbreak/perm.hpp"

using namespace symbreak;

namespace {

struct RunConfig {
  std::uint64_t seed = 0;
  double epsilon = 1e-9;
  std::size_t cap_faces = 40'000'000;
  int cap_dim = 4;
  bool json = false;
  std::string out;
};

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::input, "cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::input, std::string("invalid json in ") + path + ": " + e.what());
  }
  return j;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) fail(ErrorKind::input, "cannot open " + path + " for writing");
  out << content;
}

void emit(const RunConfig& cfg, const nlohmann::ordered_json& j, const std::string& text) {
  if (cfg.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text << "\n";
  if (!cfg.out.empty()) write_file(cfg.out, j.dump(2) + "\n");
}

// a small generating set, greedily drawn from the closure
std::vector<Permutation> small_generating_set(const FaceLattice& base, const PermGroup& g) {
  std::vector<Permutation> gens;
  PermGroup cur = PermGroup::trivial(base);
  for (const Permutation& p : g.closure()) {
    if (cur.contains(p)) continue;
    gens.push_back(p);
    cur = PermGroup::from_generators(base, gens);
    if (cur.order() == g.order()) break;
  }
  return gens;
}

int cmd_validate(const RunConfig& cfg, const std::string& file) {
  FaceLattice l = FaceLattice::from_json(load_json(file));
  ValidationReport rep = validate(l);
  std::ostringstream os;
  os << "polytope of rank " << l.rank() << ", " << rep.flag_count << " flags, "
     << (rep.ok() ? "PASS" : "FAIL") << "\n"
     << rep.summary();
  emit(cfg, rep.to_json(), os.str());
  return rep.ok() ? 0 : 1;
}

int cmd_flags(const RunConfig& cfg, const std::string& file) {
  FaceLattice l = FaceLattice::from_json(load_json(file));
  ValidationReport rep = validate(l);
  if (!rep.ok()) {
    emit(cfg, rep.to_json(), "not a polytope\n" + rep.summary());
    return 1;
  }
  FlagGraph fg = build_flag_graph(l);
  nlohmann::ordered_json j;
  j["rank"] = l.rank();
  j["flags"] = fg.flag_count;
  j["colors"] = fg.degree;
  if (fg.flag_count <= 10000) {
    auto& flags = j["flag-faces"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < fg.flag_count; ++i) {
      nlohmann::ordered_json tuple = nlohmann::ordered_json::array();
      for (int r = 0; r < fg.degree; ++r) tuple.push_back(l.id_of(fg.flag(i)[r]));
      flags.push_back(std::move(tuple));
    }
  }
  std::ostringstream os;
  os << "rank " << l.rank() << ": " << fg.flag_count << " flags, " << fg.degree
     << " adjacency colors";
  emit(cfg, j, os.str());
  return 0;
}

int cmd_autgroup(const RunConfig& cfg, const std::string& file) {
  FaceLattice l = FaceLattice::from_json(load_json(file));
  ValidationReport rep = validate(l);
  if (!rep.ok()) {
    emit(cfg, rep.to_json(), "not a polytope\n" + rep.summary());
    return 1;
  }
  PermGroup g = automorphisms(l);
  PermGroup small = PermGroup::from_generators(l, small_generating_set(l, g));
  nlohmann::ordered_json j = small.to_json();
  j["order"] = g.order();
  std::ostringstream os;
  os << "automorphism group order " << g.order() << " (" << small.generators().size()
     << " generators)";
  emit(cfg, j, os.str());
  return 0;
}

int cmd_subdivide(const RunConfig& cfg, const std::string& file) {
  FaceLattice l = FaceLattice::from_json(load_json(file));
  ValidationReport rep = validate(l);
  if (!rep.ok()) {
    emit(cfg, rep.to_json(), "not a polytope\n" + rep.summary());
    return 1;
  }
  LabelledComplex c = subdivide(l);
  std::ostringstream os;
  os << "barycentric subdivision: " << c.vertex_count() << " vertices, " << c.chamber_count()
     << " chambers of dimension " << c.d - 1;
  emit(cfg, c.to_json(l), os.str());
  return 0;
}

int cmd_break(const RunConfig& cfg, const std::string& lattice_file,
              const std::string& group_file) {
  FaceLattice q = FaceLattice::from_json(load_json(lattice_file));
  ValidationReport vrep = validate(q);
  if (!vrep.ok()) {
    emit(cfg, vrep.to_json(), "input is not a polytope\n" + vrep.summary());
    return 1;
  }
  PermGroup gamma = PermGroup::from_json(q, load_json(group_file));
  BreakOptions opt;
  opt.face_cap = cfg.cap_faces;
  BrokenPolytope b = break_polytope(q, gamma, opt);
  VerificationReport rep = verify_broken(b, opt);
  nlohmann::ordered_json j;
  j["plan"] = b.plan.to_json();
  j["report"] = rep.to_json();
  if (!cfg.out.empty()) {
    j["lattice"] = b.p.to_json();
    j["provenance"] = b.provenance_json();
  }
  std::ostringstream os;
  os << "refined polytope: " << b.p.face_count() << " faces, "
     << b.chambers.orbits.count() << " chamber orbits\n"
     << rep.summary();
  emit(cfg, j, os.str());
  return rep.ok() ? 0 : 1;
}

std::vector<CyclicFactor> parse_factors(const nlohmann::json& j) {
  if (!j.contains("factors")) fail(ErrorKind::input, "group spec needs a factors list");
  std::vector<CyclicFactor> factors;
  for (const auto& f : j.at("factors")) {
    if (f.value("type", "cyclic") != std::string("cyclic"))
      fail(ErrorKind::input, "only cyclic factors are supported");
    factors.push_back({f.at("order").get<long>(), f.value("sigma_power", 0l)});
  }
  return factors;
}

int cmd_centsym(const RunConfig& cfg, const std::string& spec_file) {
  nlohmann::json spec = load_json(spec_file);
  CentsymOptions opt;
  opt.seed = cfg.seed;
  opt.epsilon = cfg.epsilon;
  opt.dim_cap = cfg.cap_dim;
  opt.break_options.face_cap = cfg.cap_faces;
  if (spec.contains("route")) opt.route = spec.at("route").get<std::string>();
  if (spec.contains("samples")) opt.samples = spec.at("samples").get<int>();
  CentsymResult res = centsym_model(parse_factors(spec), opt);

  nlohmann::ordered_json j = res.to_json();
  std::ostringstream os;
  os << "status: " << res.status << ", group order " << res.group_order;
  if (res.broken_report)
    os << ", refined automorphism order " << res.broken_report->group_order_found << "\n"
       << res.broken_report->summary();
  bool ok = !res.broken_report || res.broken_report->ok();
  if (cfg.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << os.str() << "\n";
  if (!cfg.out.empty()) {
    write_file(cfg.out + ".report.json", j.dump(2) + "\n");
    if (res.hull)
      write_file(cfg.out + ".off", res.hull->to_off(res.config));
    else
      write_file(cfg.out + ".off", res.config.to_off());
    if (res.broken) write_file(cfg.out + ".lattice.json", res.broken->p.to_json().dump(2) + "\n");
  }
  return ok ? 0 : 1;
}

int cmd_hull(const RunConfig& cfg, const std::string& config_file) {
  PointConfiguration c = PointConfiguration::from_json(load_json(config_file));
  if (c.epsilon <= 0) c.epsilon = cfg.epsilon;
  HullOptions opt;
  opt.epsilon = c.epsilon;
  opt.dim_cap = cfg.cap_dim;
  HullResult h = hull(c, opt);
  nlohmann::ordered_json j = h.to_json(c);
  std::ostringstream os;
  os << "hull: " << h.vertex_points.size() << " vertices, " << h.facets.size()
     << " facets, lattice of rank " << h.lattice.rank();
  if (cfg.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << os.str() << "\n";
  if (!cfg.out.empty()) {
    write_file(cfg.out + ".json", j.dump(2) + "\n");
    write_file(cfg.out + ".off", h.to_off(c));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symmetry breaking toolkit for abstract polytopes"};
  app.require_subcommand(1);
  RunConfig cfg;
  app.add_option("--seed", cfg.seed, "sampler seed (default 0)");
  app.add_option("--epsilon", cfg.epsilon, "geometric tolerance (default 1e-9)");
  app.add_option("--cap-faces", cfg.cap_faces, "face count cap for refinements");
  app.add_option("--cap-dim", cfg.cap_dim, "hull dimension cap (default 4)");
  app.add_flag("--json", cfg.json, "machine-readable output");
  app.add_option("--out", cfg.out, "output file (or prefix for multi-file commands)");

  std::string lattice_file, group_file, spec_file, config_file;
  app.fallthrough();  // global options may follow the subcommand
  auto* validate_cmd = app.add_subcommand("validate", "check the polytope axioms");
  validate_cmd->add_option("lattice", lattice_file, "lattice json")->required();
  auto* flags_cmd = app.add_subcommand("flags", "enumerate flags and adjacencies");
  flags_cmd->add_option("lattice", lattice_file, "lattice json")->required();
  auto* aut_cmd = app.add_subcommand("autgroup", "compute the automorphism group");
  aut_cmd->add_option("lattice", lattice_file, "lattice json")->required();
  auto* sub_cmd = app.add_subcommand("subdivide", "barycentric subdivision");
  sub_cmd->add_option("lattice", lattice_file, "lattice json")->required();
  auto* break_cmd = app.add_subcommand("break", "refine so the prescribed subgroup survives");
  break_cmd->add_option("lattice", lattice_file, "lattice json")->required();
  break_cmd->add_option("group", group_file, "group json")->required();
  auto* cent_cmd = app.add_subcommand("centsym", "centrally symmetric model of an abelian group");
  cent_cmd->add_option("spec", spec_file, "group spec json")->required();
  auto* hull_cmd = app.add_subcommand("hull", "facet enumeration and face lattice");
  hull_cmd->add_option("config", config_file, "point configuration json")->required();

  CLI11_PARSE(app, argc, argv);
  try {
    if (validate_cmd->parsed()) return cmd_validate(cfg, lattice_file);
    if (flags_cmd->parsed()) return cmd_flags(cfg, lattice_file);
    if (aut_cmd->parsed()) return cmd_autgroup(cfg, lattice_file);
    if (sub_cmd->parsed()) return cmd_subdivide(cfg, lattice_file);
    if (break_cmd->parsed()) return cmd_break(cfg, lattice_file, group_file);
    if (cent_cmd->parsed()) return cmd_centsym(cfg, spec_file);
    if (hull_cmd->parsed()) return cmd_hull(cfg, config_file);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::input:
        return 2;
      case ErrorKind::capacity:
      case ErrorKind::precision:
        return 3;
      default:
        return 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
