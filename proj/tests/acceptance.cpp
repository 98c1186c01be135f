// Acceptance suite: runs every acceptance criterion end to end and prints one
// pass/fail line per criterion. Exits nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "symbreak/breaker.hpp"
#include "symbreak/geom.hpp"
#include "symbreak/shapes.hpp"

using namespace symbreak;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int number, const std::string& name, bool pass, double seconds,
            const std::string& detail = "") {
  std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", pass ? "PASS" : "FAIL", number, name.c_str(),
              seconds, detail.empty() ? "" : " — ", detail.c_str());
  if (!pass) ++failures;
}

double run(const std::function<bool(std::string&)>& body, std::string& detail) {
  auto t0 = Clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
    ok = false;
  }
  auto t1 = Clock::now();
  double s = std::chrono::duration<double>(t1 - t0).count();
  if (!ok && detail.empty()) detail = "check failed";
  return ok ? s : -s;
}

void criterion(int number, const std::string& name, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
  std::string detail;
  double s = run(body, detail);
  bool ok = s >= 0;
  s = std::abs(s);
  if (ok && s > budget_seconds) {
    ok = false;
    detail = "over the runtime budget of " + std::to_string(budget_seconds) + "s";
  }
  report(number, name, ok, s, ok ? "" : detail);
}

int order_of(const Permutation& p) {
  Permutation q = p;
  int k = 1;
  while (!q.is_identity() && k < 10000) {
    q = compose(p, q);
    ++k;
  }
  return k;
}

Permutation element_of_order(const PermGroup& g, int order) {
  for (const Permutation& p : g.closure())
    if (order_of(p) == order) return p;
  fail(ErrorKind::internal, "no element of the requested order");
}

struct BreakCase {
  std::string name;
  BrokenPolytope broken;
  VerificationReport report;
  std::size_t expected_order;
  double seconds;
};

std::vector<BreakCase>& break_cases() {
  static std::vector<BreakCase> cases = [] {
    std::vector<BreakCase> out;
    auto add = [&](const std::string& name, const FaceLattice& q, const PermGroup& gamma,
                   std::size_t expected) {
      auto t0 = Clock::now();
      BrokenPolytope b = break_polytope(q, gamma);
      VerificationReport r = verify_broken(b);
      double s = std::chrono::duration<double>(Clock::now() - t0).count();
      out.push_back({name, std::move(b), std::move(r), expected, s});
    };
    FaceLattice tetra = simplex_lattice(3);
    validate(tetra);
    add("(tetrahedron, trivial)", tetra, PermGroup::trivial(tetra), 1);
    PermGroup tetra_full = automorphisms(tetra);
    add("(tetrahedron, C3)", tetra,
        PermGroup::from_generators(tetra, {element_of_order(tetra_full, 3)}), 3);
    FaceLattice cube = cube_lattice();
    validate(cube);
    PermGroup cube_full = automorphisms(cube);
    add("(cube, C4)", cube, PermGroup::from_generators(cube, {element_of_order(cube_full, 4)}),
        4);
    add("(cube, full 48)", cube,
        PermGroup::from_generators(
            cube, std::vector<Permutation>(cube_full.closure().begin(),
                                           cube_full.closure().end())),
        48);
    FaceLattice hemi = hemicube_lattice();
    validate(hemi);
    PermGroup hemi_full = automorphisms(hemi);
    add("(hemi-cube, C3)", hemi,
        PermGroup::from_generators(hemi, {element_of_order(hemi_full, 3)}), 3);
    return out;
  }();
  return cases;
}

}  // namespace

int main() {
  std::printf("acceptance suite\n================\n");

  criterion(1, "axiom suite and flag counts", 1.0, [](std::string& detail) {
    struct Entry {
      FaceLattice lattice;
      std::uint64_t flags;
    };
    std::vector<Entry> entries;
    for (int d = 1; d <= 5; ++d) {
      std::uint64_t f = 1;
      for (int k = 2; k <= d + 1; ++k) f *= static_cast<std::uint64_t>(k);
      entries.push_back({simplex_lattice(d), f});
    }
    entries.push_back({cube_lattice(), 48});
    entries.push_back({crosspolytope_lattice(3), 48});
    entries.push_back({hemicube_lattice(), 24});
    for (auto& e : entries) {
      ValidationReport rep = validate(e.lattice);
      if (!rep.ok()) {
        detail = "a lattice failed validation: " + rep.summary();
        return false;
      }
      if (rep.flag_count != e.flags || rep.flag_count != oracles::count_maximal_chains(e.lattice)) {
        detail = "flag count mismatch against the chain-counting oracle";
        return false;
      }
    }
    return true;
  });

  criterion(2, "automorphism engine equals the face-bijection oracle", 30.0,
            [](std::string& detail) {
              std::vector<std::pair<FaceLattice, std::uint64_t>> corpus;
              corpus.emplace_back(cube_lattice(), 48);
              corpus.emplace_back(simplex_lattice(3), 24);
              corpus.emplace_back(bipyramid_lattice(6), 24);
              corpus.emplace_back(crosspolytope_lattice(3), 48);
              corpus.emplace_back(hemicube_lattice(), 24);
              corpus.emplace_back(simplex_lattice(4), 120);
              corpus.emplace_back(polygon_lattice(7), 14);
              corpus.emplace_back(bipyramid_lattice(10), 40);
              for (auto& [lattice, expected] : corpus) {
                if (lattice.face_count() > 500) {
                  detail = "corpus lattice above 500 faces";
                  return false;
                }
                validate(lattice);
                std::uint64_t engine = automorphisms(lattice).order();
                std::uint64_t oracle = oracles::count_automorphisms(oracles::to_poset(lattice));
                if (engine != expected || engine != oracle) {
                  detail = "order mismatch: engine " + std::to_string(engine) + ", oracle " +
                           std::to_string(oracle) + ", expected " + std::to_string(expected);
                  return false;
                }
              }
              return true;
            });

  criterion(3, "symmetry breaking reproduces the prescribed group", 5 * 60.0 * 5,
            [](std::string& detail) {
              for (const BreakCase& c : break_cases()) {
                if (!c.report.validates || !c.report.group_match ||
                    c.report.group_order_found != c.expected_order) {
                  detail = c.name + ": " + c.report.summary();
                  return false;
                }
                if (c.seconds > 5 * 60.0) {
                  detail = c.name + " exceeded its five-minute budget";
                  return false;
                }
              }
              return true;
            });

  criterion(4, "1-skeleton of the subdivision sits unrefined in the output", 60.0,
            [](std::string& detail) {
              for (const BreakCase& c : break_cases()) {
                const BrokenPolytope& b = c.broken;
                // every chain of length <= d-1 is a face of P, and the covers
                // among chain faces are exactly the drop-one inclusions
                for (int dim = 0; dim + 1 < b.p.rank(); ++dim) {
                  const auto& flat = b.complex.simplices_by_dim[static_cast<std::size_t>(dim)];
                  std::size_t stride = static_cast<std::size_t>(dim) + 1;
                  if (b.chain_count[static_cast<std::size_t>(dim)] != flat.size() / stride) {
                    detail = c.name + ": a chain is missing from the refined polytope";
                    return false;
                  }
                }
                if (!c.report.skeleton_intact) {
                  detail = c.name + ": refined boundary inside the skeleton";
                  return false;
                }
                // spot check: covers between chain faces agree with inclusion
                for (std::uint32_t pos = 0; pos < b.chain_count[1]; ++pos) {
                  FaceIndex e = b.chain_face(1, pos);
                  const auto& flat = b.complex.simplices_by_dim[1];
                  std::uint32_t lo_v = flat[pos * 2], hi_v = flat[pos * 2 + 1];
                  if (!b.p.covers_pair(b.chain_face(0, lo_v), e) ||
                      !b.p.covers_pair(b.chain_face(0, hi_v), e)) {
                    detail = c.name + ": a chain inclusion is not a cover";
                    return false;
                  }
                }
              }
              return true;
            });

  criterion(5, "valency equation, interior bound, and interval chain", 60.0,
            [](std::string& detail) {
              for (const BreakCase& c : break_cases()) {
                if (!c.report.valency_equation || !c.report.interior_bound ||
                    !c.report.interval_chain) {
                  detail = c.name + ": " + c.report.summary();
                  return false;
                }
              }
              return true;
            });

  criterion(6, "centrally symmetric models for C2 and C6, hulled and trimmed", 10 * 60.0,
            [](std::string& detail) {
              for (long order : {2l, 6l}) {
                CentsymOptions opt;
                CentsymResult res = centsym_model({{order, order / 2}}, opt);
                if (res.status != "verified" || !res.broken_report ||
                    !res.broken_report->ok() ||
                    res.broken_report->group_order_found != static_cast<std::size_t>(order)) {
                  detail = "order " + std::to_string(order) + " pipeline not verified";
                  return false;
                }
                // sigma matrix against -I: exact for order 2, within 1e-9 after
                if (order == 2 && res.sigma_matrix_error != 0.0) {
                  detail = "sigma matrix for C2 is not exactly -I";
                  return false;
                }
                if (res.sigma_matrix_error > 1e-9) {
                  detail = "sigma matrix strays from -I beyond 1e-9";
                  return false;
                }
                // sigma's induced lattice automorphism sends every geometric
                // vertex to its exact antipode
                const HullResult& h = *res.hull;
                if (!h.sigma_perm) {
                  detail = "no induced sigma on the hull lattice";
                  return false;
                }
                FaceIndex v0 = h.lattice.rank_begin(0);
                for (FaceIndex v = v0; v < h.lattice.rank_end(0); ++v) {
                  FaceIndex w = h.sigma_perm->map[v];
                  const auto& p = res.config.points[h.vertex_points[v - v0]];
                  const auto& q = res.config.points[h.vertex_points[w - v0]];
                  for (std::size_t k = 0; k < p.size(); ++k)
                    if (q[k] != -p[k]) {
                      detail = "sigma does not negate a hull vertex exactly";
                      return false;
                    }
                }
                if (!res.sigma_exact_negation) {
                  detail = "sigma does not negate the configuration exactly";
                  return false;
                }
              }
              return true;
            });

  criterion(7, "odd-m bipyramid route: order 2m, exact negation, even m rejected", 10 * 60.0,
            [](std::string& detail) {
              for (int m : {3, 5}) {
                CentsymOptions opt;
                opt.route = "bipyramid";
                CentsymResult res = centsym_model({{2l * m, m}}, opt);
                if (res.status != "verified" || !res.broken_report->ok() ||
                    res.broken_report->group_order_found != static_cast<std::size_t>(2 * m)) {
                  detail = "m = " + std::to_string(m) + " did not trim to order 2m";
                  return false;
                }
                if (!res.sigma_exact_negation) {
                  detail = "gamma^m does not negate the vertices exactly";
                  return false;
                }
              }
              // even m must be rejected with the obstruction message
              try {
                CentsymOptions opt;
                opt.route = "bipyramid";
                centsym_model({{8, 4}}, opt);
                detail = "even m was not rejected";
                return false;
              } catch (const Error& e) {
                if (e.kind() != ErrorKind::input ||
                    std::string(e.what()).find("degree") == std::string::npos) {
                  detail = "rejection lacks the obstruction message";
                  return false;
                }
              }
              return true;
            });

  criterion(8, "determinism: same seed, byte-identical output", 10 * 60.0,
            [](std::string& detail) {
              auto once = [](std::uint64_t seed) {
                CentsymOptions opt;
                opt.seed = seed;
                opt.route = "bipyramid";
                CentsymResult res = centsym_model({{6, 3}}, opt);
                return res.to_json().dump() + res.broken->p.to_json().dump() +
                       res.broken->plan.to_json().dump() + res.hull->to_off(res.config);
              };
              if (once(0) != once(0)) {
                detail = "two runs with seed 0 differ";
                return false;
              }
              auto orbit_once = [](std::uint64_t seed) {
                CentsymOptions opt;
                opt.seed = seed;
                CentsymResult res = centsym_model({{2, 1}}, opt);
                return res.to_json().dump() + res.broken->p.to_json().dump();
              };
              if (orbit_once(7) != orbit_once(7)) {
                detail = "two sampled runs with seed 7 differ";
                return false;
              }
              if (orbit_once(7) == orbit_once(8)) {
                detail = "different seeds produced identical samples";
                return false;
              }
              return true;
            });

  std::printf(
      "\nnot reproducible at desk scale (by design): hulls of the cartesian/tensor models in\n"
      "dimension > 4 (configuration-only status), metric sphere realizations, and convex\n"
      "realization of the refined polytopes.\n");
  std::printf("\n%s (%d failure%s)\n", failures == 0 ? "ALL CRITERIA PASS" : "FAILURES PRESENT",
              failures, failures == 1 ? "" : "s");
  return failures == 0 ? 0 : 1;
}
