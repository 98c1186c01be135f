#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "symbreak/breaker.hpp"
#include "symbreak/lattice.hpp"
#include "symbreak/perm.hpp"

namespace symbreak {

// Small dense square matrix, row major.
struct Mat {
  int n = 0;
  std::vector<double> a;

  static Mat identity(int n);
  static Mat zero(int n);
  double& at(int r, int c) { return a[static_cast<std::size_t>(r * n + c)]; }
  double at(int r, int c) const { return a[static_cast<std::size_t>(r * n + c)]; }
};

Mat mat_mul(const Mat& x, const Mat& y);
Mat mat_pow(const Mat& x, int k);
Mat block_diag(const Mat& x, const Mat& y);
Mat kronecker(const Mat& x, const Mat& y);
std::vector<double> mat_apply(const Mat& x, const std::vector<double>& v);
double max_abs_diff(const Mat& x, const Mat& y);

// Finite coordinate point set with a linear group action. `generators` holds
// one orthogonal matrix per group generator; `sigma` is the distinguished
// involution when one is tracked. Point sets built by the orbit constructors
// come in exact antipodal pairs whenever sigma acts as -id.
struct PointConfiguration {
  int dim = 0;
  std::vector<std::vector<double>> points;
  std::vector<Mat> generators;
  std::optional<Mat> sigma;
  double epsilon = 1e-9;
  std::uint64_t seed = 0;
  bool centrally_symmetric = false;

  nlohmann::ordered_json to_json() const;
  static PointConfiguration from_json(const nlohmann::json& j);
  std::string to_off() const;  // vertex cloud only; hulled results add facets
};

// Deterministic unit-sphere sampler (Box-Muller over mt19937_64).
std::vector<std::vector<double>> sample_unit_sphere(int dim, int count, std::uint64_t seed);

// Orbit of S on the unit 3-sphere under the order-2m isometry acting on both
// complex coordinates by the primitive rotation; sigma = gamma^m negates
// every point, exactly by construction. Rejects coincident orbit points.
PointConfiguration cyclic_orbit_polytope(int m, const std::vector<std::vector<double>>& s,
                                         double epsilon = 1e-9);

// Cartesian product: vertex pairs, block-diagonal action.
PointConfiguration cartesian_product(const PointConfiguration& a, const PointConfiguration& b);

// All tensors u (x) v with the Kronecker action; central symmetry of the left
// factor is inherited since (-u) (x) v = -(u (x) v), exactly.
PointConfiguration tensor_combine(const PointConfiguration& a, const PointConfiguration& b,
                                  int dim_cap = 4096);

// Regular simplex carrying the regular representation of a product of cyclic
// groups (degree bumped to 3 for the two-element group, where the regular
// representation would act as -id on the segment and collapse the tensor
// action). `orders` lists the cyclic factor orders.
PointConfiguration simplex_factor(const std::vector<int>& orders);

struct HullOptions {
  double epsilon = 1e-9;
  int dim_cap = 4;
  std::size_t point_cap = 64;
};

struct HullResult {
  int dim = 0;
  FaceLattice lattice;
  std::vector<std::uint32_t> vertex_points;       // lattice vertex -> point index
  std::vector<std::uint32_t> point_vertex;        // point index -> lattice vertex
  std::vector<std::vector<std::uint32_t>> facets; // point indices, sorted
  std::vector<std::vector<double>> facet_normals; // outward unit normals
  std::vector<double> facet_offsets;
  std::vector<Permutation> generator_perms;       // induced lattice automorphisms
  std::optional<Permutation> sigma_perm;

  nlohmann::ordered_json to_json(const PointConfiguration& config) const;
  std::string to_off(const PointConfiguration& config) const;
};

// Brute-force facet enumeration with tolerance: every d-subset proposes a
// hyperplane, supporting hyperplanes become facets, the face lattice is the
// intersection closure of the facet vertex sets. Near-incidences inside
// (epsilon, 10 epsilon] raise a precision error.
HullResult hull(const PointConfiguration& config, const HullOptions& opt = {});

// Bipyramid over the regular 2m-gon (m odd, >= 3) with thin pyramids over one
// rotatory-reflection orbit of facets; gamma^m negates every vertex exactly.
// delta is chosen adaptively so the hull has the predicted face counts.
PointConfiguration bipyramid_odd(int m, double epsilon = 1e-9);

struct CyclicFactor {
  long order = 0;
  long sigma_power = 0;  // 0 when the factor is not part of the involution
};

struct CentsymOptions {
  std::uint64_t seed = 0;
  double epsilon = 1e-9;
  int dim_cap = 4;
  int samples = 0;  // 0 = automatic (4 for order-2 factors, 2 otherwise)
  std::string route = "auto";  // auto | bipyramid
  BreakOptions break_options;
};

struct CentsymResult {
  std::string status;  // "verified" | "configuration-only"
  PointConfiguration config;
  std::size_t group_order = 0;
  double sigma_matrix_error = 0;    // entrywise distance from -I
  bool sigma_exact_negation = false;  // sigma maps each point to its exact negation
  std::optional<HullResult> hull;
  std::size_t hull_group_order = 0;  // automorphisms of the hull lattice
  std::optional<BrokenPolytope> broken;
  std::optional<VerificationReport> broken_report;

  nlohmann::ordered_json to_json() const;
};

// Builds a centrally symmetric model of a finite abelian group of even order
// with a prescribed involution: orbit polytopes for the even cyclic factors
// carrying the involution, a cartesian product across them, a tensor with the
// simplex factor for the rest; hulled and trimmed when the dimension is
// within the cap, configuration-only otherwise.
CentsymResult centsym_model(const std::vector<CyclicFactor>& factors,
                            const CentsymOptions& opt = {});

}  // namespace symbreak
