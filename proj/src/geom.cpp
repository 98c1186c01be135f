#include "symbreak/geom.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

namespace symbreak {

Mat Mat::identity(int n) {
  Mat m = zero(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

Mat Mat::zero(int n) {
  Mat m;
  m.n = n;
  m.a.assign(static_cast<std::size_t>(n) * n, 0.0);
  return m;
}

Mat mat_mul(const Mat& x, const Mat& y) {
  Mat r = Mat::zero(x.n);
  for (int i = 0; i < x.n; ++i)
    for (int k = 0; k < x.n; ++k) {
      double v = x.at(i, k);
      if (v == 0.0) continue;
      for (int j = 0; j < x.n; ++j) r.at(i, j) += v * y.at(k, j);
    }
  return r;
}

Mat mat_pow(const Mat& x, int k) {
  Mat r = Mat::identity(x.n);
  for (int i = 0; i < k; ++i) r = mat_mul(r, x);
  return r;
}

Mat block_diag(const Mat& x, const Mat& y) {
  Mat r = Mat::zero(x.n + y.n);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) r.at(i, j) = x.at(i, j);
  for (int i = 0; i < y.n; ++i)
    for (int j = 0; j < y.n; ++j) r.at(x.n + i, x.n + j) = y.at(i, j);
  return r;
}

Mat kronecker(const Mat& x, const Mat& y) {
  Mat r = Mat::zero(x.n * y.n);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j)
      for (int k = 0; k < y.n; ++k)
        for (int l = 0; l < y.n; ++l)
          r.at(i * y.n + k, j * y.n + l) = x.at(i, j) * y.at(k, l);
  return r;
}

std::vector<double> mat_apply(const Mat& x, const std::vector<double>& v) {
  std::vector<double> r(static_cast<std::size_t>(x.n), 0.0);
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) r[static_cast<std::size_t>(i)] += x.at(i, j) * v[static_cast<std::size_t>(j)];
  return r;
}

double max_abs_diff(const Mat& x, const Mat& y) {
  double m = 0;
  for (std::size_t i = 0; i < x.a.size(); ++i) m = std::max(m, std::abs(x.a[i] - y.a[i]));
  return m;
}

// ---------------------------------------------------------------------------

std::vector<std::vector<double>> sample_unit_sphere(int dim, int count, std::uint64_t seed) {
  std::mt19937_64 eng(seed ^ 0x5eedf00dULL);
  auto uniform = [&]() { return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53; };
  std::vector<std::vector<double>> out;
  for (int i = 0; i < count; ++i) {
    std::vector<double> p(static_cast<std::size_t>(dim));
    double norm2 = 0;
    do {
      for (int j = 0; j < dim; j += 2) {
        double u1 = uniform(), u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        p[static_cast<std::size_t>(j)] = r * std::cos(2.0 * std::numbers::pi * u2);
        if (j + 1 < dim) p[static_cast<std::size_t>(j + 1)] = r * std::sin(2.0 * std::numbers::pi * u2);
      }
      norm2 = 0;
      for (double x : p) norm2 += x * x;
    } while (norm2 < 1e-8);
    double inv = 1.0 / std::sqrt(norm2);
    for (double& x : p) x *= inv;
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

// 2x2 rotation by k*pi/m, exact at quarter turns
std::array<double, 4> rot_entries(long k, long m) {
  long twice = 2 * k;
  if (twice % m == 0) {
    long q = ((twice / m) % 4 + 4) % 4;
    switch (q) {
      case 0:
        return {1, 0, 0, 1};
      case 1:
        return {0, -1, 1, 0};
      case 2:
        return {-1, 0, 0, -1};
      default:
        return {0, 1, -1, 0};
    }
  }
  double a = std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
  return {std::cos(a), -std::sin(a), std::sin(a), std::cos(a)};
}

Mat double_rotation(long k, long m) {
  auto e = rot_entries(k, m);
  Mat r2;
  r2.n = 2;
  r2.a = {e[0], e[1], e[2], e[3]};
  return block_diag(r2, r2);
}

std::vector<double> negate(const std::vector<double>& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
  return r;
}

double dist2(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

}  // namespace

PointConfiguration cyclic_orbit_polytope(int m, const std::vector<std::vector<double>>& s,
                                         double epsilon) {
  if (m < 1) fail(ErrorKind::input, "cyclic order parameter must be positive");
  if (s.empty()) fail(ErrorKind::input, "seed point set is empty");
  for (const auto& p : s)
    if (p.size() != 4) fail(ErrorKind::input, "seed points must lie in 4-space");
  PointConfiguration c;
  c.dim = 4;
  c.epsilon = epsilon;
  c.generators.push_back(double_rotation(1, m));
  c.sigma = mat_pow(c.generators[0], m);
  c.centrally_symmetric = true;
  for (const auto& p : s) {
    std::size_t base = c.points.size();
    for (int j = 0; j < m; ++j) c.points.push_back(mat_apply(double_rotation(j, m), p));
    for (int j = 0; j < m; ++j) c.points.push_back(negate(c.points[base + static_cast<std::size_t>(j)]));
  }
  double min_gap = 10 * epsilon;
  for (std::size_t i = 0; i < c.points.size(); ++i)
    for (std::size_t j = i + 1; j < c.points.size(); ++j)
      if (dist2(c.points[i], c.points[j]) < min_gap * min_gap)
        fail(ErrorKind::input,
             "orbit points coincide; the seed set is not generic, re-sample it");
  if (c.points.size() != static_cast<std::size_t>(2 * m) * s.size())
    fail(ErrorKind::internal, "orbit size mismatch");
  return c;
}

PointConfiguration cartesian_product(const PointConfiguration& a, const PointConfiguration& b) {
  PointConfiguration c;
  c.dim = a.dim + b.dim;
  c.epsilon = std::min(a.epsilon, b.epsilon);
  for (const auto& u : a.points)
    for (const auto& v : b.points) {
      std::vector<double> p = u;
      p.insert(p.end(), v.begin(), v.end());
      c.points.push_back(std::move(p));
    }
  for (const Mat& g : a.generators) c.generators.push_back(block_diag(g, Mat::identity(b.dim)));
  for (const Mat& g : b.generators) c.generators.push_back(block_diag(Mat::identity(a.dim), g));
  if (a.sigma && b.sigma) c.sigma = block_diag(*a.sigma, *b.sigma);
  c.centrally_symmetric = a.centrally_symmetric && b.centrally_symmetric;
  return c;
}

PointConfiguration tensor_combine(const PointConfiguration& a, const PointConfiguration& b,
                                  int dim_cap) {
  if (a.dim * b.dim > dim_cap)
    fail(ErrorKind::capacity, "tensor dimension " + std::to_string(a.dim * b.dim) +
                                  " exceeds the cap " + std::to_string(dim_cap));
  PointConfiguration c;
  c.dim = a.dim * b.dim;
  c.epsilon = std::min(a.epsilon, b.epsilon);
  for (const auto& u : a.points)
    for (const auto& v : b.points) {
      std::vector<double> p(static_cast<std::size_t>(c.dim));
      for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < b.dim; ++j)
          p[static_cast<std::size_t>(i * b.dim + j)] =
              u[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j)];
      c.points.push_back(std::move(p));
    }
  for (const Mat& g : a.generators) c.generators.push_back(kronecker(g, Mat::identity(b.dim)));
  for (const Mat& g : b.generators) c.generators.push_back(kronecker(Mat::identity(a.dim), g));
  if (a.sigma) c.sigma = kronecker(*a.sigma, Mat::identity(b.dim));
  c.centrally_symmetric = a.centrally_symmetric;
  return c;
}

PointConfiguration simplex_factor(const std::vector<int>& orders) {
  long n = 1;
  for (int r : orders) {
    if (r < 1) fail(ErrorKind::input, "cyclic factor orders must be positive");
    n *= r;
  }
  if (n > 4096) fail(ErrorKind::capacity, "simplex factor degree too large");
  PointConfiguration c;
  if (n == 1) {
    c.dim = 0;
    return c;
  }
  // permutation action on the simplex vertices
  std::vector<std::vector<int>> perms;  // one per factor
  int degree;
  if (n == 2) {
    degree = 3;  // the regular representation of the 2-element group is -id
                 // on a segment; a transposition on the triangle stays faithful
    perms.push_back({1, 0, 2});
  } else {
    degree = static_cast<int>(n);
    // mixed-radix element indexing; generator j increments coordinate j
    for (std::size_t j = 0; j < orders.size(); ++j) {
      std::vector<int> perm(static_cast<std::size_t>(n));
      for (long e = 0; e < n; ++e) {
        long rem = e, rebuilt = 0, mult = 1;
        for (std::size_t k = 0; k < orders.size(); ++k) {
          long digit = rem % orders[k];
          rem /= orders[k];
          long nd = (k == j) ? (digit + 1) % orders[k] : digit;
          rebuilt += nd * mult;
          mult *= orders[k];
        }
        perm[static_cast<std::size_t>(e)] = static_cast<int>(rebuilt);
      }
      perms.push_back(std::move(perm));
    }
  }
  const int l = degree - 1;
  c.dim = l;
  // orthonormal basis of the sum-zero hyperplane: b_k ~ e_0+..+e_{k-1} - k e_k
  std::vector<std::vector<double>> basis;
  for (int k = 1; k <= l; ++k) {
    std::vector<double> b(static_cast<std::size_t>(degree), 0.0);
    double norm = std::sqrt(static_cast<double>(k) * (k + 1));
    for (int i = 0; i < k; ++i) b[static_cast<std::size_t>(i)] = 1.0 / norm;
    b[static_cast<std::size_t>(k)] = -static_cast<double>(k) / norm;
    basis.push_back(std::move(b));
  }
  for (int i = 0; i < degree; ++i) {
    std::vector<double> v(static_cast<std::size_t>(l));
    for (int k = 0; k < l; ++k) v[static_cast<std::size_t>(k)] = basis[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
    c.points.push_back(std::move(v));
  }
  for (const auto& perm : perms) {
    // M = B P B^T
    Mat m = Mat::zero(l);
    for (int r = 0; r < l; ++r)
      for (int cc = 0; cc < l; ++cc) {
        double sum = 0;
        for (int i = 0; i < degree; ++i)
          sum += basis[static_cast<std::size_t>(r)][static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] *
                 basis[static_cast<std::size_t>(cc)][static_cast<std::size_t>(i)];
        m.at(r, cc) = sum;
      }
    c.generators.push_back(std::move(m));
  }
  return c;
}

// ---------------------------------------------------------------------------
// hull

namespace {

int affine_rank(const std::vector<std::vector<double>>& pts, double epsilon) {
  if (pts.empty()) return -1;
  const int dim = static_cast<int>(pts[0].size());
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    std::vector<double> r(static_cast<std::size_t>(dim));
    for (int j = 0; j < dim; ++j) r[static_cast<std::size_t>(j)] = pts[i][static_cast<std::size_t>(j)] - pts[0][static_cast<std::size_t>(j)];
    rows.push_back(std::move(r));
  }
  int rank = 0;
  for (int col = 0; col < dim && rank < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    double best = epsilon;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (std::abs(rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) > best) {
        best = std::abs(rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]);
        pivot = r;
      }
    if (pivot < 0) continue;
    std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(pivot)]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank) continue;
      double f = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] / rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)];
      if (f == 0.0) continue;
      for (int j = 0; j < dim; ++j) rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] -= f * rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)];
    }
    ++rank;
  }
  return rank;
}

// unit normal of the hyperplane through d points, or empty when degenerate
std::vector<double> hyperplane_normal(const std::vector<std::vector<double>>& pts,
                                      const std::vector<std::uint32_t>& subset) {
  const int dim = static_cast<int>(pts[0].size());
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 1; i < subset.size(); ++i) {
    std::vector<double> r(static_cast<std::size_t>(dim));
    for (int j = 0; j < dim; ++j)
      r[static_cast<std::size_t>(j)] =
          pts[subset[i]][static_cast<std::size_t>(j)] - pts[subset[0]][static_cast<std::size_t>(j)];
    rows.push_back(std::move(r));
  }
  // Gaussian elimination, track pivot columns
  std::vector<int> pivot_col;
  int rank = 0;
  for (int col = 0; col < dim && rank < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    double best = 1e-12;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (std::abs(rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) > best) {
        best = std::abs(rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]);
        pivot = r;
      }
    if (pivot < 0) continue;
    std::swap(rows[static_cast<std::size_t>(rank)], rows[static_cast<std::size_t>(pivot)]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank) continue;
      double f = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] / rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(col)];
      if (f == 0.0) continue;
      for (int j = 0; j < dim; ++j) rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)] -= f * rows[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  if (rank != dim - 1) return {};
  std::vector<double> n(static_cast<std::size_t>(dim), 0.0);
  int free_col = 0;
  for (int col = 0; col < dim; ++col)
    if (std::find(pivot_col.begin(), pivot_col.end(), col) == pivot_col.end()) free_col = col;
  n[static_cast<std::size_t>(free_col)] = 1.0;
  for (int r = rank - 1; r >= 0; --r) {
    int pc = pivot_col[static_cast<std::size_t>(r)];
    double sum = 0;
    for (int col = pc + 1; col < dim; ++col) sum += rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] * n[static_cast<std::size_t>(col)];
    n[static_cast<std::size_t>(pc)] = -sum / rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(pc)];
  }
  double norm = 0;
  for (double x : n) norm += x * x;
  norm = std::sqrt(norm);
  for (double& x : n) x /= norm;
  return n;
}

}  // namespace

HullResult hull(const PointConfiguration& config, const HullOptions& opt) {
  const int dim = config.dim;
  const std::size_t n = config.points.size();
  if (dim > opt.dim_cap)
    fail(ErrorKind::capacity, "hull dimension " + std::to_string(dim) + " exceeds the cap " +
                                  std::to_string(opt.dim_cap));
  if (n > opt.point_cap) fail(ErrorKind::capacity, "too many points for the hull");
  if (n < static_cast<std::size_t>(dim) + 1)
    fail(ErrorKind::input, "hull needs at least dim+1 points");
  if (affine_rank(config.points, opt.epsilon) != dim)
    fail(ErrorKind::input, "point set is not full-dimensional");
  const double eps = opt.epsilon;

  std::vector<double> centroid(static_cast<std::size_t>(dim), 0.0);
  for (const auto& p : config.points)
    for (int j = 0; j < dim; ++j) centroid[static_cast<std::size_t>(j)] += p[static_cast<std::size_t>(j)] / static_cast<double>(n);

  HullResult out;
  out.dim = dim;
  std::set<std::uint64_t> facet_masks;
  std::vector<std::uint32_t> subset(static_cast<std::size_t>(dim));
  std::vector<int> pick(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) pick[static_cast<std::size_t>(i)] = i;
  bool more = static_cast<std::size_t>(dim) <= n;
  while (more) {
    for (int i = 0; i < dim; ++i) subset[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(pick[static_cast<std::size_t>(i)]);
    auto normal = hyperplane_normal(config.points, subset);
    if (!normal.empty()) {
      double offset = 0;
      for (int j = 0; j < dim; ++j) offset += normal[static_cast<std::size_t>(j)] * config.points[subset[0]][static_cast<std::size_t>(j)];
      double lo = 0, hi = 0;
      for (const auto& p : config.points) {
        double h = -offset;
        for (int j = 0; j < dim; ++j) h += normal[static_cast<std::size_t>(j)] * p[static_cast<std::size_t>(j)];
        lo = std::min(lo, h);
        hi = std::max(hi, h);
      }
      bool support_hi = lo >= -eps, support_lo = hi <= eps;
      if (support_hi || support_lo) {
        // orient outward: the centroid of the hull must be strictly inside
        double hc = -offset;
        for (int j = 0; j < dim; ++j) hc += normal[static_cast<std::size_t>(j)] * centroid[static_cast<std::size_t>(j)];
        if (hc > 0) {
          for (double& x : normal) x = -x;
          offset = -offset;
        }
        std::uint64_t mask = 0;
        bool ambiguous = false;
        for (std::size_t pi = 0; pi < n; ++pi) {
          double h = -offset;
          for (int j = 0; j < dim; ++j) h += normal[static_cast<std::size_t>(j)] * config.points[pi][static_cast<std::size_t>(j)];
          if (std::abs(h) <= eps)
            mask |= 1ull << pi;
          else if (std::abs(h) <= 10 * eps)
            ambiguous = true;
        }
        if (ambiguous)
          fail(ErrorKind::precision,
               "a point lies within the tolerance band of a facet hyperplane; perturb the "
               "input or tighten epsilon");
        if (facet_masks.insert(mask).second) {
          std::vector<std::uint32_t> verts;
          for (std::size_t pi = 0; pi < n; ++pi)
            if (mask & (1ull << pi)) verts.push_back(static_cast<std::uint32_t>(pi));
          out.facets.push_back(std::move(verts));
          out.facet_normals.push_back(normal);
          out.facet_offsets.push_back(offset);
        }
      }
    }
    // next combination
    int i = dim - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == static_cast<int>(n) - dim + i) --i;
    if (i < 0) {
      more = false;
    } else {
      ++pick[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < dim; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  if (out.facets.empty()) fail(ErrorKind::input, "no supporting hyperplanes found");

  // face lattice: intersection closure of the facet masks
  const std::uint64_t full = n == 64 ? ~0ull : ((1ull << n) - 1);
  std::set<std::uint64_t> faces(facet_masks.begin(), facet_masks.end());
  {
    std::vector<std::uint64_t> queue(faces.begin(), faces.end());
    while (!queue.empty()) {
      std::uint64_t f = queue.back();
      queue.pop_back();
      for (std::uint64_t g : facet_masks) {
        std::uint64_t meet = f & g;
        if (meet != 0 && faces.insert(meet).second) queue.push_back(meet);
      }
    }
  }
  faces.insert(0);
  faces.insert(full);
  std::vector<std::uint64_t> ordered(faces.begin(), faces.end());
  // heights via longest chains (subset DAG)
  std::sort(ordered.begin(), ordered.end(), [](std::uint64_t a, std::uint64_t b) {
    int pa = __builtin_popcountll(a), pb = __builtin_popcountll(b);
    return pa != pb ? pa < pb : a < b;
  });
  std::vector<int> height(ordered.size(), 0);
  for (std::size_t i = 0; i < ordered.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if ((ordered[j] & ordered[i]) == ordered[j] && ordered[j] != ordered[i])
        height[i] = std::max(height[i], height[j] + 1);
  if (height.back() != dim + 1)
    fail(ErrorKind::precision, "hull lattice does not grade to the ambient dimension");

  std::vector<FaceEntry> entries;
  std::vector<std::pair<FaceId, FaceId>> covers;
  std::vector<std::pair<int, std::size_t>> by_rank;  // (rank, position) -> id order
  for (std::size_t i = 0; i < ordered.size(); ++i) by_rank.push_back({height[i] - 1, i});
  std::stable_sort(by_rank.begin(), by_rank.end());
  std::vector<FaceId> face_id(ordered.size());
  FaceId next = 0;
  for (auto& [rk, pos] : by_rank) {
    if (rk == -1)
      face_id[pos] = -1;
    else if (rk == dim)
      face_id[pos] = 2147483647;
    else
      face_id[pos] = next++;
    entries.push_back({face_id[pos], rk});
  }
  for (std::size_t i = 0; i < ordered.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if ((ordered[j] & ordered[i]) == ordered[j] && ordered[j] != ordered[i] &&
          height[i] == height[j] + 1)
        covers.emplace_back(face_id[j], face_id[i]);
  out.lattice = FaceLattice::from_parts(dim, std::move(entries), covers);
  {
    ValidationReport vr = validate(out.lattice);
    if (!vr.ok())
      fail(ErrorKind::precision, "derived hull lattice is not a polytope: " + vr.summary());
  }

  // Euler relation for the boundary, every proper rank alternating
  {
    long long sum = 0;
    for (int r = 0; r < dim; ++r) {
      long long cnt = out.lattice.rank_end(r) - out.lattice.rank_begin(r);
      sum += (r % 2 == 0) ? cnt : -cnt;
    }
    long long expect = 1 - ((dim % 2 == 0) ? 1 : -1);
    if (sum != expect) fail(ErrorKind::precision, "hull boundary fails the Euler relation");
  }

  // vertex <-> point correspondence
  std::map<std::uint64_t, std::size_t> face_pos;
  for (std::size_t i = 0; i < ordered.size(); ++i) face_pos[ordered[i]] = i;
  out.point_vertex.assign(n, kNoFace);
  out.vertex_points.assign(out.lattice.rank_end(0) - out.lattice.rank_begin(0), 0);
  for (std::size_t i = 0; i < ordered.size(); ++i) {
    if (height[i] - 1 != 0) continue;
    if (__builtin_popcountll(ordered[i]) != 1)
      fail(ErrorKind::precision, "a minimal face is not a single point");
    std::uint32_t pt = static_cast<std::uint32_t>(__builtin_ctzll(ordered[i]));
    FaceIndex v = out.lattice.require_index(face_id[i]);
    out.vertex_points[v - out.lattice.rank_begin(0)] = pt;
    out.point_vertex[pt] = v - out.lattice.rank_begin(0);
  }

  // induced lattice automorphisms of the group matrices
  auto induced = [&](const Mat& g) -> Permutation {
    std::vector<std::uint32_t> point_map(n);
    for (std::size_t pi = 0; pi < n; ++pi) {
      auto img = mat_apply(g, config.points[pi]);
      std::uint32_t found = kNoFace;
      for (std::size_t qi = 0; qi < n; ++qi)
        if (dist2(img, config.points[qi]) <= eps * eps) {
          if (found != kNoFace)
            fail(ErrorKind::precision, "group image of a point matches two points");
          found = static_cast<std::uint32_t>(qi);
        }
      if (found == kNoFace)
        fail(ErrorKind::input, "a group matrix does not permute the point set");
      point_map[pi] = found;
    }
    Permutation perm = identity_permutation(out.lattice.face_count());
    for (std::size_t i = 0; i < ordered.size(); ++i) {
      if (height[i] - 1 < 0 || height[i] - 1 == dim) continue;
      std::uint64_t img_mask = 0;
      for (std::size_t pi = 0; pi < n; ++pi)
        if (ordered[i] & (1ull << pi)) img_mask |= 1ull << point_map[pi];
      auto it = face_pos.find(img_mask);
      if (it == face_pos.end())
        fail(ErrorKind::input, "a group matrix does not act on the hull lattice");
      perm.map[out.lattice.require_index(face_id[i])] =
          out.lattice.require_index(face_id[it->second]);
    }
    if (auto defect = automorphism_defect(out.lattice, perm))
      fail(ErrorKind::input, "induced vertex permutation is not a lattice automorphism: " + *defect);
    return perm;
  };
  for (const Mat& g : config.generators) out.generator_perms.push_back(induced(g));
  if (config.sigma) out.sigma_perm = induced(*config.sigma);
  return out;
}

// ---------------------------------------------------------------------------
// bipyramid with one pyramided facet orbit

PointConfiguration bipyramid_odd(int m, double epsilon) {
  if (m % 2 == 0)
    fail(ErrorKind::input,
         "even m rejected: on the 2-sphere a homeomorphism squaring to the antipodal map "
         "would need positive degree, while the antipodal map has degree -1, so no centrally "
         "symmetric 3-polytope realizes the cyclic group of order divisible by 4 with its "
         "unique involution as the central symmetry; use the 4-dimensional route");
  if (m < 3) fail(ErrorKind::input, "the bipyramid route needs odd m >= 3");

  PointConfiguration c;
  c.dim = 3;
  c.epsilon = epsilon;
  // rotatory reflection: rotation by pi/m joined with the z-flip
  {
    auto e = rot_entries(1, m);
    Mat g = Mat::zero(3);
    g.at(0, 0) = e[0];
    g.at(0, 1) = e[1];
    g.at(1, 0) = e[2];
    g.at(1, 1) = e[3];
    g.at(2, 2) = -1;
    c.generators.push_back(g);
    c.sigma = mat_pow(g, m);
  }
  c.centrally_symmetric = true;
  // ring vertices in exact antipodal pairs, then the two apexes
  for (int j = 0; j < m; ++j) {
    auto e = rot_entries(j, m);
    c.points.push_back({e[0], e[2], 0.0});
  }
  for (int j = 0; j < m; ++j) c.points.push_back(negate(c.points[static_cast<std::size_t>(j)]));
  c.points.push_back({0.0, 0.0, 1.0});
  c.points.push_back({0.0, 0.0, -1.0});

  HullOptions hopt;
  hopt.epsilon = epsilon;
  hopt.dim_cap = 3;
  HullResult base = hull(c, hopt);
  if (base.facets.size() != static_cast<std::size_t>(4 * m))
    fail(ErrorKind::internal, "bipyramid hull has unexpected facet count");

  // orbit of the facet {w0, w1, top-apex} under the induced point action
  std::vector<std::uint32_t> point_map(c.points.size());
  {
    const Mat& g = c.generators[0];
    for (std::size_t pi = 0; pi < c.points.size(); ++pi) {
      auto img = mat_apply(g, c.points[pi]);
      std::uint32_t found = kNoFace;
      for (std::size_t qi = 0; qi < c.points.size(); ++qi)
        if (dist2(img, c.points[qi]) <= epsilon * epsilon) found = static_cast<std::uint32_t>(qi);
      point_map[pi] = found;
    }
  }
  std::uint32_t top_apex = static_cast<std::uint32_t>(2 * m);
  std::vector<std::uint32_t> seed = {0, 1, top_apex};
  std::map<std::vector<std::uint32_t>, std::size_t> facet_pos;
  for (std::size_t i = 0; i < base.facets.size(); ++i) facet_pos[base.facets[i]] = i;
  if (!facet_pos.count(seed)) fail(ErrorKind::internal, "expected bipyramid facet missing");
  std::vector<std::size_t> orbit;
  {
    std::vector<std::uint32_t> cur = seed;
    for (int j = 0; j < 2 * m; ++j) {
      auto it = facet_pos.find(cur);
      if (it == facet_pos.end()) fail(ErrorKind::internal, "facet orbit leaves the hull");
      orbit.push_back(it->second);
      std::vector<std::uint32_t> next;
      for (std::uint32_t v : cur) next.push_back(point_map[v]);
      std::sort(next.begin(), next.end());
      cur = std::move(next);
    }
    std::set<std::size_t> distinct(orbit.begin(), orbit.end());
    if (distinct.size() != static_cast<std::size_t>(2 * m))
      fail(ErrorKind::internal, "facet orbit is shorter than the group order");
  }

  // attach thin pyramids, halving the height until the hull has the predicted
  // counts: 4m - 2m + 3*2m facets and 4m + 2 vertices
  for (double delta = 0.5; delta > 1e-7; delta /= 2) {
    PointConfiguration attempt = c;
    std::vector<std::vector<double>> apexes(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
      std::size_t fi = orbit[static_cast<std::size_t>(j)];
      std::vector<double> apex(3, 0.0);
      for (std::uint32_t v : base.facets[fi])
        for (int k = 0; k < 3; ++k) apex[static_cast<std::size_t>(k)] += c.points[v][static_cast<std::size_t>(k)] / 3.0;
      for (int k = 0; k < 3; ++k) apex[static_cast<std::size_t>(k)] += delta * base.facet_normals[fi][static_cast<std::size_t>(k)];
      apexes[static_cast<std::size_t>(j)] = std::move(apex);
    }
    for (int j = 0; j < m; ++j) attempt.points.push_back(apexes[static_cast<std::size_t>(j)]);
    for (int j = 0; j < m; ++j) attempt.points.push_back(negate(apexes[static_cast<std::size_t>(j)]));
    try {
      HullResult h = hull(attempt, hopt);
      bool all_vertices = true;
      for (std::uint32_t v : h.point_vertex)
        if (v == kNoFace) all_vertices = false;
      if (all_vertices && h.facets.size() == static_cast<std::size_t>(8 * m)) return attempt;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::precision) throw;
    }
  }
  fail(ErrorKind::precision, "no pyramid height produced the predicted hull; the attachment "
                             "needs a smaller tolerance");
}

// ---------------------------------------------------------------------------
// the full pipeline

namespace {

bool exact_negation(const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != -b[i]) return false;
  return true;
}

// sigma must send every point to an exactly negated point
bool sigma_negates_points(const PointConfiguration& c) {
  if (!c.sigma) return false;
  for (const auto& p : c.points) {
    auto img = mat_apply(*c.sigma, p);
    bool found = false;
    for (const auto& q : c.points)
      if (dist2(img, q) <= c.epsilon * c.epsilon && exact_negation(p, q)) found = true;
    if (!found) return false;
  }
  return true;
}

std::size_t matrix_group_order(const std::vector<Mat>& gens, int dim, double eps,
                               std::size_t cap = 100000) {
  std::vector<Mat> els{Mat::identity(dim)};
  for (std::size_t head = 0; head < els.size(); ++head) {
    for (const Mat& g : gens) {
      Mat next = mat_mul(els[head], g);
      bool known = false;
      for (const Mat& e : els)
        if (max_abs_diff(e, next) <= eps) known = true;
      if (!known) {
        if (els.size() >= cap) fail(ErrorKind::capacity, "matrix group closure exceeds cap");
        els.push_back(std::move(next));
      }
    }
  }
  return els.size();
}

}  // namespace

CentsymResult centsym_model(const std::vector<CyclicFactor>& factors,
                            const CentsymOptions& opt) {
  // split the invariant factors: even-order factors carrying the involution
  // coordinate go through the orbit construction, the rest form the simplex
  // factor group
  std::vector<long> even_orders;
  std::vector<int> rest_orders;
  long expected_order = 1;
  for (const CyclicFactor& f : factors) {
    if (f.order < 1) fail(ErrorKind::input, "factor orders must be positive");
    expected_order *= f.order;
    if (f.sigma_power == 0) {
      if (f.order > 1) rest_orders.push_back(static_cast<int>(f.order));
      continue;
    }
    if (f.order % 2 != 0 || f.sigma_power != f.order / 2)
      fail(ErrorKind::input,
           "sigma must be an involution: nonzero sigma powers need order/2 in an even factor");
    even_orders.push_back(f.order);
  }
  if (even_orders.empty())
    fail(ErrorKind::input, "the involution is trivial; pick sigma_power = order/2 somewhere");

  CentsymResult res;
  res.group_order = static_cast<std::size_t>(expected_order);

  if (opt.route == "bipyramid") {
    if (even_orders.size() != 1 || !rest_orders.empty())
      fail(ErrorKind::input, "the bipyramid route needs a single cyclic factor");
    int m = static_cast<int>(even_orders[0] / 2);
    res.config = bipyramid_odd(m, opt.epsilon);
  } else if (opt.route != "auto") {
    fail(ErrorKind::input, "unknown route '" + opt.route + "'");
  } else {
    // orbit polytope per even factor, with a genericity retry loop
    std::vector<PointConfiguration> parts;
    for (std::size_t fi = 0; fi < even_orders.size(); ++fi) {
      int m = static_cast<int>(even_orders[fi] / 2);
      int samples = opt.samples > 0 ? opt.samples : (m == 1 ? 4 : 2);
      PointConfiguration part;
      bool ok = false;
      for (int attempt = 0; attempt < 64 && !ok; ++attempt) {
        std::uint64_t seed = hash_combine(opt.seed, hash_combine(fi, static_cast<std::uint64_t>(attempt)));
        auto s = sample_unit_sphere(4, samples, seed);
        try {
          part = cyclic_orbit_polytope(m, s, opt.epsilon);
          if (affine_rank(part.points, opt.epsilon) != 4) continue;
          ok = true;
          part.seed = seed;
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::input && e.kind() != ErrorKind::precision) throw;
        }
      }
      if (!ok) fail(ErrorKind::precision, "could not sample a generic orbit seed set");
      parts.push_back(std::move(part));
    }
    PointConfiguration combined = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) combined = cartesian_product(combined, parts[i]);
    if (!rest_orders.empty()) {
      PointConfiguration simplex = simplex_factor(rest_orders);
      combined = tensor_combine(combined, simplex);
      // after tensoring, sigma = sigma' (x) id
    }
    res.config = std::move(combined);
  }
  res.config.seed = opt.seed;

  // sigma diagnostics: distance from -I, exact negation on the points
  if (res.config.sigma) {
    Mat minus = Mat::identity(res.config.sigma->n);
    for (double& x : minus.a) x = -x;
    res.sigma_matrix_error = max_abs_diff(*res.config.sigma, minus);
  }
  res.sigma_exact_negation = sigma_negates_points(res.config);

  if (res.config.dim > opt.dim_cap) {
    // configuration-only: verify the action on the point set and the group
    // order through the matrices, skip hull and trim
    res.status = "configuration-only";
    std::size_t order = matrix_group_order(res.config.generators, res.config.dim,
                                           res.config.epsilon);
    if (order != res.group_order)
      fail(ErrorKind::internal, "matrix group order " + std::to_string(order) +
                                    " does not match the prescribed order " +
                                    std::to_string(res.group_order));
    // every generator must permute the points
    for (const Mat& g : res.config.generators) {
      for (const auto& p : res.config.points) {
        auto img = mat_apply(g, p);
        bool found = false;
        for (const auto& q : res.config.points)
          if (dist2(img, q) <= res.config.epsilon * res.config.epsilon) found = true;
        if (!found) fail(ErrorKind::internal, "a generator does not preserve the point set");
      }
    }
    return res;
  }

  HullOptions hopt;
  hopt.epsilon = res.config.epsilon;
  hopt.dim_cap = opt.dim_cap;
  res.hull = hull(res.config, hopt);

  // the prescribed group as lattice automorphisms
  PermGroup gamma = PermGroup::from_generators(res.hull->lattice, res.hull->generator_perms);
  if (gamma.order() != res.group_order)
    fail(ErrorKind::internal, "induced lattice action has order " + std::to_string(gamma.order()) +
                                  ", expected " + std::to_string(res.group_order));
  {
    PermGroup full = automorphisms(res.hull->lattice);
    res.hull_group_order = full.order();
  }
  res.broken = break_polytope(res.hull->lattice, gamma, opt.break_options);
  res.broken_report = verify_broken(*res.broken, opt.break_options);
  res.status = "verified";
  return res;
}

// ---------------------------------------------------------------------------
// serialization

nlohmann::ordered_json PointConfiguration::to_json() const {
  nlohmann::ordered_json j;
  j["dimension"] = dim;
  j["epsilon"] = epsilon;
  j["seed"] = seed;
  j["centrally-symmetric"] = centrally_symmetric;
  j["points"] = points;
  auto& gens = j["generators"] = nlohmann::ordered_json::array();
  for (const Mat& g : generators) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int r = 0; r < g.n; ++r) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (int c = 0; c < g.n; ++c) row.push_back(g.at(r, c));
      rows.push_back(std::move(row));
    }
    gens.push_back(std::move(rows));
  }
  if (sigma) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int r = 0; r < sigma->n; ++r) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (int c = 0; c < sigma->n; ++c) row.push_back(sigma->at(r, c));
      rows.push_back(std::move(row));
    }
    j["sigma"] = std::move(rows);
  } else {
    j["sigma"] = nullptr;
  }
  return j;
}

PointConfiguration PointConfiguration::from_json(const nlohmann::json& j) {
  PointConfiguration c;
  c.dim = j.at("dimension").get<int>();
  if (j.contains("epsilon")) c.epsilon = j.at("epsilon").get<double>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("centrally-symmetric")) c.centrally_symmetric = j.at("centrally-symmetric").get<bool>();
  for (const auto& p : j.at("points")) c.points.push_back(p.get<std::vector<double>>());
  auto read_mat = [&](const nlohmann::json& rows) {
    Mat m = Mat::zero(c.dim);
    int r = 0;
    for (const auto& row : rows) {
      int cc = 0;
      for (const auto& x : row) m.at(r, cc++) = x.get<double>();
      ++r;
    }
    return m;
  };
  if (j.contains("generators"))
    for (const auto& g : j.at("generators")) c.generators.push_back(read_mat(g));
  if (j.contains("sigma") && !j.at("sigma").is_null()) c.sigma = read_mat(j.at("sigma"));
  for (const auto& p : c.points)
    if (static_cast<int>(p.size()) != c.dim)
      fail(ErrorKind::input, "point dimension mismatch in configuration");
  return c;
}

namespace {

void format_coord(std::ostringstream& os, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  os << buf;
}

}  // namespace

std::string PointConfiguration::to_off() const {
  std::ostringstream os;
  os << "OFF\n" << points.size() << " 0 0\n";
  for (const auto& p : points) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i) os << ' ';
      format_coord(os, p[i]);
    }
    os << '\n';
  }
  return os.str();
}

std::string HullResult::to_off(const PointConfiguration& config) const {
  std::ostringstream os;
  os << "OFF\n" << config.points.size() << ' ' << facets.size() << " 0\n";
  for (const auto& p : config.points) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (i) os << ' ';
      format_coord(os, p[i]);
    }
    os << '\n';
  }
  for (const auto& f : facets) {
    os << f.size();
    for (std::uint32_t v : f) os << ' ' << v;
    os << '\n';
  }
  return os.str();
}

nlohmann::ordered_json HullResult::to_json(const PointConfiguration& config) const {
  nlohmann::ordered_json j;
  j["dimension"] = dim;
  j["points"] = config.points;
  j["vertices"] = vertex_points;
  j["facets"] = facets;
  j["lattice"] = lattice.to_json();
  return j;
}

nlohmann::ordered_json CentsymResult::to_json() const {
  nlohmann::ordered_json j;
  j["status"] = status;
  j["group-order"] = group_order;
  j["sigma-matrix-error"] = sigma_matrix_error;
  j["sigma-exact-negation"] = sigma_exact_negation;
  j["configuration"] = config.to_json();
  if (hull) {
    j["hull-facets"] = hull->facets.size();
    j["hull-group-order"] = hull_group_order;
  }
  if (broken_report) j["verification"] = broken_report->to_json();
  return j;
}

}  // namespace symbreak
