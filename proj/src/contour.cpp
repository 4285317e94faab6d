#include "lsr/contour.hpp"

#include "lsr/errors.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <unordered_map>

namespace lsr {

namespace {

constexpr int kTriTable[256][16] = {
#include "marching_cubes_table.inc"
};

constexpr int kCubeCorner[8][3] = {{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {0, 1, 0},
                                   {0, 0, 1}, {1, 0, 1}, {1, 1, 1}, {0, 1, 1}};
constexpr int kCubeEdge[12][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {4, 5}, {5, 6},
                                  {6, 7}, {7, 4}, {0, 4}, {1, 5}, {2, 6}, {3, 7}};

constexpr int kSquareCorner[4][2] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
constexpr int kSquareEdge[4][2] = {{0, 1}, {1, 2}, {2, 3}, {3, 0}};

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

// Assigns one vertex per crossed grid edge.
class VertexPool {
 public:
  VertexPool(const ScalarField& phi, ZeroSet& out) : phi_(phi), out_(out) {}

  int vertex(const std::array<int, 3>& a, const std::array<int, 3>& b) {
    const Grid& g = phi_.grid();
    const Eigen::Index ia = g.index(a[0], a[1], a[2]);
    const Eigen::Index ib = g.index(b[0], b[1], b[2]);
    int axis = 0;
    while (a[axis] == b[axis]) ++axis;
    const Eigen::Index lo = std::min(ia, ib);
    const long long key = static_cast<long long>(lo) * 3 + axis;
    const auto it = ids_.find(key);
    if (it != ids_.end()) return it->second;

    const double fa = phi_[ia], fb = phi_[ib];
    const double t = fa == fb ? 0.5 : fa / (fa - fb);
    Eigen::Vector3d pa(a[0], a[1], a[2]), pb(b[0], b[1], b[2]);
    const int id = static_cast<int>(out_.vertices.size());
    out_.vertices.push_back(pa + t * (pb - pa));
    ids_.emplace(key, id);
    return id;
  }

 private:
  const ScalarField& phi_;
  ZeroSet& out_;
  std::unordered_map<long long, int> ids_;
};

void marching_squares(const ScalarField& phi, ZeroSet& out) {
  const Grid& g = phi.grid();
  VertexPool pool(phi, out);
  for (int j = 0; j + 1 < g.dim(1); ++j)
    for (int i = 0; i + 1 < g.dim(0); ++i) {
      double v[4];
      int code = 0;
      for (int c = 0; c < 4; ++c) {
        v[c] = phi(i + kSquareCorner[c][0], j + kSquareCorner[c][1]);
        if (v[c] < 0.0) code |= 1 << c;
      }
      if (code == 0 || code == 15) continue;
      auto vert = [&](int e) {
        const int* a = kSquareCorner[kSquareEdge[e][0]];
        const int* b = kSquareCorner[kSquareEdge[e][1]];
        return pool.vertex({i + a[0], j + a[1], 0}, {i + b[0], j + b[1], 0});
      };
      auto seg = [&](int e0, int e1) { out.segments.push_back({vert(e0), vert(e1)}); };
      const bool center_inside = (v[0] + v[1] + v[2] + v[3]) < 0.0;
      switch (code) {
        case 1: case 14: seg(3, 0); break;
        case 2: case 13: seg(0, 1); break;
        case 3: case 12: seg(3, 1); break;
        case 4: case 11: seg(1, 2); break;
        case 6: case 9: seg(0, 2); break;
        case 7: case 8: seg(2, 3); break;
        case 5:
          if (center_inside) { seg(0, 1); seg(2, 3); } else { seg(3, 0); seg(1, 2); }
          break;
        case 10:
          if (center_inside) { seg(3, 0); seg(1, 2); } else { seg(0, 1); seg(2, 3); }
          break;
        default: break;
      }
    }
}

void marching_cubes(const ScalarField& phi, ZeroSet& out) {
  const Grid& g = phi.grid();
  VertexPool pool(phi, out);
  for (int k = 0; k + 1 < g.dim(2); ++k)
    for (int j = 0; j + 1 < g.dim(1); ++j)
      for (int i = 0; i + 1 < g.dim(0); ++i) {
        int code = 0;
        for (int c = 0; c < 8; ++c)
          if (phi(i + kCubeCorner[c][0], j + kCubeCorner[c][1], k + kCubeCorner[c][2]) < 0.0)
            code |= 1 << c;
        if (code == 0 || code == 255) continue;
        const int* row = kTriTable[code];
        for (int t = 0; row[t] != -1; t += 3) {
          std::array<int, 3> tri{};
          for (int m = 0; m < 3; ++m) {
            const int* a = kCubeCorner[kCubeEdge[row[t + m]][0]];
            const int* b = kCubeCorner[kCubeEdge[row[t + m]][1]];
            tri[m] = pool.vertex({i + a[0], j + a[1], k + a[2]}, {i + b[0], j + b[1], k + b[2]});
          }
          out.triangles.push_back(tri);
        }
      }
}

double directed_max_min(const Eigen::MatrixXd& from, const Eigen::MatrixXd& to) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < from.cols(); ++i) {
    const double best = (to.colwise() - from.col(i)).colwise().squaredNorm().minCoeff();
    worst = std::max(worst, best);
  }
  return std::sqrt(worst);
}

}  // namespace

PointCloud ZeroSet::vertex_cloud() const {
  Eigen::MatrixXd m(dim, static_cast<Eigen::Index>(vertices.size()));
  for (std::size_t i = 0; i < vertices.size(); ++i) m.col(i) = vertices[i].head(dim);
  return PointCloud(std::move(m));
}

ZeroSet extract_zero_set(const ScalarField& phi) {
  ZeroSet z;
  z.dim = phi.grid().axes();
  if (z.dim == 2)
    marching_squares(phi, z);
  else
    marching_cubes(phi, z);
  return z;
}

int connected_components(const ZeroSet& z) {
  UnionFind uf(z.vertices.size());
  std::vector<char> used(z.vertices.size(), 0);
  for (const auto& s : z.segments) {
    uf.unite(s[0], s[1]);
    used[s[0]] = used[s[1]] = 1;
  }
  for (const auto& t : z.triangles) {
    uf.unite(t[0], t[1]);
    uf.unite(t[1], t[2]);
    used[t[0]] = used[t[1]] = used[t[2]] = 1;
  }
  int count = 0;
  for (std::size_t v = 0; v < z.vertices.size(); ++v)
    if (used[v] && uf.find(v) == v) ++count;
  return count;
}

long euler_characteristic(const ZeroSet& z) {
  std::map<std::pair<int, int>, int> edges;
  std::vector<char> used(z.vertices.size(), 0);
  for (const auto& t : z.triangles)
    for (int m = 0; m < 3; ++m) {
      const int a = t[m], b = t[(m + 1) % 3];
      edges[{std::min(a, b), std::max(a, b)}]++;
      used[a] = 1;
    }
  const long v = std::count(used.begin(), used.end(), 1);
  return v - static_cast<long>(edges.size()) + static_cast<long>(z.triangles.size());
}

bool is_watertight(const ZeroSet& z) {
  if (z.empty()) return false;
  if (z.dim == 2) {
    std::vector<int> degree(z.vertices.size(), 0);
    for (const auto& s : z.segments) {
      degree[s[0]]++;
      degree[s[1]]++;
    }
    return std::all_of(degree.begin(), degree.end(), [](int d) { return d == 2; });
  }
  std::map<std::pair<int, int>, int> edges;
  for (const auto& t : z.triangles)
    for (int m = 0; m < 3; ++m) {
      const int a = t[m], b = t[(m + 1) % 3];
      edges[{std::min(a, b), std::max(a, b)}]++;
    }
  return std::all_of(edges.begin(), edges.end(), [](const auto& e) { return e.second == 2; });
}

double hausdorff(const PointCloud& a, const PointCloud& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("hausdorff: empty point set");
  if (a.dim() != b.dim()) throw std::invalid_argument("hausdorff: dimension mismatch");
  return std::max(directed_max_min(a.matrix(), b.matrix()),
                  directed_max_min(b.matrix(), a.matrix()));
}

double hausdorff_to_cloud(const ZeroSet& z, const PointCloud& cloud) {
  if (z.empty()) throw NumericalError("zero set is empty: the reconstruction vanished");
  return hausdorff(z.vertex_cloud(), cloud);
}

double enclosed_measure(const ScalarField& phi) {
  return static_cast<double>((phi.values() < 0.0).count());
}

}  // namespace lsr
