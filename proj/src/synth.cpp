#include "lsr/synth.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace lsr {

namespace {

constexpr double kPi = std::numbers::pi;

using Curve = std::function<Eigen::Vector2d(double)>;  // t in [0, 1]

// Evenly spaced arc-length positions along a parametric curve, shifted by a
// random phase in [0, 1) spacing. Points are evaluated on the exact curve
// so they lie on it to rounding.
std::vector<Eigen::Vector2d> sample_by_arclength(const Curve& curve, int count, bool closed,
                                                 Sampler& rng) {
  constexpr int kTable = 20000;
  std::vector<double> cum(kTable + 1, 0.0);
  Eigen::Vector2d prev = curve(0.0);
  for (int i = 1; i <= kTable; ++i) {
    const Eigen::Vector2d cur = curve(double(i) / kTable);
    cum[i] = cum[i - 1] + (cur - prev).norm();
    prev = cur;
  }
  const double total = cum.back();
  const double phase = rng.uniform();
  // Open arcs place points at the centers of count equal pieces.
  const double spacing = total / count;
  std::vector<Eigen::Vector2d> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    double s = (i + (closed ? phase : 0.5)) * spacing;
    s = std::min(s, total);
    const auto it = std::lower_bound(cum.begin(), cum.end(), s);
    const std::size_t hi = std::max<std::size_t>(1, it - cum.begin());
    const double seg = cum[hi] - cum[hi - 1];
    const double frac = seg > 0 ? (s - cum[hi - 1]) / seg : 0.0;
    out.push_back(curve((double(hi - 1) + frac) / kTable));
  }
  return out;
}

Curve polygon(std::vector<Eigen::Vector2d> verts) {
  return [verts](double t) {
    const std::size_t n = verts.size();
    double u = t * n;
    std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(u), n - 1);
    const double f = u - double(i);
    return Eigen::Vector2d(verts[i] + f * (verts[(i + 1) % n] - verts[i]));
  };
}

double point_segment_distance(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                              const Eigen::Vector2d& b) {
  const Eigen::Vector2d ab = b - a;
  const double t = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
  return (p - (a + t * ab)).norm();
}

std::vector<Eigen::Vector2d> triangle_vertices(const ShapeSpec& s) {
  std::vector<Eigen::Vector2d> v;
  for (int k = 0; k < 3; ++k) {
    const double th = kPi / 2 + 2 * kPi * k / 3;
    v.emplace_back(s.center.x() + s.radius * std::cos(th), s.center.y() + s.radius * std::sin(th));
  }
  return v;
}

std::vector<Eigen::Vector2d> square_vertices(const ShapeSpec& s) {
  const double h = s.radius;
  const double cx = s.center.x(), cy = s.center.y();
  return {{cx - h, cy - h}, {cx + h, cy - h}, {cx + h, cy + h}, {cx - h, cy + h}};
}

// Jar: surface of revolution about the z axis with a concave neck, capped
// top and bottom. Profile radius over normalized height t in [0, 1].
double jar_profile(double t) { return 11.0 + 4.0 * std::sin(kPi * (1.6 * t - 0.3)); }
constexpr double kJarBottom = 8.0;
constexpr double kJarHeight = 34.0;

// Bunny silhouette parts (100x100 domain).
const Eigen::Vector2d kFaceCenter{50.0, 42.0};
constexpr double kFaceRadius = 22.0;
const Eigen::Vector2d kHeadCenter{50.0, 52.0};
constexpr double kHeadRadius = 12.0;
const Eigen::Vector2d kEarCenterL{33.0, 64.0};
const Eigen::Vector2d kEarCenterR{67.0, 64.0};
constexpr double kEarA = 7.0, kEarB = 12.0;

Curve arc(Eigen::Vector2d c, double radius, double from, double to) {
  return [=](double t) {
    const double th = from + t * (to - from);
    return Eigen::Vector2d(c.x() + radius * std::cos(th), c.y() + radius * std::sin(th));
  };
}

Curve ellipse_arc(Eigen::Vector2d c, double a, double b, double from, double to) {
  return [=](double t) {
    const double th = from + t * (to - from);
    return Eigen::Vector2d(c.x() + a * std::cos(th), c.y() + b * std::sin(th));
  };
}

PointCloud sample_3d(const ShapeSpec& s, Sampler& rng) {
  std::vector<Eigen::Vector3d> pts;
  pts.reserve(s.count);
  const Eigen::Vector3d c = s.center;
  switch (s.kind) {
    case ShapeKind::sphere:
      while (static_cast<int>(pts.size()) < s.count) {
        const double z = 2.0 * rng.uniform() - 1.0;
        const double th = 2.0 * kPi * rng.uniform();
        const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
        pts.emplace_back(c + s.radius * Eigen::Vector3d(rho * std::cos(th), rho * std::sin(th), z));
      }
      break;
    case ShapeKind::torus: {
      const double big = s.radius, tube = s.radius2;
      while (static_cast<int>(pts.size()) < s.count) {
        const double u = 2.0 * kPi * rng.uniform();
        const double v = 2.0 * kPi * rng.uniform();
        // Area element is proportional to (R + r cos v).
        if (rng.uniform() * (big + tube) > big + tube * std::cos(v)) continue;
        const double ring = big + tube * std::cos(v);
        pts.emplace_back(c + Eigen::Vector3d(ring * std::cos(u), ring * std::sin(u),
                                             tube * std::sin(v)));
      }
      break;
    }
    case ShapeKind::jar: {
      // Area weights of lateral surface, bottom cap and top cap.
      constexpr int kRows = 2000;
      double lateral = 0.0;
      double max_ds = 0.0;
      for (int i = 0; i < kRows; ++i) {
        const double t = (i + 0.5) / kRows, dt = 1.0 / kRows;
        const double drdt = (jar_profile(t + 1e-6) - jar_profile(t - 1e-6)) / 2e-6;
        const double ds = jar_profile(t) * std::sqrt(kJarHeight * kJarHeight + drdt * drdt);
        lateral += 2 * kPi * ds * dt;
        max_ds = std::max(max_ds, ds);
      }
      const double r0 = jar_profile(0.0), r1 = jar_profile(1.0);
      const double bottom = kPi * r0 * r0, top = kPi * r1 * r1;
      const double total = lateral + bottom + top;
      while (static_cast<int>(pts.size()) < s.count) {
        const double pick = rng.uniform() * total;
        const double th = 2.0 * kPi * rng.uniform();
        if (pick < lateral) {
          const double t = rng.uniform();
          const double drdt = (jar_profile(t + 1e-6) - jar_profile(t - 1e-6)) / 2e-6;
          const double ds = jar_profile(t) * std::sqrt(kJarHeight * kJarHeight + drdt * drdt);
          if (rng.uniform() * max_ds > ds) continue;
          const double rho = jar_profile(t);
          pts.emplace_back(c.x() + rho * std::cos(th), c.y() + rho * std::sin(th),
                           kJarBottom + kJarHeight * t);
        } else {
          const bool is_bottom = pick < lateral + bottom;
          const double rad = (is_bottom ? r0 : r1) * std::sqrt(rng.uniform());
          pts.emplace_back(c.x() + rad * std::cos(th), c.y() + rad * std::sin(th),
                           is_bottom ? kJarBottom : kJarBottom + kJarHeight);
        }
      }
      break;
    }
    default:
      throw std::invalid_argument("not a 3D shape");
  }
  return PointCloud::from_points(pts);
}

}  // namespace

double Sampler::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double mag = std::sqrt(-2.0 * std::log(u1));
  spare_ = mag * std::sin(2.0 * kPi * u2);
  has_spare_ = true;
  return mag * std::cos(2.0 * kPi * u2);
}

ShapeKind parse_shape_kind(const std::string& name) {
  if (name == "circle") return ShapeKind::circle;
  if (name == "ellipse") return ShapeKind::ellipse;
  if (name == "triangle") return ShapeKind::triangle;
  if (name == "square_missing_corners" || name == "square") return ShapeKind::square_missing_corners;
  if (name == "kfold_circle" || name == "kfold") return ShapeKind::kfold_circle;
  if (name == "torus") return ShapeKind::torus;
  if (name == "sphere") return ShapeKind::sphere;
  if (name == "jar") return ShapeKind::jar;
  if (name == "bunny_face_density" || name == "bunny") return ShapeKind::bunny_face_density;
  throw std::invalid_argument("unknown shape kind '" + name + "'");
}

std::string to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::circle: return "circle";
    case ShapeKind::ellipse: return "ellipse";
    case ShapeKind::triangle: return "triangle";
    case ShapeKind::square_missing_corners: return "square_missing_corners";
    case ShapeKind::kfold_circle: return "kfold_circle";
    case ShapeKind::torus: return "torus";
    case ShapeKind::sphere: return "sphere";
    case ShapeKind::jar: return "jar";
    case ShapeKind::bunny_face_density: return "bunny_face_density";
  }
  return "unknown";
}

int ShapeSpec::dim() const {
  return kind == ShapeKind::torus || kind == ShapeKind::sphere || kind == ShapeKind::jar ? 3 : 2;
}

void ShapeSpec::validate() const {
  if (kind != ShapeKind::bunny_face_density && count < 3)
    throw std::invalid_argument("shape count must be >= 3");
  if (!(radius > 0.0)) throw std::invalid_argument("shape radius must be > 0");
  if ((kind == ShapeKind::ellipse || kind == ShapeKind::torus) && !(radius2 > 0.0))
    throw std::invalid_argument("second radius must be > 0");
  if (kind == ShapeKind::kfold_circle && folds < 1)
    throw std::invalid_argument("fold count must be >= 1");
  if (kind == ShapeKind::bunny_face_density && (n1 < 1 || n2 < 1 || n3 < 1))
    throw std::invalid_argument("bunny region counts must be >= 1");
}

ShapeSpec ShapeSpec::circle_fixture() {
  ShapeSpec s;
  s.kind = ShapeKind::circle;
  s.radius = 25.0;
  s.count = 200;
  return s;
}

ShapeSpec ShapeSpec::ellipse_fixture() {
  ShapeSpec s;
  s.kind = ShapeKind::ellipse;
  s.radius = 27.0;
  s.radius2 = 16.0;
  s.count = 100;
  return s;
}

ShapeSpec ShapeSpec::triangle_fixture() {
  ShapeSpec s;
  s.kind = ShapeKind::triangle;
  s.radius = 27.0;  // circumradius
  s.count = 150;
  return s;
}

ShapeSpec ShapeSpec::square_fixture() {
  ShapeSpec s;
  s.kind = ShapeKind::square_missing_corners;
  s.radius = 20.0;  // half side
  s.count = 80;
  s.corner_gap = 2.0;
  return s;
}

ShapeSpec ShapeSpec::five_fold_fixture() {
  ShapeSpec s;
  s.kind = ShapeKind::kfold_circle;
  s.radius = 22.0;
  s.folds = 5;
  s.count = 200;
  return s;
}

ShapeSpec ShapeSpec::three_fold_fixture() {
  ShapeSpec s = five_fold_fixture();
  s.folds = 3;
  return s;
}

ShapeSpec ShapeSpec::torus_fixture() {
  ShapeSpec s;
  s.kind = ShapeKind::torus;
  s.center = {25.0, 25.0, 25.0};
  s.radius = 12.0;
  s.radius2 = 5.0;
  s.count = 2000;
  return s;
}

ShapeSpec ShapeSpec::jar_fixture() {
  ShapeSpec s;
  s.kind = ShapeKind::jar;
  s.center = {25.0, 25.0, 0.0};
  s.count = 2100;
  return s;
}

double kfold_radius(const ShapeSpec& spec, double theta) {
  const double amp = spec.amplitude >= 0.0 ? spec.amplitude : 0.3 * spec.radius;
  return spec.radius + amp * std::cos(spec.folds * theta);
}

PointCloud sample_shape(const ShapeSpec& spec) {
  spec.validate();
  if (spec.kind == ShapeKind::bunny_face_density)
    return bunny_face_cloud(spec.n1, spec.n2, spec.n3, spec.seed);
  Sampler rng(spec.seed);
  if (spec.dim() == 3) return sample_3d(spec, rng);

  const Eigen::Vector2d c = spec.center.head<2>();
  std::vector<Eigen::Vector2d> pts;
  switch (spec.kind) {
    case ShapeKind::circle:
      pts = sample_by_arclength(arc(c, spec.radius, 0.0, 2 * kPi), spec.count, true, rng);
      break;
    case ShapeKind::ellipse:
      pts = sample_by_arclength(ellipse_arc(c, spec.radius, spec.radius2, 0.0, 2 * kPi),
                                spec.count, true, rng);
      break;
    case ShapeKind::kfold_circle: {
      Curve curve = [&spec, c](double t) {
        const double th = 2 * kPi * t;
        const double rho = kfold_radius(spec, th);
        return Eigen::Vector2d(c.x() + rho * std::cos(th), c.y() + rho * std::sin(th));
      };
      pts = sample_by_arclength(curve, spec.count, true, rng);
      break;
    }
    case ShapeKind::triangle:
      pts = sample_by_arclength(polygon(triangle_vertices(spec)), spec.count, true, rng);
      break;
    case ShapeKind::square_missing_corners: {
      // Sample each side with the corner_gap trimmed from both ends.
      const auto v = square_vertices(spec);
      const double side = 2.0 * spec.radius;
      const double kept = side - 2.0 * spec.corner_gap;
      if (!(kept > 0.0)) throw std::invalid_argument("corner gap too large for square");
      for (int k = 0; k < 4; ++k) {
        const int n = spec.count / 4 + (k < spec.count % 4 ? 1 : 0);
        const Eigen::Vector2d a = v[k], b = v[(k + 1) % 4];
        const Eigen::Vector2d dir = (b - a) / side;
        const Eigen::Vector2d from = a + spec.corner_gap * dir;
        const Eigen::Vector2d to = b - spec.corner_gap * dir;
        auto segment = [from, to](double t) { return Eigen::Vector2d(from + t * (to - from)); };
        auto part = sample_by_arclength(segment, n, false, rng);
        pts.insert(pts.end(), part.begin(), part.end());
      }
      break;
    }
    default:
      throw std::invalid_argument("unsupported 2D shape");
  }
  return PointCloud::from_points(pts);
}

PointCloud bunny_face_cloud(int n1, int n2, int n3, std::uint64_t seed) {
  if (n1 < 1 || n2 < 1 || n3 < 1) throw std::invalid_argument("bunny region counts must be >= 1");
  Sampler rng(seed);
  const double deg = kPi / 180.0;
  std::vector<Eigen::Vector2d> pts;
  auto add = [&pts](const std::vector<Eigen::Vector2d>& part) {
    pts.insert(pts.end(), part.begin(), part.end());
  };
  add(sample_by_arclength(arc(kFaceCenter, kFaceRadius, 150 * deg, 390 * deg), n1, false, rng));
  add(sample_by_arclength(arc(kHeadCenter, kHeadRadius, 40 * deg, 140 * deg), n2, false, rng));
  add(sample_by_arclength(ellipse_arc(kEarCenterL, kEarA, kEarB, -15 * deg, 230 * deg), n3,
                          false, rng));
  add(sample_by_arclength(ellipse_arc(kEarCenterR, kEarA, kEarB, 195 * deg, -50 * deg), n3,
                          false, rng));
  return PointCloud::from_points(pts);
}

PointCloud add_noise(const PointCloud& cloud, double sigma, std::uint64_t seed, const Grid& grid) {
  if (!(sigma >= 0.0)) throw std::invalid_argument("noise sigma must be >= 0");
  if (cloud.dim() != grid.axes())
    throw std::invalid_argument("point cloud dimension does not match grid");
  if (sigma == 0.0) return cloud;
  Sampler rng(seed);
  Eigen::MatrixXd m = cloud.matrix();
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index a = 0; a < m.rows(); ++a)
      m(a, j) = std::clamp(m(a, j) + sigma * rng.gaussian(), 0.0,
                           double(grid.dim(static_cast<int>(a)) - 1));
  return PointCloud(std::move(m));
}

double shape_residual(const ShapeSpec& spec, const Eigen::VectorXd& x) {
  const Eigen::Vector3d c = spec.center;
  switch (spec.kind) {
    case ShapeKind::circle:
      return std::abs((x - c.head(2)).norm() - spec.radius);
    case ShapeKind::ellipse: {
      const double u = (x[0] - c.x()) / spec.radius, v = (x[1] - c.y()) / spec.radius2;
      return std::abs(u * u + v * v - 1.0);
    }
    case ShapeKind::kfold_circle: {
      const Eigen::Vector2d rel = x.head(2) - c.head(2);
      return std::abs(rel.norm() - kfold_radius(spec, std::atan2(rel.y(), rel.x())));
    }
    case ShapeKind::triangle:
    case ShapeKind::square_missing_corners: {
      const auto v = spec.kind == ShapeKind::triangle ? triangle_vertices(spec)
                                                      : square_vertices(spec);
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < v.size(); ++k)
        best = std::min(best, point_segment_distance(x.head(2), v[k], v[(k + 1) % v.size()]));
      return best;
    }
    case ShapeKind::sphere:
      return std::abs((x - c).norm() - spec.radius);
    case ShapeKind::torus: {
      const Eigen::Vector3d rel = x - c;
      const double ring = std::hypot(rel.x(), rel.y()) - spec.radius;
      return std::abs(ring * ring + rel.z() * rel.z() - spec.radius2 * spec.radius2);
    }
    case ShapeKind::jar: {
      const double t = (x[2] - kJarBottom) / kJarHeight;
      const double rho = std::hypot(x[0] - c.x(), x[1] - c.y());
      double best = std::abs(rho - jar_profile(std::clamp(t, 0.0, 1.0)));
      if (std::abs(t) < 1e-12) best = std::min(best, rho <= jar_profile(0.0) ? 0.0 : best);
      if (std::abs(t - 1.0) < 1e-12) best = std::min(best, rho <= jar_profile(1.0) ? 0.0 : best);
      return std::abs(t) < 1e-12 || std::abs(t - 1.0) < 1e-12 || (t > 0.0 && t < 1.0)
                 ? best
                 : std::numeric_limits<double>::infinity();
    }
    case ShapeKind::bunny_face_density: {
      const Eigen::Vector2d p = x.head(2);
      auto ell = [&p](const Eigen::Vector2d& ec) {
        const double u = (p.x() - ec.x()) / kEarA, v = (p.y() - ec.y()) / kEarB;
        return std::abs(u * u + v * v - 1.0);
      };
      return std::min({std::abs((p - kFaceCenter).norm() - kFaceRadius),
                       std::abs((p - kHeadCenter).norm() - kHeadRadius), ell(kEarCenterL),
                       ell(kEarCenterR)});
    }
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace lsr
