#include "lsr/alm.hpp"
#include "lsr/diagnostics.hpp"
#include "lsr/distance.hpp"
#include "lsr/synth.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace lsr;
using std::numbers::pi;

namespace {

Eigen::VectorXd pt(double x, double y) {
  Eigen::VectorXd c(2);
  c << x, y;
  return c;
}

// One-node fields on a 4x4 grid (only node 0 is inspected).
struct Node {
  ScalarField phi, d;
  VectorField grad, lambda;
  explicit Node(double phi0, double d0, Eigen::Vector2d g0, Eigen::Vector2d l0)
      : phi(Grid(4, 4), phi0), d(Grid(4, 4), d0), grad(Grid(4, 4)), lambda(Grid(4, 4)) {
    for (int a = 0; a < 2; ++a) {
      grad[a] = ScalarField(Grid(4, 4), g0[a]);
      lambda[a] = ScalarField(Grid(4, 4), l0[a]);
    }
  }
};


}  // namespace

TEST_CASE("q field signs") {
  const Node a(1.5, 0.0, {0.3, -0.4}, {0.1, 0.2});
  CHECK(q_field(a.phi, a.grad, a.lambda, a.d, 1.0, 1.5)[0] > 0.0);
  const Node b(0.0, 2.0, {0.3, -0.4}, {0.1, 0.2});
  CHECK(q_field(b.phi, b.grad, b.lambda, b.d, 0.7, 1.5)[0] == doctest::Approx(-2.0 * 0.7));
}

TEST_CASE("q field formula") {
  support::Gen gen(81);
  const Grid g(9, 7);
  const ScalarField phi = gen.field(g, -3, 3), d = gen.field(g, 0, 4);
  const VectorField gr = gen.vfield(g), lam = gen.vfield(g);
  const double eps = 0.8, r = 1.7;
  const ScalarField q = q_field(phi, gr, lam, d, eps, r);
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const double v = std::hypot(r * gr[0][i] - lam[0][i], r * gr[1][i] - lam[1][i]);
    const double f = phi[i];
    CHECK(q[i] == doctest::Approx(f * pi * v * eps * eps - d[i] * eps + f * f * f * pi * v));
  }
}

// Known failure: with v = r grad(phi) - lambda, shrinkage zeroes p exactly
// when pi |v| (eps^2 + phi^2) <= d eps. The q field carries an extra factor
// of phi, so its sign does not decide the shrinkage outcome.
TEST_CASE("positive q implies zero shrinkage" * doctest::should_fail()) {
  support::Gen gen(82);
  const Grid g(10, 5);
  AlmParams prm;
  const ScalarField phi = gen.field(g, -3, 3), d = gen.field(g, 0, 4);
  const VectorField lam = gen.vfield(g);
  const VectorField gr = gradient(phi);
  const ScalarField q = q_field(phi, gr, lam, d, prm.eps.epsilon, prm.r);
  const ScalarField pn = p_subproblem(phi, lam, d, prm).norm();
  int checked = 0;
  for (Eigen::Index i = 0; i < g.size(); ++i)
    if (q[i] > 0) {
      ++checked;
      CHECK(pn[i] == 0.0);
    }
  CHECK(checked > 0);
}

TEST_CASE("shrinkage zeroes p exactly where the weight dominates the residual") {
  support::Gen gen(83);
  const Grid g(20, 20);
  AlmParams prm;
  prm.r = 1.2;
  prm.eps = 0.9;
  const ScalarField phi = gen.field(g, -2, 2), d = gen.field(g, 0, 3);
  const VectorField lam = gen.vfield(g, -0.5, 0.5);
  const VectorField gr = gradient(phi);
  const ScalarField pn = p_subproblem(phi, lam, d, prm).norm();
  const double e = prm.eps.epsilon;
  int zeros = 0;
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const double v = std::hypot(prm.r * gr[0][i] - lam[0][i], prm.r * gr[1][i] - lam[1][i]);
    const double test = pi * v * (e * e + phi[i] * phi[i]) - d[i] * e;
    if (std::abs(test) < 1e-9) continue;
    CHECK((pn[i] == 0.0) == (test < 0.0));
    zeros += pn[i] == 0.0;
  }
  CHECK(zeros > 0);
  CHECK(zeros < g.size());
}

TEST_CASE("discriminant") {
  const Node a(1.0, 0.0, {0.3, -0.4}, {0.1, 0.2});
  CHECK(discriminant_field(a.phi, a.grad, a.lambda, a.d, 1.5)[0] < 0.0);
  const Node b(0.0, 2.5, {0.3, -0.4}, {0.1, 0.2});
  CHECK(discriminant_field(b.phi, b.grad, b.lambda, b.d, 1.5)[0] == doctest::Approx(6.25));
  support::Gen gen(84);
  const Grid g(8, 8);
  const ScalarField phi = gen.field(g, -2, 2), d = gen.field(g, 0, 4);
  const VectorField gr = gen.vfield(g), lam = gen.vfield(g);
  const ScalarField disc = discriminant_field(phi, gr, lam, d, 1.3);
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const double v2 = std::pow(1.3 * gr[0][i] - lam[0][i], 2) + std::pow(1.3 * gr[1][i] - lam[1][i], 2);
    CHECK(disc[i] == doctest::Approx(d[i] * d[i] - 4 * std::pow(phi[i], 4) * pi * pi * v2));
  }
}

TEST_CASE("discriminant sign matches a root search in eps") {
  // q(eps) = pi |v| phi eps^2 - d eps + pi |v| phi^3 is positive at eps = 0
  // for phi > 0, so a real root exists iff q dips to zero on eps > 0.
  support::Gen gen(85);
  const double r = 1.5;
  int checked = 0;
  while (checked < 200) {
    const Node n(gen.uniform(0.3, 1.5), gen.uniform(0, 3),
                 {gen.uniform(-1, 1), gen.uniform(-1, 1)}, {gen.uniform(-1, 1), gen.uniform(-1, 1)});
    const double disc = discriminant_field(n.phi, n.grad, n.lambda, n.d, r)[0];
    const double f = n.phi[0], d = n.d[0];
    const double v = std::hypot(r * n.grad[0][0] - n.lambda[0][0], r * n.grad[1][0] - n.lambda[1][0]);
    if (std::abs(disc) < 1e-3 * (d * d + 1e-3)) continue;
    const double vertex = d / (2 * pi * v * f);
    if (disc >= 0 && vertex > 9) continue;  // minimum beyond the scanned range
    double qmin = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 100000; ++k) {
      const double e = k * 1e-4;
      qmin = std::min(qmin, pi * v * f * e * e - d * e + pi * v * f * f * f);
    }
    CHECK((disc >= 0) == (qmin <= 0));
    ++checked;
  }
}

TEST_CASE("projection residual") {
  const Node par(1.0, 1.0, {0.6, 0.8}, {1.2, 1.6});
  CHECK(std::abs(r_bounds(par.phi, par.grad, par.lambda, par.d).alpha[0]) <= 1e-12);
  const Node perp(1.0, 1.0, {0.6, 0.8}, {0.8, -0.6});
  CHECK(r_bounds(perp.phi, perp.grad, perp.lambda, perp.d).alpha[0] == doctest::Approx(1.0));
}

TEST_CASE("penalty bounds bracket the nonnegative discriminant") {
  support::Gen gen(86);
  int checked = 0, tries = 0;
  while (checked < 100 && ++tries < 100000) {
    const Node n(gen.uniform(-1.5, 1.5), gen.uniform(0, 4),
                 {gen.uniform(-1, 1), gen.uniform(-1, 1)}, {gen.uniform(-2, 2), gen.uniform(-2, 2)});
    const RBounds b = r_bounds(n.phi, n.grad, n.lambda, n.d);
    if (!b.valid[0]) continue;
    const double lo = std::max(0.0, b.r_lower[0]), hi = b.r_upper[0];
    if (!(hi > lo + 1e-6)) continue;
    CHECK(b.r_upper[0] >= b.r_lower[0]);
    const double inside = lo + gen.uniform(0.05, 0.95) * (hi - lo);
    CHECK(discriminant_field(n.phi, n.grad, n.lambda, n.d, inside)[0] >= -1e-9);
    const double above = hi * (1.0 + gen.uniform(0.05, 1.0)) + 1e-3;
    CHECK(discriminant_field(n.phi, n.grad, n.lambda, n.d, above)[0] < 0.0);
    if (b.r_lower[0] > 1e-3) {
      const double below = b.r_lower[0] * gen.uniform(0.0, 0.95);
      CHECK(discriminant_field(n.phi, n.grad, n.lambda, n.d, below)[0] < 0.0);
    }
    ++checked;
  }
  CHECK(checked == 100);
}

TEST_CASE("penalty bounds are undefined on flats and at the zero level") {
  const Node flat(1.0, 1.0, {0.0, 0.0}, {0.3, 0.1});
  CHECK_FALSE(r_bounds(flat.phi, flat.grad, flat.lambda, flat.d).valid[0]);
  const Node zero(0.0, 1.0, {0.6, 0.8}, {0.3, 0.1});
  CHECK_FALSE(r_bounds(zero.phi, zero.grad, zero.lambda, zero.d).valid[0]);
  const Node far(5.0, 0.1, {0.6, 0.8}, {3.0, -4.0});
  CHECK_FALSE(r_bounds(far.phi, far.grad, far.lambda, far.d).valid[0]);
}

TEST_CASE("every node is active without weight") {
  support::Gen gen(87);
  const Grid g(12, 12);
  const ScalarField phi = gen.field(g, -2, 2);
  const VectorField lam = gen.vfield(g);
  // Flats give q = 0 only where grad phi = lambda / r, which random data avoids.
  CHECK(fraction(active_region(phi, lam, ScalarField(g), AlmParams{})) == 1.0);
}

TEST_CASE("thin band") {
  const Grid g(4, 4);
  ScalarField phi(g, 5.0);
  phi[0] = 0.0;
  phi[1] = 2.0 / std::sqrt(3.0);
  phi[2] = -2.0 / std::sqrt(3.0) + 1e-9;
  const Mask m = thin_band(phi, 1.0);
  CHECK(m[0]);
  CHECK_FALSE(m[1]);
  CHECK(m[2]);
  CHECK(count(m) == 2);
  CHECK_THROWS_AS(thin_band(phi, 0.0), std::invalid_argument);

  const Grid big(64, 64);
  const ScalarField sd = init_sphere(big, pt(32, 32), 15);
  Eigen::Index prev = -1;
  for (double e : {0.5, 1.0, 2.0}) {
    const Eigen::Index c = count(thin_band(sd, e));
    CHECK(c > prev);
    prev = c;
  }
}

TEST_CASE("source-term profile peaks at eps over root three") {
  for (double e : {0.5, 1.0, 2.0}) {
    auto h = [e](double x) { return 2 * e * x / (pi * std::pow(e * e + x * x, 2)); };
    double best = -1, arg = 0;
    double worst = 1, argmin = 0;
    for (double x = -10 * e; x <= 10 * e; x += 1e-5) {
      if (h(x) > best) best = h(x), arg = x;
      if (h(x) < worst) worst = h(x), argmin = x;
    }
    CHECK(arg == doctest::Approx(e / std::sqrt(3.0)).epsilon(1e-4));
    CHECK(argmin == doctest::Approx(-e / std::sqrt(3.0)).epsilon(1e-4));
  }
}

TEST_CASE("diagnostics along a five-fold run") {
  const Grid g(100, 100);
  const ScalarField d = distance_field(sample_shape(ShapeSpec::five_fold_fixture()), g);
  std::vector<double> active;
  run_alm(d, init_sphere(g, pt(50, 50), 30), AlmParams{}, [&](const AlmSnapshot& s) {
    const DiagnosticBundle b = diagnose(s);
    active.push_back(fraction(b.active_mask));
    const ScalarField lam2 = s.lambda_prev.norm();
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      CHECK(b.alpha[i] >= -1e-12);
      CHECK(b.alpha[i] <= lam2[i] * lam2[i] + 1e-12);
      if (b.bounds_valid[i]) CHECK(b.r_upper[i] >= b.r_lower[i]);
      if (s.phi[i] < 0) CHECK(b.active_mask[i]);
      CHECK(b.band_mask[i] == (std::abs(s.phi[i]) < 2.0 / std::sqrt(3.0)));
    }
  });
  MESSAGE("active fraction: iteration 2 " << active.at(1) << ", final " << active.back());
  CHECK(active.size() > 2);
}

// Known failure: outside the zero set phi grows linearly while the weight
// decays like 1 / phi^2, so shrinkage keeps p nonzero nearly everywhere and
// the active fraction climbs toward 1 as the run settles.
TEST_CASE("active fraction shrinks over a five-fold run" * doctest::should_fail()) {
  const Grid g(100, 100);
  const ScalarField d = distance_field(sample_shape(ShapeSpec::five_fold_fixture()), g);
  std::vector<double> active;
  run_alm(d, init_sphere(g, pt(50, 50), 30), AlmParams{},
          [&](const AlmSnapshot& s) { active.push_back(fraction(diagnose(s).active_mask)); });
  CHECK(active.back() < active.at(1));
}
