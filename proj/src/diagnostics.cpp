#include "lsr/diagnostics.hpp"

#include <cmath>
#include <numbers>

namespace lsr {

namespace {

constexpr double kPi = std::numbers::pi;

ScalarField residual_norm(const VectorField& grad_phi, const VectorField& lambda_prev, double r) {
  VectorField v = r * grad_phi;
  v -= lambda_prev;
  return v.norm();
}

}  // namespace

ScalarField q_field(const ScalarField& phi, const VectorField& grad_phi,
                    const VectorField& lambda_prev, const ScalarField& d, double eps, double r) {
  require_same_grid(phi.grid(), d.grid());
  const ScalarField vn = residual_norm(grad_phi, lambda_prev, r);
  const auto& p = phi.values();
  return ScalarField(phi.grid(), p * kPi * vn.values() * eps * eps - d.values() * eps +
                                     p.cube() * kPi * vn.values());
}

ScalarField discriminant_field(const ScalarField& phi, const VectorField& grad_phi,
                               const VectorField& lambda_prev, const ScalarField& d, double r) {
  require_same_grid(phi.grid(), d.grid());
  const ScalarField vn = residual_norm(grad_phi, lambda_prev, r);
  return ScalarField(phi.grid(), d.values().square() - 4.0 * phi.values().square().square() *
                                                           kPi * kPi * vn.values().square());
}

RBounds r_bounds(const ScalarField& phi, const VectorField& grad_phi,
                 const VectorField& lambda_prev, const ScalarField& d, double grad_floor) {
  require_same_grid(phi.grid(), d.grid());
  const Grid& g = phi.grid();
  RBounds b{ScalarField(g), ScalarField(g), ScalarField(g), Mask(g, false)};
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    double gg = 0.0, ll = 0.0, lg = 0.0;
    for (int a = 0; a < g.axes(); ++a) {
      gg += grad_phi[a][i] * grad_phi[a][i];
      ll += lambda_prev[a][i] * lambda_prev[a][i];
      lg += lambda_prev[a][i] * grad_phi[a][i];
    }
    const double gn = std::sqrt(gg);
    if (!(gn > grad_floor)) {
      b.alpha[i] = ll;
      continue;
    }
    const double proj = lg / gn;
    b.alpha[i] = ll - proj * proj;
    const double p2 = phi[i] * phi[i];
    if (p2 == 0.0) continue;
    const double reach = d[i] * d[i] / (4.0 * p2 * p2 * kPi * kPi);
    if (reach < b.alpha[i]) continue;
    const double root = std::sqrt(std::max(0.0, reach - b.alpha[i]));
    b.r_lower[i] = (proj - root) / gn;
    b.r_upper[i] = (proj + root) / gn;
    b.valid[i] = true;
  }
  return b;
}

Mask active_region(const ScalarField& phi, const VectorField& lambda, const ScalarField& d,
                   const AlmParams& params) {
  const VectorField p = p_subproblem(phi, lambda, d, params);
  const ScalarField pn = p.norm();
  return Mask(phi.grid(), (pn.values() > 0.0) || (phi.values() < 0.0));
}

Mask active_region(const AlmState& state, const ScalarField& d, const AlmParams& params) {
  return active_region(state.phi, state.lambda, d, params);
}

Mask thin_band(const ScalarField& phi, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("band width eps must be > 0");
  const double h = 2.0 * eps / std::sqrt(3.0);
  return Mask(phi.grid(), phi.values().abs() < h);
}

DiagnosticBundle diagnose(const AlmSnapshot& s) {
  const double eps = s.params.eps.epsilon, r = s.params.r;
  RBounds rb = r_bounds(s.phi, s.grad_phi, s.lambda_prev, s.d);
  return DiagnosticBundle{q_field(s.phi, s.grad_phi, s.lambda_prev, s.d, eps, r),
                          discriminant_field(s.phi, s.grad_phi, s.lambda_prev, s.d, r),
                          std::move(rb.alpha),
                          std::move(rb.r_lower),
                          std::move(rb.r_upper),
                          std::move(rb.valid),
                          active_region(s.phi, s.lambda_prev, s.d, s.params),
                          thin_band(s.phi, eps)};
}

}  // namespace lsr
