#pragma once

// Nodewise diagnostics describing where the point-cloud distance acts on the
// augmented Lagrangian update, computed from solver snapshots.
//
// With v = r grad(phi) - lambda_prev:
//   q     = phi pi |v| eps^2 - d eps + phi^3 pi |v|
//   disc  = d^2 - 4 phi^4 pi^2 |v|^2
//   alpha = |lambda_prev|^2 - (lambda_prev . grad phi)^2 / |grad phi|^2

#include "lsr/alm.hpp"
#include "lsr/grid.hpp"

namespace lsr {

using Mask = Field<bool>;

inline Eigen::Index count(const Mask& m) { return m.values().count(); }
inline double fraction(const Mask& m) {
  return static_cast<double>(count(m)) / static_cast<double>(m.size());
}

ScalarField q_field(const ScalarField& phi, const VectorField& grad_phi,
                    const VectorField& lambda_prev, const ScalarField& d, double eps, double r);

ScalarField discriminant_field(const ScalarField& phi, const VectorField& grad_phi,
                               const VectorField& lambda_prev, const ScalarField& d, double r);

struct RBounds {
  ScalarField r_lower;
  ScalarField r_upper;
  ScalarField alpha;
  Mask valid;  // bounds exist: |grad phi| > floor, phi != 0, d^2/(4 phi^4 pi^2) >= alpha
};

// The bounds use the signed projection of lambda_prev onto grad phi, so that
// r in [r_lower, r_upper] is exactly the set where disc >= 0.
RBounds r_bounds(const ScalarField& phi, const VectorField& grad_phi,
                 const VectorField& lambda_prev, const ScalarField& d,
                 double grad_floor = 1e-8);

// Nodes where the shrinkage step keeps a nonzero p, together with phi < 0.
Mask active_region(const ScalarField& phi, const VectorField& lambda, const ScalarField& d,
                   const AlmParams& params);
Mask active_region(const AlmState& state, const ScalarField& d, const AlmParams& params);

// |phi| < 2 eps / sqrt(3).
Mask thin_band(const ScalarField& phi, double eps);

struct DiagnosticBundle {
  ScalarField q;
  ScalarField disc;
  ScalarField alpha;
  ScalarField r_lower;
  ScalarField r_upper;
  Mask bounds_valid;
  Mask active_mask;
  Mask band_mask;
};

DiagnosticBundle diagnose(const AlmSnapshot& snap);

}  // namespace lsr
