#pragma once

// ADMM solver for the reflectance/illumination variational model
//
//   E(R, L) = 1/2 sum (R L t + L (1 - t) - I)^2
//           + sum (alpha + beta * curv(R)^2) |grad R|
//           + gamma/2 sum |lap L|^2,
//
// curv(R) = div(grad R / |grad R|). All difference operators inside the solver
// are periodic so the FFT solves are exact inverses. The splitting introduces
//   w = grad R, p = w/|w| (relaxed to p = q with |q| <= 1), v = div p,
//   m = grad L, g = div m,
// with multipliers lambda1..lambda6 and penalties mu1..mu6. One outer
// iteration runs R, L, w, p, q, v, m, g and then the multiplier ascent, each
// update using the freshest values of the others (Gauss-Seidel order).

#include <array>
#include <string>
#include <vector>

#include "uwr/field.hpp"
#include "uwr/spectral.hpp"

namespace uwr {

struct SolverParams {
  double alpha = 1e-3;     // elastica length weight
  double beta = 1e-3;      // elastica curvature weight
  double gamma_reg = 10.0; // Laplacian weight on L
  std::array<double, 6> mu{0.1, 0.1, 1.0, 1.0, 0.1, 1.0};
  int max_iters = 100;
  double tol = 1e-4;       // relative change of (R, L) for stopping
  double eps_grad = 1e-8;  // stabilizer for |grad R| in normalizations
  int inner_iters = 200;   // CG cap for the R and L subproblems
  double inner_tol = 1e-10; // CG relative residual target

  double mu1() const { return mu[0]; }
  double mu2() const { return mu[1]; }
  double mu3() const { return mu[2]; }
  double mu4() const { return mu[3]; }
  double mu5() const { return mu[4]; }
  double mu6() const { return mu[5]; }

  void validate() const;

  friend bool operator==(const SolverParams&, const SolverParams&) = default;
};

struct SolverState {
  ScalarField R, L;
  VectorField w, p, q, m;
  ScalarField v, g;
  VectorField lambda1, lambda4, lambda5;
  ScalarField lambda2, lambda3, lambda6;
  int iter = 0;

  int width() const { return R.width(); }
  int height() const { return R.height(); }
  bool all_finite() const;
};

struct PrimalResiduals {
  double w_grad_r = 0.0;  // |w - grad R|
  double v_div_p = 0.0;   // |v - div p|
  double p_q = 0.0;       // |p - q|
  double m_grad_l = 0.0;  // |m - grad L|
  double g_div_m = 0.0;   // |g - div m|
};

struct SolveReport {
  int iterations = 0;
  bool converged = false;
  std::vector<double> energy;
  std::vector<double> relative_change;
  std::vector<PrimalResiduals> residuals;
};

// Discrete energy of the model. |grad R| inside the curvature is stabilized
// as sqrt(|grad R|^2 + eps_grad^2).
double energy(const ScalarField& R, const ScalarField& L, const ScalarField& I,
              const ScalarField& t, const SolverParams& params);

// R0 = clamp(I / L0, 0, 1), L = L0, w = grad R0, p = q = w/|w|, v = div p,
// m = grad L0, g = div m, multipliers zero.
SolverState initial_state(const ScalarField& I, const ScalarField& L0, const ScalarField& t,
                          const SolverParams& params);

PrimalResiduals primal_residuals(const SolverState& s);

// Solves the R Euler-Lagrange equation
//   ((L t)^2 - mu1 lap) R = f - mu1 div w - div lambda1,  f = L I t - L^2 t (1 - t)
// by conjugate gradients warm-started at s.R. Uses the current s.L.
ScalarField update_R(const SolverState& s, const ScalarField& I, const ScalarField& t,
                     const SolverParams& params);

// Same solve for L with diagonal (R t + 1 - t)^2 and h = I (R t + 1 - t); uses
// s.R as the new reflectance.
ScalarField update_L(const SolverState& s, const ScalarField& I, const ScalarField& t,
                     const SolverParams& params);

// Shrinkage: w = max(|A| - B/mu1, 0) A/|A| with
//   A = grad R + ((lambda2 + mu2) q - lambda1)/mu1,
//   B = lambda2 + mu2 + alpha + beta v^2.
VectorField update_w(const SolverState& s, const SolverParams& params);

// Spectral solve of (mu4/mu3) p - grad div p = h with
//   h = -grad v - grad lambda3/mu3 + (mu4/mu3) q - lambda4/mu3.
VectorField update_p(const SolverState& s, const SolverParams& params, const SpectralKernel& k);

// q = q~ / max(1, |q~|), q~ = p + (lambda4 + (lambda2 + mu2) w)/mu4.
VectorField update_q(const SolverState& s, const SolverParams& params);

// v = (mu3 div p - lambda3) / (mu3 + 2 beta |w|).
ScalarField update_v(const SolverState& s, const SolverParams& params);

// Spectral solve of (mu5/mu6) m - grad div m = n with
//   n = -grad g - grad lambda6/mu6 + (mu5/mu6) grad L - lambda5/mu6.
VectorField update_m(const SolverState& s, const SolverParams& params, const SpectralKernel& k);

// g = (mu6 div m - lambda6) / (mu6 + gamma).
ScalarField update_g(const SolverState& s, const SolverParams& params);

// Ascent on all six multipliers.
SolverState update_multipliers(SolverState s, const SolverParams& params);

struct ChannelSolution {
  ScalarField R;  // clamped to [0,1]
  ScalarField L;
  SolveReport report;
};

// Iterates until max_iters or max(rel dR, rel dL) < tol. Throws
// DivergenceError naming the update and iteration on a non-finite value.
ChannelSolution solve_channel(const ScalarField& I, const ScalarField& L0, const ScalarField& t,
                              const SolverParams& params);

struct Restoration {
  RgbImage reflectance;   // restored image, in [0,1]
  RgbImage illumination;  // solved L per channel
  std::array<SolveReport, 3> reports;
};

// Solves the three channels independently (concurrently when OpenMP allows)
// against one shared transmission map.
Restoration restore(const RgbImage& img, const RgbImage& L, const ScalarField& t,
                    const SolverParams& params);

// R * L^rho per channel, clamped to [0,1]; an optional display composition.
RgbImage shade(const RgbImage& reflectance, const RgbImage& illumination, double rho);

}  // namespace uwr
