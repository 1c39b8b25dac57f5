#include "uwr/solver.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "uwr/error.hpp"

namespace uwr {

void SolverParams::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw ParameterError("solver.alpha must be finite and >= 0");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw ParameterError("solver.beta must be finite and >= 0");
  if (!(gamma_reg >= 0.0) || !std::isfinite(gamma_reg)) throw ParameterError("solver.gamma must be finite and >= 0");
  for (std::size_t k = 0; k < mu.size(); ++k)
    if (!(mu[k] > 0.0) || !std::isfinite(mu[k]))
      throw ParameterError("solver.mu" + std::to_string(k + 1) + " must be > 0");
  if (max_iters < 1) throw ParameterError("solver.max_iters must be >= 1");
  if (!(tol > 0.0)) throw ParameterError("solver.tol must be > 0");
  if (!(eps_grad > 0.0)) throw ParameterError("solver.eps_grad must be > 0");
  if (inner_iters < 1) throw ParameterError("solver.inner_iters must be >= 1");
  if (!(inner_tol > 0.0)) throw ParameterError("solver.inner_tol must be > 0");
}

bool SolverState::all_finite() const {
  return R.all_finite() && L.all_finite() && w.all_finite() && p.all_finite() &&
         q.all_finite() && m.all_finite() && v.all_finite() && g.all_finite() &&
         lambda1.all_finite() && lambda4.all_finite() && lambda5.all_finite() &&
         lambda2.all_finite() && lambda3.all_finite() && lambda6.all_finite();
}

namespace {

// The solver works on the torus throughout so that the FFT solves for p and m
// invert exactly the operators the other updates and the multipliers use.
VectorField grad(const ScalarField& f) { return gradient_periodic(f); }
ScalarField div(const VectorField& v) { return divergence_periodic(v); }

// (diag - mu * periodic Laplacian) u, the operator of the R and L subproblems.
ScalarField apply_screened(const ScalarField& u, const ScalarField& diag, double mu) {
  const int w = u.width(), h = u.height();
  ScalarField out(w, h);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < h; ++i) {
    const int up = i == 0 ? h - 1 : i - 1, down = i + 1 == h ? 0 : i + 1;
    for (int j = 0; j < w; ++j) {
      const int left = j == 0 ? w - 1 : j - 1, right = j + 1 == w ? 0 : j + 1;
      const double nb = u(up, j) + u(down, j) + u(i, left) + u(i, right);
      out(i, j) = (diag(i, j) + 4.0 * mu) * u(i, j) - mu * nb;
    }
  }
  return out;
}

// Conjugate gradients on the SPD screened system, warm-started at x. Every
// step lowers 1/2 x.Ax - b.x, so the subproblem objective never increases.
ScalarField screened_solve(ScalarField x, const ScalarField& b, const ScalarField& diag, double mu,
                           const SolverParams& params) {
  ScalarField r = b - apply_screened(x, diag, mu);
  const double stop = params.inner_tol * std::max(norm(b), std::numeric_limits<double>::min());
  double rr = inner(r, r);
  ScalarField d = r;
  for (int it = 0; it < params.inner_iters && std::sqrt(rr) > stop; ++it) {
    const ScalarField Ad = apply_screened(d, diag, mu);
    const double dAd = inner(d, Ad);
    if (!(dAd > 0.0)) break;
    const double step = rr / dAd;
    const std::size_t n = x.size();
#pragma omp parallel for schedule(static)
    for (std::size_t k = 0; k < n; ++k) {
      x[k] += step * d[k];
      r[k] -= step * Ad[k];
    }
    const double rr_next = inner(r, r);
    const double beta = rr_next / rr;
    rr = rr_next;
#pragma omp parallel for schedule(static)
    for (std::size_t k = 0; k < n; ++k) d[k] = r[k] + beta * d[k];
  }
  return x;
}

VectorField normalized(const VectorField& v, double eps) {
  VectorField n(v.width(), v.height());
  const std::size_t size = n.x.size();
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < size; ++k) {
    const double mag = std::sqrt(v.x[k] * v.x[k] + v.y[k] * v.y[k] + eps * eps);
    n.x[k] = v.x[k] / mag;
    n.y[k] = v.y[k] / mag;
  }
  return n;
}

void require_finite(const ScalarField& f, const char* update, int iteration) {
  if (!f.all_finite()) throw DivergenceError(update, iteration);
}

void require_finite(const VectorField& f, const char* update, int iteration) {
  if (!f.all_finite()) throw DivergenceError(update, iteration);
}

double relative_change(const ScalarField& now, const ScalarField& before) {
  const double denom = norm(before);
  const double diff = norm(now - before);
  return denom > 0.0 ? diff / denom : diff;
}

}  // namespace

double energy(const ScalarField& R, const ScalarField& L, const ScalarField& I,
              const ScalarField& t, const SolverParams& params) {
  require_same_shape(R, L, "energy");
  require_same_shape(R, I, "energy");
  require_same_shape(R, t, "energy");
  const std::size_t n = R.size();

  ScalarField data(R.width(), R.height());
  for (std::size_t k = 0; k < n; ++k) {
    const double r = R[k] * L[k] * t[k] + L[k] * (1.0 - t[k]) - I[k];
    data[k] = 0.5 * r * r;
  }

  const VectorField dR = grad(R);
  const ScalarField mag = magnitude(dR);
  const ScalarField curvature = div(normalized(dR, params.eps_grad));
  ScalarField elastica(R.width(), R.height());
  for (std::size_t k = 0; k < n; ++k)
    elastica[k] = (params.alpha + params.beta * curvature[k] * curvature[k]) * mag[k];

  const ScalarField lap = div(grad(L));
  return sum(data) + sum(elastica) + 0.5 * params.gamma_reg * inner(lap, lap);
}

SolverState initial_state(const ScalarField& I, const ScalarField& L0, const ScalarField& t,
                          const SolverParams& params) {
  require_same_shape(I, L0, "initial_state");
  require_same_shape(I, t, "initial_state");
  const int w = I.width(), h = I.height();
  SolverState s;
  s.R = ScalarField(w, h);
  for (std::size_t k = 0; k < I.size(); ++k) s.R[k] = std::clamp(I[k] / L0[k], 0.0, 1.0);
  s.L = L0;
  s.w = grad(s.R);
  s.p = normalized(s.w, params.eps_grad);
  s.q = s.p;
  s.v = div(s.p);
  s.m = grad(s.L);
  s.g = div(s.m);
  s.lambda1 = VectorField(w, h);
  s.lambda4 = VectorField(w, h);
  s.lambda5 = VectorField(w, h);
  s.lambda2 = ScalarField(w, h);
  s.lambda3 = ScalarField(w, h);
  s.lambda6 = ScalarField(w, h);
  return s;
}

PrimalResiduals primal_residuals(const SolverState& s) {
  PrimalResiduals r;
  r.w_grad_r = norm(s.w - grad(s.R));
  r.v_div_p = norm(s.v - div(s.p));
  r.p_q = norm(s.p - s.q);
  r.m_grad_l = norm(s.m - grad(s.L));
  r.g_div_m = norm(s.g - div(s.m));
  return r;
}

ScalarField update_R(const SolverState& s, const ScalarField& I, const ScalarField& t,
                     const SolverParams& params) {
  const double mu1 = params.mu1();
  const ScalarField div_w = div(s.w);
  const ScalarField div_l1 = div(s.lambda1);
  const int w = s.width(), h = s.height();
  ScalarField rhs(w, h), diag(w, h);
  const std::size_t n = rhs.size();
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < n; ++k) {
    const double L = s.L[k], tk = t[k];
    const double f = L * I[k] * tk - L * L * tk * (1.0 - tk);
    rhs[k] = f - mu1 * div_w[k] - div_l1[k];
    diag[k] = (L * tk) * (L * tk);
  }
  return screened_solve(s.R, rhs, diag, mu1, params);
}

ScalarField update_L(const SolverState& s, const ScalarField& I, const ScalarField& t,
                     const SolverParams& params) {
  const double mu5 = params.mu5();
  const ScalarField div_m = div(s.m);
  const ScalarField div_l5 = div(s.lambda5);
  const int w = s.width(), h = s.height();
  ScalarField rhs(w, h), diag(w, h);
  const std::size_t n = rhs.size();
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < n; ++k) {
    const double a = s.R[k] * t[k] + 1.0 - t[k];
    rhs[k] = I[k] * a - mu5 * div_m[k] - div_l5[k];
    diag[k] = a * a;
  }
  return screened_solve(s.L, rhs, diag, mu5, params);
}

VectorField update_w(const SolverState& s, const SolverParams& params) {
  const double mu1 = params.mu1(), mu2 = params.mu2();
  const VectorField dR = grad(s.R);
  VectorField out(s.width(), s.height());
  const std::size_t n = dR.x.size();
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < n; ++k) {
    const double c = s.lambda2[k] + mu2;
    const double ax = dR.x[k] + (c * s.q.x[k] - s.lambda1.x[k]) / mu1;
    const double ay = dR.y[k] + (c * s.q.y[k] - s.lambda1.y[k]) / mu1;
    const double b = c + params.alpha + params.beta * s.v[k] * s.v[k];
    const double mag = std::hypot(ax, ay);
    const double shrunk = std::max(mag - b / mu1, 0.0);
    // 0 * 0/|0| is taken as 0.
    const double scale = mag > 0.0 ? shrunk / mag : 0.0;
    out.x[k] = scale * ax;
    out.y[k] = scale * ay;
  }
  return out;
}

VectorField update_p(const SolverState& s, const SolverParams& params, const SpectralKernel& k) {
  const double mu3 = params.mu3(), mu4 = params.mu4();
  const VectorField grad_v = grad(s.v);
  const VectorField grad_l3 = grad(s.lambda3);
  const double r = mu4 / mu3;
  ScalarField h1(s.width(), s.height()), h2(s.width(), s.height());
  const std::size_t n = h1.size();
#pragma omp parallel for schedule(static)
  for (std::size_t j = 0; j < n; ++j) {
    h1[j] = -grad_v.x[j] - grad_l3.x[j] / mu3 + r * s.q.x[j] - s.lambda4.x[j] / mu3;
    h2[j] = -grad_v.y[j] - grad_l3.y[j] / mu3 + r * s.q.y[j] - s.lambda4.y[j] / mu3;
  }
  return solve_coupled_field(h1, h2, k);
}

VectorField update_q(const SolverState& s, const SolverParams& params) {
  const double mu2 = params.mu2(), mu4 = params.mu4();
  VectorField out(s.width(), s.height());
  const std::size_t n = out.x.size();
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < n; ++k) {
    const double c = s.lambda2[k] + mu2;
    const double qx = s.p.x[k] + (s.lambda4.x[k] + c * s.w.x[k]) / mu4;
    const double qy = s.p.y[k] + (s.lambda4.y[k] + c * s.w.y[k]) / mu4;
    const double scale = std::max(1.0, std::hypot(qx, qy));
    out.x[k] = qx / scale;
    out.y[k] = qy / scale;
  }
  return out;
}

ScalarField update_v(const SolverState& s, const SolverParams& params) {
  const double mu3 = params.mu3();
  const ScalarField div_p = div(s.p);
  ScalarField out(s.width(), s.height());
  const std::size_t n = out.size();
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < n; ++k) {
    const double wmag = std::hypot(s.w.x[k], s.w.y[k]);
    out[k] = (mu3 * div_p[k] - s.lambda3[k]) / (mu3 + 2.0 * params.beta * wmag);
  }
  return out;
}

VectorField update_m(const SolverState& s, const SolverParams& params, const SpectralKernel& k) {
  const double mu5 = params.mu5(), mu6 = params.mu6();
  const VectorField grad_g = grad(s.g);
  const VectorField grad_l6 = grad(s.lambda6);
  const VectorField grad_L = grad(s.L);
  const double r = mu5 / mu6;
  ScalarField n1(s.width(), s.height()), n2(s.width(), s.height());
  const std::size_t n = n1.size();
#pragma omp parallel for schedule(static)
  for (std::size_t j = 0; j < n; ++j) {
    n1[j] = -grad_g.x[j] - grad_l6.x[j] / mu6 + r * grad_L.x[j] - s.lambda5.x[j] / mu6;
    n2[j] = -grad_g.y[j] - grad_l6.y[j] / mu6 + r * grad_L.y[j] - s.lambda5.y[j] / mu6;
  }
  return solve_coupled_field(n1, n2, k);
}

ScalarField update_g(const SolverState& s, const SolverParams& params) {
  const double mu6 = params.mu6();
  const ScalarField div_m = div(s.m);
  ScalarField out(s.width(), s.height());
  const std::size_t n = out.size();
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < n; ++k)
    out[k] = (mu6 * div_m[k] - s.lambda6[k]) / (mu6 + params.gamma_reg);
  return out;
}

SolverState update_multipliers(SolverState s, const SolverParams& params) {
  const auto [mu1, mu2, mu3, mu4, mu5, mu6] = params.mu;
  const VectorField grad_R = grad(s.R);
  const VectorField grad_L = grad(s.L);
  const ScalarField div_p = div(s.p);
  const ScalarField div_m = div(s.m);
  const std::size_t n = s.R.size();
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < n; ++k) {
    s.lambda1.x[k] += mu1 * (s.w.x[k] - grad_R.x[k]);
    s.lambda1.y[k] += mu1 * (s.w.y[k] - grad_R.y[k]);
    const double wmag = std::hypot(s.w.x[k], s.w.y[k]);
    s.lambda2[k] += mu2 * (wmag - (s.w.x[k] * s.q.x[k] + s.w.y[k] * s.q.y[k]));
    s.lambda3[k] += mu3 * (s.v[k] - div_p[k]);
    s.lambda4.x[k] += mu4 * (s.p.x[k] - s.q.x[k]);
    s.lambda4.y[k] += mu4 * (s.p.y[k] - s.q.y[k]);
    s.lambda5.x[k] += mu5 * (s.m.x[k] - grad_L.x[k]);
    s.lambda5.y[k] += mu5 * (s.m.y[k] - grad_L.y[k]);
    s.lambda6[k] += mu6 * (s.g[k] - div_m[k]);
  }
  return s;
}

ChannelSolution solve_channel(const ScalarField& I, const ScalarField& L0, const ScalarField& t,
                              const SolverParams& params) {
  params.validate();
  if (I.empty()) throw DimensionError("solve_channel on empty field");
  SolverState s = initial_state(I, L0, t, params);
  const SpectralKernel p_kernel(s.width(), s.height(), params.mu4() / params.mu3());
  const SpectralKernel m_kernel(s.width(), s.height(), params.mu5() / params.mu6());

  SolveReport report;
  while (s.iter < params.max_iters) {
    const int it = s.iter + 1;
    const ScalarField R_prev = s.R;
    const ScalarField L_prev = s.L;

    s.R = update_R(s, I, t, params);
    require_finite(s.R, "R", it);
    s.L = update_L(s, I, t, params);
    require_finite(s.L, "L", it);
    s.w = update_w(s, params);
    require_finite(s.w, "w", it);
    s.p = update_p(s, params, p_kernel);
    require_finite(s.p, "p", it);
    s.q = update_q(s, params);
    require_finite(s.q, "q", it);
    s.v = update_v(s, params);
    require_finite(s.v, "v", it);
    s.m = update_m(s, params, m_kernel);
    require_finite(s.m, "m", it);
    s.g = update_g(s, params);
    require_finite(s.g, "g", it);
    s = update_multipliers(std::move(s), params);
    if (!s.all_finite()) throw DivergenceError("multipliers", it);
    s.iter = it;

    const double change = std::max(relative_change(s.R, R_prev), relative_change(s.L, L_prev));
    report.energy.push_back(energy(s.R, s.L, I, t, params));
    report.relative_change.push_back(change);
    report.residuals.push_back(primal_residuals(s));
    if (change < params.tol) {
      report.converged = true;
      break;
    }
  }
  report.iterations = s.iter;
  return {clamp(s.R, 0.0, 1.0), std::move(s.L), std::move(report)};
}

Restoration restore(const RgbImage& img, const RgbImage& L, const ScalarField& t,
                    const SolverParams& params) {
  params.validate();
  require_same_shape(img.r, L.r, "restore image vs illumination");
  require_same_shape(img.r, t, "restore image vs transmission");

  std::array<ChannelSolution, 3> solved;
  std::array<std::exception_ptr, 3> errors;
#pragma omp parallel for schedule(static, 1)
  for (int c = 0; c < 3; ++c) {
    try {
      solved[c] = solve_channel(img.channel(c), L.channel(c), t, params);
    } catch (...) {
      errors[c] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  Restoration out;
  for (int c = 0; c < 3; ++c) {
    out.reflectance.channel(c) = std::move(solved[c].R);
    out.illumination.channel(c) = std::move(solved[c].L);
    out.reports[c] = std::move(solved[c].report);
  }
  return out;
}

RgbImage shade(const RgbImage& reflectance, const RgbImage& illumination, double rho) {
  RgbImage out;
  for (int c = 0; c < 3; ++c) {
    const ScalarField& R = reflectance.channel(c);
    const ScalarField& L = illumination.channel(c);
    require_same_shape(R, L, "shade");
    ScalarField o(R.width(), R.height());
    for (std::size_t k = 0; k < o.size(); ++k)
      o[k] = std::clamp(R[k] * std::pow(std::max(L[k], 0.0), rho), 0.0, 1.0);
    out.channel(c) = std::move(o);
  }
  return out;
}

}  // namespace uwr
