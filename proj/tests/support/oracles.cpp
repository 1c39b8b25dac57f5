#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

namespace uwr::testing {

VectorField gradient_oracle(const ScalarField& f) {
  const int w = f.width(), h = f.height();
  VectorField g(w, h);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < w; ++j) {
      g.x(i, j) = j + 1 < w ? f(i, j + 1) - f(i, j) : 0.0;
      g.y(i, j) = i + 1 < h ? f(i + 1, j) - f(i, j) : 0.0;
    }
  return g;
}

ScalarField laplacian_oracle(const ScalarField& f) {
  const int w = f.width(), h = f.height();
  ScalarField out(w, h);
  auto at = [&](int i, int j) {
    return f(std::clamp(i, 0, h - 1), std::clamp(j, 0, w - 1));
  };
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < w; ++j)
      out(i, j) = at(i + 1, j) + at(i - 1, j) + at(i, j + 1) + at(i, j - 1) - 4.0 * f(i, j);
  return out;
}

namespace {

template <typename Reduce>
ScalarField window_scan(const ScalarField& f, int r, double init, Reduce reduce, bool average) {
  const int w = f.width(), h = f.height();
  ScalarField out(w, h);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < w; ++j) {
      double acc = init;
      int count = 0;
      for (int a = std::max(0, i - r); a <= std::min(h - 1, i + r); ++a)
        for (int b = std::max(0, j - r); b <= std::min(w - 1, j + r); ++b) {
          acc = reduce(acc, f(a, b));
          ++count;
        }
      out(i, j) = average ? acc / count : acc;
    }
  return out;
}

}  // namespace

ScalarField box_mean_oracle(const ScalarField& f, int r) {
  return window_scan(f, r, 0.0, [](double a, double v) { return a + v; }, true);
}

ScalarField window_max_oracle(const ScalarField& f, int r) {
  return window_scan(f, r, -std::numeric_limits<double>::infinity(),
                     [](double a, double v) { return std::max(a, v); }, false);
}

ScalarField window_min_oracle(const ScalarField& f, int r) {
  return window_scan(f, r, std::numeric_limits<double>::infinity(),
                     [](double a, double v) { return std::min(a, v); }, false);
}

ScalarField guided_filter_oracle(const ScalarField& guide, const ScalarField& input, int r,
                                 double eps) {
  const int w = guide.width(), h = guide.height();
  ScalarField a(w, h), b(w, h);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < w; ++j) {
      double sg = 0, si = 0, sgg = 0, sgi = 0;
      int n = 0;
      for (int y = std::max(0, i - r); y <= std::min(h - 1, i + r); ++y)
        for (int x = std::max(0, j - r); x <= std::min(w - 1, j + r); ++x) {
          const double g = guide(y, x), p = input(y, x);
          sg += g; si += p; sgg += g * g; sgi += g * p;
          ++n;
        }
      const double mg = sg / n, mi = si / n;
      const double var = sgg / n - mg * mg, cov = sgi / n - mg * mi;
      a(i, j) = cov / (var + eps);
      b(i, j) = mi - a(i, j) * mg;
    }
  const ScalarField ma = box_mean_oracle(a, r), mb = box_mean_oracle(b, r);
  ScalarField out(w, h);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < w; ++j) out(i, j) = ma(i, j) * guide(i, j) + mb(i, j);
  return out;
}

ScalarField transmission_oracle(const RgbImage& img, const RgbImage& L, int patch) {
  const int w = img.width(), h = img.height();
  ScalarField t(w, h);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < w; ++j) {
      double m = std::numeric_limits<double>::infinity();
      for (int y = std::max(0, i - patch); y <= std::min(h - 1, i + patch); ++y)
        for (int x = std::max(0, j - patch); x <= std::min(w - 1, j + patch); ++x)
          for (int c = 0; c < 3; ++c)
            m = std::min(m, std::clamp(img.channel(c)(y, x) / L.channel(c)(i, j), 0.0, 1.0));
      t(i, j) = 1.0 - m;
    }
  return t;
}

VectorField dense_coupled_solve(const ScalarField& h1, const ScalarField& h2, double ratio) {
  const int w = h1.width(), h = h1.height(), n = w * h;
  auto idx = [w](int i, int j) { return i * w + j; };
  Eigen::MatrixXd Gx = Eigen::MatrixXd::Zero(n, n), Gy = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < w; ++j) {
      Gx(idx(i, j), idx(i, (j + 1) % w)) += 1.0;
      Gx(idx(i, j), idx(i, j)) -= 1.0;
      Gy(idx(i, j), idx((i + 1) % h, j)) += 1.0;
      Gy(idx(i, j), idx(i, j)) -= 1.0;
    }
  Eigen::MatrixXd G(2 * n, n);
  G << Gx, Gy;
  // div = -G^T, so r p - grad div p = (r I + G G^T) p
  const Eigen::MatrixXd A = ratio * Eigen::MatrixXd::Identity(2 * n, 2 * n) + G * G.transpose();
  Eigen::VectorXd rhs(2 * n);
  for (int k = 0; k < n; ++k) {
    rhs(k) = h1[k];
    rhs(n + k) = h2[k];
  }
  const Eigen::VectorXd sol = A.partialPivLu().solve(rhs);
  VectorField p(w, h);
  for (int k = 0; k < n; ++k) {
    p.x[k] = sol(k);
    p.y[k] = sol(n + k);
  }
  return p;
}

double augmented_lagrangian(const SolverState& s, const ScalarField& I, const ScalarField& t,
                            const SolverParams& p) {
  const auto [mu1, mu2, mu3, mu4, mu5, mu6] = p.mu;
  const VectorField gR = gradient_periodic(s.R), gL = gradient_periodic(s.L);
  const ScalarField dp = divergence_periodic(s.p), dm = divergence_periodic(s.m);
  double e = 0.0;
  for (std::size_t k = 0; k < s.R.size(); ++k) {
    const double data = s.R[k] * s.L[k] * t[k] + s.L[k] * (1.0 - t[k]) - I[k];
    const double wmag = std::hypot(s.w.x[k], s.w.y[k]);
    auto sq = [](double a, double b) { return a * a + b * b; };
    e += 0.5 * data * data;
    e += (p.alpha + p.beta * s.v[k] * s.v[k]) * wmag;
    e += 0.5 * p.gamma_reg * s.g[k] * s.g[k];
    e += 0.5 * mu1 * sq(s.w.x[k] - gR.x[k] + s.lambda1.x[k] / mu1,
                        s.w.y[k] - gR.y[k] + s.lambda1.y[k] / mu1);
    e += (s.lambda2[k] + mu2) * (wmag - (s.w.x[k] * s.q.x[k] + s.w.y[k] * s.q.y[k]));
    const double cv = s.v[k] - dp[k] + s.lambda3[k] / mu3;
    e += 0.5 * mu3 * cv * cv;
    e += 0.5 * mu4 * sq(s.p.x[k] - s.q.x[k] + s.lambda4.x[k] / mu4,
                        s.p.y[k] - s.q.y[k] + s.lambda4.y[k] / mu4);
    e += 0.5 * mu5 * sq(s.m.x[k] - gL.x[k] + s.lambda5.x[k] / mu5,
                        s.m.y[k] - gL.y[k] + s.lambda5.y[k] / mu5);
    const double cg = s.g[k] - dm[k] + s.lambda6[k] / mu6;
    e += 0.5 * mu6 * cg * cg;
  }
  return e;
}

SolverState random_state(int w, int h, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0), pos(0.0, 1.0);
  auto field = [&](double scale, double offset = 0.0) {
    ScalarField f(w, h);
    for (double& v : f.data()) v = offset + scale * u(rng);
    return f;
  };
  auto vfield = [&](double scale) { return VectorField(field(scale), field(scale)); };
  SolverState s;
  s.R = field(0.4, 0.5);
  s.L = field(0.3, 0.6);
  s.w = vfield(0.5);
  s.p = vfield(0.8);
  s.q = VectorField(w, h);
  for (std::size_t k = 0; k < s.q.x.size(); ++k) {
    const double r = std::sqrt(pos(rng)), a = 3.141592653589793 * u(rng);
    s.q.x[k] = r * std::cos(a);
    s.q.y[k] = r * std::sin(a);
  }
  s.m = vfield(0.2);
  s.v = field(1.0);
  s.g = field(0.3);
  s.lambda1 = vfield(0.05);
  s.lambda2 = field(0.1, 0.1);
  s.lambda3 = field(0.2);
  s.lambda4 = vfield(0.2);
  s.lambda5 = vfield(0.05);
  s.lambda6 = field(0.2);
  return s;
}

double w_objective(const PixelW& px, const SolverParams& p, double wx, double wy) {
  const double mu1 = p.mu1(), mu2 = p.mu2();
  const double mag = std::hypot(wx, wy);
  const double dx = wx - px.gx + px.l1x / mu1, dy = wy - px.gy + px.l1y / mu1;
  return (p.alpha + p.beta * px.v * px.v) * mag + 0.5 * mu1 * (dx * dx + dy * dy) +
         (px.l2 + mu2) * (mag - (wx * px.qx + wy * px.qy));
}

double q_objective(const PixelQ& px, const SolverParams& p, double qx, double qy) {
  const double mu2 = p.mu2(), mu4 = p.mu4();
  const double wmag = std::hypot(px.wx, px.wy);
  const double dx = px.px - qx + px.l4x / mu4, dy = px.py - qy + px.l4y / mu4;
  return (px.l2 + mu2) * (wmag - (px.wx * qx + px.wy * qy)) + 0.5 * mu4 * (dx * dx + dy * dy);
}

namespace {

template <typename F>
std::array<double, 2> grid_min_2d(F f, double cx, double cy, double half_width, double resolution) {
  double step = half_width / 50.0;
  double bx = cx, by = cy, best = f(cx, cy);
  double x0 = cx - half_width, x1 = cx + half_width, y0 = cy - half_width, y1 = cy + half_width;
  while (true) {
    const int nx = static_cast<int>(std::round((x1 - x0) / step));
    const int ny = static_cast<int>(std::round((y1 - y0) / step));
    int ba = -1, bb = -1;
    for (int a = 0; a <= nx; ++a)
      for (int b = 0; b <= ny; ++b) {
        const double x = x0 + a * step, y = y0 + b * step;
        const double v = f(x, y);
        if (v < best) { best = v; bx = x; by = y; ba = a; bb = b; }
      }
    // best on the window edge: slide the window at the same spacing
    if (ba == 0 || bb == 0 || ba == nx || bb == ny) {
      x0 = bx - 3.0 * step; x1 = bx + 3.0 * step;
      y0 = by - 3.0 * step; y1 = by + 3.0 * step;
      continue;
    }
    if (step <= resolution * (1.0 + 1e-9)) break;
    x0 = bx - 3.0 * step; x1 = bx + 3.0 * step;
    y0 = by - 3.0 * step; y1 = by + 3.0 * step;
    step = std::max(step / 10.0, resolution);
  }
  return {bx, by};
}

}  // namespace

std::array<double, 2> grid_min_w(const PixelW& px, const SolverParams& p, double half_width,
                                 double resolution) {
  return grid_min_2d([&](double x, double y) { return w_objective(px, p, x, y); }, 0.0, 0.0,
                     half_width, resolution);
}

std::array<double, 2> grid_min_q(const PixelQ& px, const SolverParams& p, double resolution) {
  // nodes outside the disc are pulled onto the circle so the boundary is
  // sampled as finely as the interior
  const auto onto_disc = [](double x, double y) {
    const double r = std::max(1.0, std::hypot(x, y));
    return std::array<double, 2>{x / r, y / r};
  };
  const auto best = grid_min_2d(
      [&](double x, double y) {
        const auto d = onto_disc(x, y);
        return q_objective(px, p, d[0], d[1]);
      },
      0.0, 0.0, 1.0, resolution);
  return onto_disc(best[0], best[1]);
}

}  // namespace uwr::testing
