#include "fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "uwr/image_io.hpp"

namespace uwr::testing {

ScalarField random_field(int w, int h, Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  ScalarField f(w, h);
  for (double& v : f.data()) v = u(rng);
  return f;
}

VectorField random_vector_field(int w, int h, Rng& rng, double lo, double hi) {
  ScalarField x = random_field(w, h, rng, lo, hi);
  ScalarField y = random_field(w, h, rng, lo, hi);
  return {std::move(x), std::move(y)};
}

RgbImage random_image(int w, int h, Rng& rng, double lo, double hi) {
  ScalarField r = random_field(w, h, rng, lo, hi);
  ScalarField g = random_field(w, h, rng, lo, hi);
  ScalarField b = random_field(w, h, rng, lo, hi);
  return {std::move(r), std::move(g), std::move(b)};
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Smoothstep of the signed distance to a disc, periodic in both directions.
double blob(double x, double y, double cx, double cy, double radius, double n) {
  double dx = std::abs(x - cx), dy = std::abs(y - cy);
  dx = std::min(dx, n - dx);
  dy = std::min(dy, n - dy);
  const double d = std::sqrt(dx * dx + dy * dy) - radius;
  const double s = std::clamp(0.5 - d / 3.0, 0.0, 1.0);
  return s * s * (3.0 - 2.0 * s);
}

}  // namespace

ForwardFixture forward_fixture(int n) {
  ForwardFixture fx{ScalarField(n, n), ScalarField(n, n), ScalarField(n, n), ScalarField(n, n)};
  const double nn = n;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = j, y = i;
      double r = 0.3;
      r += 0.4 * blob(x, y, 0.3 * nn, 0.35 * nn, 0.18 * nn, nn);
      r += 0.25 * blob(x, y, 0.7 * nn, 0.65 * nn, 0.14 * nn, nn);
      r -= 0.15 * blob(x, y, 0.72 * nn, 0.2 * nn, 0.1 * nn, nn);
      fx.R(i, j) = r;
      fx.L(i, j) = 0.8 + 0.06 * std::cos(kTwoPi * x / nn) * std::cos(kTwoPi * y / nn);
      fx.t(i, j) = 0.675 + 0.2 * std::sin(kTwoPi * (x + 2.0 * y) / nn);
      fx.I(i, j) = fx.R(i, j) * fx.L(i, j) * fx.t(i, j) + fx.L(i, j) * (1.0 - fx.t(i, j));
    }
  }
  return fx;
}

UnderwaterScene underwater_scene(int w, int h, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 0.004);

  // clear scene: sloped background plus textured ellipses and bars
  RgbImage clear(w, h);
  const double base[3] = {0.35 + 0.2 * u(rng), 0.3 + 0.2 * u(rng), 0.25 + 0.2 * u(rng)};
  for (int i = 0; i < h; ++i)
    for (int j = 0; j < w; ++j)
      for (int c = 0; c < 3; ++c)
        clear.channel(c)(i, j) = base[c] * (0.7 + 0.6 * i / h) + 0.05 * std::sin(j * 0.3 + c);

  const int shapes = 7 + static_cast<int>(u(rng) * 5);
  for (int s = 0; s < shapes; ++s) {
    const double cx = u(rng) * w, cy = u(rng) * h;
    const double ax = (0.06 + 0.18 * u(rng)) * w, ay = (0.06 + 0.18 * u(rng)) * h;
    const double col[3] = {u(rng), u(rng), u(rng)};
    const double freq = 0.2 + 0.8 * u(rng), phase = kTwoPi * u(rng);
    const bool bar = u(rng) < 0.3;
    for (int i = 0; i < h; ++i) {
      for (int j = 0; j < w; ++j) {
        const double dx = (j - cx) / ax, dy = (i - cy) / ay;
        const bool inside = bar ? (std::abs(dx) < 1.0 && std::abs(dy) < 0.3)
                                : dx * dx + dy * dy < 1.0;
        if (!inside) continue;
        const double tex = 0.85 + 0.15 * std::sin(freq * (i + j) + phase);
        for (int c = 0; c < 3; ++c) clear.channel(c)(i, j) = std::clamp(col[c] * tex, 0.0, 1.0);
      }
    }
  }

  // medium: red attenuates fastest; the veil is bluish or greenish
  const bool greenish = u(rng) < 0.5;
  const double beta[3] = {1.6 + 0.8 * u(rng), 0.35 + 0.25 * u(rng), 0.25 + 0.2 * u(rng)};
  const double veil[3] = {0.04 + 0.05 * u(rng), greenish ? 0.5 + 0.15 * u(rng) : 0.35 + 0.1 * u(rng),
                          greenish ? 0.35 + 0.1 * u(rng) : 0.5 + 0.15 * u(rng)};
  const double spot_x = u(rng) * w, spot_y = 0.3 * u(rng) * h, spot_r = 0.6 * std::max(w, h);

  RgbImage degraded(w, h);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      const double depth = 0.6 + 1.2 * (1.0 - static_cast<double>(i) / h);
      const double dx = j - spot_x, dy = i - spot_y;
      const double light = 0.55 + 0.45 * std::exp(-(dx * dx + dy * dy) / (spot_r * spot_r));
      for (int c = 0; c < 3; ++c) {
        const double t = std::exp(-beta[c] * depth);
        const double v = clear.channel(c)(i, j) * light * t + veil[c] * (1.0 - t) + noise(rng);
        degraded.channel(c)(i, j) = std::clamp(v, 0.0, 1.0);
      }
    }
  }
  return {clear, requantize(degraded)};
}

}  // namespace uwr::testing
