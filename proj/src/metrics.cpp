#include "uwr/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "uwr/error.hpp"

namespace uwr {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

double srgb_to_linear(double c) {
  return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double lab_f(double t) {
  constexpr double delta = 6.0 / 29.0;
  return t > delta * delta * delta ? std::cbrt(t) : t / (3.0 * delta * delta) + 4.0 / 29.0;
}

// sRGB primaries; the white point is the image of (1,1,1) so neutral inputs
// land on the a = b = 0 axis.
constexpr std::array<std::array<double, 3>, 3> kRgbToXyz{{
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
}};

double hue_degrees(double b, double a) {
  if (a == 0.0 && b == 0.0) return 0.0;
  double h = std::atan2(b, a) / kDeg;
  return h < 0.0 ? h + 360.0 : h;
}

}  // namespace

Lab srgb_to_lab(double r, double g, double b) {
  const double lin[3] = {srgb_to_linear(r), srgb_to_linear(g), srgb_to_linear(b)};
  double xyz[3], white[3];
  for (int i = 0; i < 3; ++i) {
    xyz[i] = kRgbToXyz[i][0] * lin[0] + kRgbToXyz[i][1] * lin[1] + kRgbToXyz[i][2] * lin[2];
    white[i] = kRgbToXyz[i][0] + kRgbToXyz[i][1] + kRgbToXyz[i][2];
  }
  const double fx = lab_f(xyz[0] / white[0]);
  const double fy = lab_f(xyz[1] / white[1]);
  const double fz = lab_f(xyz[2] / white[2]);
  return {116.0 * fy - 16.0, 500.0 * (fx - fy), 200.0 * (fy - fz)};
}

double delta_e_2000(const Lab& x, const Lab& y) {
  const double c1 = std::hypot(x.a, x.b);
  const double c2 = std::hypot(y.a, y.b);
  const double c_bar7 = std::pow((c1 + c2) / 2.0, 7);
  const double g = 0.5 * (1.0 - std::sqrt(c_bar7 / (c_bar7 + std::pow(25.0, 7))));
  const double a1 = (1.0 + g) * x.a;
  const double a2 = (1.0 + g) * y.a;
  const double cp1 = std::hypot(a1, x.b);
  const double cp2 = std::hypot(a2, y.b);
  const double hp1 = hue_degrees(x.b, a1);
  const double hp2 = hue_degrees(y.b, a2);

  const double dL = y.L - x.L;
  const double dC = cp2 - cp1;
  double dh = 0.0;
  if (cp1 * cp2 != 0.0) {
    dh = hp2 - hp1;
    if (dh > 180.0) dh -= 360.0;
    else if (dh < -180.0) dh += 360.0;
  }
  const double dH = 2.0 * std::sqrt(cp1 * cp2) * std::sin(dh * kDeg / 2.0);

  const double L_bar = (x.L + y.L) / 2.0;
  const double C_bar = (cp1 + cp2) / 2.0;
  double h_bar = hp1 + hp2;
  if (cp1 * cp2 != 0.0) {
    if (std::abs(hp1 - hp2) <= 180.0) h_bar = (hp1 + hp2) / 2.0;
    else if (hp1 + hp2 < 360.0) h_bar = (hp1 + hp2 + 360.0) / 2.0;
    else h_bar = (hp1 + hp2 - 360.0) / 2.0;
  }

  const double T = 1.0 - 0.17 * std::cos((h_bar - 30.0) * kDeg) + 0.24 * std::cos(2.0 * h_bar * kDeg) +
                   0.32 * std::cos((3.0 * h_bar + 6.0) * kDeg) -
                   0.20 * std::cos((4.0 * h_bar - 63.0) * kDeg);
  const double d_theta = 30.0 * std::exp(-std::pow((h_bar - 275.0) / 25.0, 2));
  const double C_bar7 = std::pow(C_bar, 7);
  const double Rc = 2.0 * std::sqrt(C_bar7 / (C_bar7 + std::pow(25.0, 7)));
  const double l50 = (L_bar - 50.0) * (L_bar - 50.0);
  const double Sl = 1.0 + 0.015 * l50 / std::sqrt(20.0 + l50);
  const double Sc = 1.0 + 0.045 * C_bar;
  const double Sh = 1.0 + 0.015 * C_bar * T;
  const double Rt = -std::sin(2.0 * d_theta * kDeg) * Rc;

  const double tl = dL / Sl, tc = dC / Sc, th = dH / Sh;
  return std::sqrt(tl * tl + tc * tc + th * th + Rt * tc * th);
}

double entropy(const RgbImage& img) {
  if (img.empty()) throw DimensionError("entropy of empty image");
  const ScalarField y = luminance(img);
  std::array<std::size_t, 256> hist{};
  for (double v : y.data()) {
    const long bin = std::lround(std::clamp(v, 0.0, 1.0) * 255.0);
    ++hist[static_cast<std::size_t>(bin)];
  }
  const double n = static_cast<double>(y.size());
  double h = 0.0;
  for (std::size_t count : hist) {
    if (count == 0) continue;
    const double p = static_cast<double>(count) / n;
    h -= p * std::log2(p);
  }
  return h;
}

UciqeTerms uciqe_terms(const RgbImage& img) {
  if (img.empty()) throw DimensionError("uciqe of empty image");
  const std::size_t n = img.r.size();
  std::vector<double> lightness(n), chroma(n);
  double sat_sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const Lab lab = srgb_to_lab(img.r[k], img.g[k], img.b[k]);
    lightness[k] = lab.L / 100.0;
    chroma[k] = std::hypot(lab.a / 100.0, lab.b / 100.0);
    if (lightness[k] > 0.0) sat_sum += chroma[k] / lightness[k];
  }

  double c_mean = 0.0;
  for (double c : chroma) c_mean += c;
  c_mean /= static_cast<double>(n);
  double c_var = 0.0;
  for (double c : chroma) c_var += (c - c_mean) * (c - c_mean);

  std::sort(lightness.begin(), lightness.end());
  const double last = static_cast<double>(n - 1);
  const auto lo = static_cast<std::size_t>(std::floor(0.01 * last));
  const auto hi = static_cast<std::size_t>(std::ceil(0.99 * last));

  UciqeTerms t;
  t.chroma_std = std::sqrt(c_var / static_cast<double>(n));
  t.luminance_contrast = lightness[hi] - lightness[lo];
  t.mean_saturation = sat_sum / static_cast<double>(n);
  return t;
}

double uciqe(const RgbImage& img) { return uciqe_terms(img).score(); }

double ciede2000(const RgbImage& img, const RgbImage& ref) {
  require_same_shape(img.r, ref.r, "ciede2000");
  if (img.empty()) throw DimensionError("ciede2000 of empty image");
  const std::size_t n = img.r.size();
  ScalarField de(img.width(), img.height());
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < n; ++k) {
    de[k] = delta_e_2000(srgb_to_lab(img.r[k], img.g[k], img.b[k]),
                         srgb_to_lab(ref.r[k], ref.g[k], ref.b[k]));
  }
  return mean(de);
}

MetricReport evaluate(const RgbImage& img, const RgbImage* reference) {
  MetricReport r;
  r.entropy = entropy(img);
  r.uciqe = uciqe(img);
  if (reference) r.ciede2000 = ciede2000(img, *reference);
  return r;
}

}  // namespace uwr
