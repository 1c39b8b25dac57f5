#include "uwr/color.hpp"

#include <algorithm>
#include <cmath>

#include "uwr/error.hpp"

namespace uwr {

void ColorParams::validate() const {
  if (!(d > 0.0)) throw ParameterError("color.d must be > 0");
  if (!(phi > 0.0)) throw ParameterError("color.phi must be > 0");
  if (!(epsilon_var > 0.0)) throw ParameterError("color.epsilon_var must be > 0");
}

ChannelMeans channel_means(const RgbImage& img) {
  if (img.empty()) throw DimensionError("channel_means of empty image");
  return {mean(img.r), mean(img.g), mean(img.b)};
}

Donor compensation_donor(const ChannelMeans& means) {
  return means.g >= means.b ? Donor::green : Donor::blue;
}

namespace {

ScalarField compensate(const ScalarField& channel, double gap, double gain) {
  ScalarField out(channel.width(), channel.height());
  const std::size_t n = out.size();
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < n; ++k) {
    const double x = channel[k];
    const double weight = std::pow(1.0 - 1.0 / (1.0 + std::exp(-x)), 2);
    out[k] = std::clamp(x + gain * weight * gap * x, 0.0, 1.0);
  }
  return out;
}

}  // namespace

RgbImage compensate_channels(const RgbImage& img, const ColorParams& p) {
  p.validate();
  const ChannelMeans m = channel_means(img);
  if (compensation_donor(m) == Donor::green) {
    return RgbImage(compensate(img.r, m.g - m.r, p.d), img.g, compensate(img.b, m.g - m.b, p.d));
  }
  return RgbImage(compensate(img.r, m.b - m.r, p.d), compensate(img.g, m.b - m.g, p.d), img.b);
}

ScalarField balance_channel(const ScalarField& channel, const ColorParams& p, bool clamp) {
  p.validate();
  const double mu = mean(channel);
  ScalarField centered(channel.width(), channel.height());
  const std::size_t n = channel.size();
  for (std::size_t k = 0; k < n; ++k) centered[k] = channel[k] - mu;
  const double stddev = std::sqrt(inner(centered, centered) / static_cast<double>(n));
  const double scale = p.phi * std::max(stddev, p.epsilon_var);

  ScalarField out(channel.width(), channel.height());
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < n; ++k) {
    const double v = 0.5 * (1.0 + centered[k] / scale);
    out[k] = clamp ? std::clamp(v, 0.0, 1.0) : v;
  }
  return out;
}

RgbImage color_balance(const RgbImage& img, const ColorParams& p, bool clamp) {
  return RgbImage(balance_channel(img.r, p, clamp), balance_channel(img.g, p, clamp),
                  balance_channel(img.b, p, clamp));
}

}  // namespace uwr
