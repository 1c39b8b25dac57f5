#pragma once

// Two-step adaptive color correction: mean-gap channel compensation driven by
// the least attenuated of green/blue, then a per-channel statistical stretch.

#include "uwr/field.hpp"

namespace uwr {

struct ColorParams {
  double d = 5.0;              // compensation gain
  double phi = 2.3;            // balance spread factor
  double epsilon_var = 1e-6;   // lower bound on the channel spread

  void validate() const;

  friend bool operator==(const ColorParams&, const ColorParams&) = default;
};

struct ChannelMeans {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;
};

enum class Donor { green, blue };

ChannelMeans channel_means(const RgbImage& img);

// Green donates when mean(g) >= mean(b), blue otherwise.
Donor compensation_donor(const ChannelMeans& means);

// I_c += d * (1 - sigmoid(I_c))^2 * (mean_donor - mean_c) * I_c for the two
// non-donor channels, clamped to [0,1]. The donor channel is copied unchanged.
RgbImage compensate_channels(const RgbImage& img, const ColorParams& p);

// 0.5 * (1 + (I - mean) / (phi * spread)) with spread the population standard
// deviation bounded below by epsilon_var. Clamped to [0,1] unless clamp=false.
ScalarField balance_channel(const ScalarField& channel, const ColorParams& p, bool clamp = true);
RgbImage color_balance(const RgbImage& img, const ColorParams& p, bool clamp = true);

}  // namespace uwr
