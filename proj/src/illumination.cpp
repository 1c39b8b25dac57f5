#include "uwr/illumination.hpp"

#include <algorithm>
#include <cmath>

#include "uwr/error.hpp"
#include "uwr/window.hpp"

namespace uwr {

void IlluminationParams::validate() const {
  if (patch < 1) throw ParameterError("illumination.patch must be >= 1");
  if (!(theta > 0.0 && theta < 1.0)) throw ParameterError("illumination.theta must be in (0,1)");
  if (!(delta > 0.0 && delta < 1.0)) throw ParameterError("illumination.delta must be in (0,1)");
  if (!(floor > 0.0)) throw ParameterError("illumination.floor must be > 0");
}

RgbImage local_max_illumination(const RgbImage& img, const IlluminationParams& p) {
  p.validate();
  RgbImage out;
  for (int c = 0; c < 3; ++c) {
    ScalarField m = window_max(img.channel(c), p.patch);
    for (double& x : m.data()) x = std::max(x, p.floor);
    out.channel(c) = std::move(m);
  }
  return out;
}

ScalarField brightness_mask(const RgbImage& L) {
  const ScalarField avg = channel_average(L);
  const double global = (sum(L.r) + sum(L.g) + sum(L.b)) / (3.0 * static_cast<double>(avg.size()));
  ScalarField mask(avg.width(), avg.height());
  const std::size_t n = mask.size();
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < n; ++k) mask[k] = avg[k] > global ? 1.0 : 0.0;
  return mask;
}

ScalarField gamma_map(const ScalarField& mask_refined, const IlluminationParams& p) {
  p.validate();
  const double mu = mean(mask_refined);
  const double range = max_value(mask_refined) - min_value(mask_refined);
  ScalarField gamma(mask_refined.width(), mask_refined.height());
  const std::size_t n = gamma.size();
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < n; ++k) {
    const double exponent = range > 0.0 ? (mask_refined[k] - mu) / range : 0.0;
    gamma[k] = 1.0 - p.delta * std::pow(p.theta, exponent);
  }
  return gamma;
}

RgbImage apply_gamma(const RgbImage& L, const ScalarField& gamma) {
  require_same_shape(L.r, gamma, "apply_gamma");
  RgbImage out(L.width(), L.height());
  for (int c = 0; c < 3; ++c) {
    const ScalarField& in = L.channel(c);
    if (min_value(in) <= 0.0) throw ParameterError("apply_gamma requires L > 0");
    ScalarField& o = out.channel(c);
    const std::size_t n = in.size();
#pragma omp parallel for schedule(static)
    for (std::size_t k = 0; k < n; ++k) o[k] = std::pow(in[k], gamma[k]);
  }
  return out;
}

IlluminationStages estimate_illumination_stages(const RgbImage& img, const IlluminationParams& p,
                                                const GuidedFilterParams& gf) {
  IlluminationStages s;
  s.initial = local_max_illumination(img, p);
  s.mask = brightness_mask(s.initial);
  s.mask_refined = guided_filter(channel_average(s.initial), s.mask, gf);
  s.gamma = gamma_map(s.mask_refined, p);
  s.illumination = apply_gamma(s.initial, s.gamma);
  for (int c = 0; c < 3; ++c)
    for (double& x : s.illumination.channel(c).data()) x = std::clamp(x, p.floor, 1.0);
  return s;
}

RgbImage estimate_illumination(const RgbImage& img, const IlluminationParams& p,
                               const GuidedFilterParams& gf) {
  return estimate_illumination_stages(img, p, gf).illumination;
}

}  // namespace uwr
