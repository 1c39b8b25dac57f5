#pragma once

// Local ambient illumination: brightest pixel per local block, a binary
// brightness mask refined by the guided filter, and a mask-driven gamma that
// lifts dark regions more than bright ones.

#include "uwr/field.hpp"
#include "uwr/guided_filter.hpp"

namespace uwr {

struct IlluminationParams {
  int patch = 2;          // half-width; 2 gives the 5x5 block
  double theta = 0.8;     // gamma base
  double delta = 0.5;     // gamma depth
  double floor = 1e-3;    // lower bound on any illumination value

  void validate() const;

  friend bool operator==(const IlluminationParams&, const IlluminationParams&) = default;
};

RgbImage local_max_illumination(const RgbImage& img, const IlluminationParams& p);

// 1 where the pixel's across-channel mean exceeds the global mean of L over
// every channel and pixel, 0 elsewhere.
ScalarField brightness_mask(const RgbImage& L);

// 1 - delta * theta^((M - mean M) / (max M - min M)); exponent is 0 when the
// mask is constant.
ScalarField gamma_map(const ScalarField& mask_refined, const IlluminationParams& p);

// L^gamma per channel. Throws ParameterError for any L <= 0.
RgbImage apply_gamma(const RgbImage& L, const ScalarField& gamma);

struct IlluminationStages {
  RgbImage initial;          // local block maximum
  ScalarField mask;          // binary brightness mask
  ScalarField mask_refined;  // after the guided filter
  ScalarField gamma;
  RgbImage illumination;     // final L, in [floor, 1]
};

IlluminationStages estimate_illumination_stages(const RgbImage& img, const IlluminationParams& p,
                                                const GuidedFilterParams& gf);
RgbImage estimate_illumination(const RgbImage& img, const IlluminationParams& p,
                               const GuidedFilterParams& gf);

}  // namespace uwr
