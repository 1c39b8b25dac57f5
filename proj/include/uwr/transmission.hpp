#pragma once

#include "uwr/field.hpp"
#include "uwr/guided_filter.hpp"

namespace uwr {

struct TransmissionParams {
  int patch = 7;        // half-width of the local patch; 7 gives 15x15
  double t_min = 0.05;

  void validate() const;

  friend bool operator==(const TransmissionParams&, const TransmissionParams&) = default;
};

// t(x) = 1 - min over y in the patch around x, min over channels c, of
// clamp(I_c(y) / L_c(x), 0, 1). The ratio uses the illumination at the patch
// centre. Throws ParameterError when L has a non-positive value.
ScalarField raw_transmission(const RgbImage& img, const RgbImage& L, int patch);

struct TransmissionStages {
  ScalarField raw;
  ScalarField refined;  // clamped, guided-filtered, clamped again to [t_min, 1]
};

// The guide for refinement is the luminance of img.
TransmissionStages estimate_transmission_stages(const RgbImage& img, const RgbImage& L,
                                                const TransmissionParams& p,
                                                const GuidedFilterParams& gf);
ScalarField estimate_transmission(const RgbImage& img, const RgbImage& L,
                                  const TransmissionParams& p, const GuidedFilterParams& gf);

}  // namespace uwr
