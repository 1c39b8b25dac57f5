#include "uwr/transmission.hpp"

#include <algorithm>

#include "uwr/error.hpp"
#include "uwr/window.hpp"

namespace uwr {

void TransmissionParams::validate() const {
  if (patch < 1) throw ParameterError("transmission.patch must be >= 1");
  if (!(t_min > 0.0 && t_min < 1.0)) throw ParameterError("transmission.t_min must be in (0,1)");
}

ScalarField raw_transmission(const RgbImage& img, const RgbImage& L, int patch) {
  require_same_shape(img.r, L.r, "transmission image vs illumination");
  if (patch < 1) throw ParameterError("transmission.patch must be >= 1");
  for (int c = 0; c < 3; ++c)
    if (min_value(L.channel(c)) <= 0.0)
      throw ParameterError("illumination below floor in transmission estimate");

  // L_c(x) is fixed inside the min over the patch, so the inner min reduces to
  // the windowed minimum of I_c divided by L_c(x).
  const ScalarField min_r = window_min(img.r, patch);
  const ScalarField min_g = window_min(img.g, patch);
  const ScalarField min_b = window_min(img.b, patch);

  ScalarField t(img.width(), img.height());
  const std::size_t n = t.size();
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < n; ++k) {
    const double ratio = std::min({std::clamp(min_r[k] / L.r[k], 0.0, 1.0),
                                   std::clamp(min_g[k] / L.g[k], 0.0, 1.0),
                                   std::clamp(min_b[k] / L.b[k], 0.0, 1.0)});
    t[k] = 1.0 - ratio;
  }
  return t;
}

TransmissionStages estimate_transmission_stages(const RgbImage& img, const RgbImage& L,
                                                const TransmissionParams& p,
                                                const GuidedFilterParams& gf) {
  p.validate();
  TransmissionStages s;
  s.raw = raw_transmission(img, L, p.patch);
  s.refined = guided_filter(luminance(img), clamp(s.raw, p.t_min, 1.0), gf);
  s.refined = clamp(s.refined, p.t_min, 1.0);
  return s;
}

ScalarField estimate_transmission(const RgbImage& img, const RgbImage& L,
                                  const TransmissionParams& p, const GuidedFilterParams& gf) {
  return estimate_transmission_stages(img, L, p, gf).refined;
}

}  // namespace uwr
