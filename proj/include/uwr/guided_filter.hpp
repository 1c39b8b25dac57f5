#pragma once

#include "uwr/field.hpp"
#include "uwr/window.hpp"

namespace uwr {

struct GuidedFilterParams {
  int radius = 16;
  double eps = 1e-3;

  void validate() const;

  friend bool operator==(const GuidedFilterParams&, const GuidedFilterParams&) = default;
};

// Edge-preserving guided filter on [0,1]-scaled intensities. Per window the
// output is modelled as a*guide + b with a = cov(guide, input) / (var(guide) +
// eps) and b = mean(input) - a*mean(guide); coefficients are then averaged
// over all windows covering a pixel. Windows are clipped at the border.
ScalarField guided_filter(const ScalarField& guide, const ScalarField& input,
                          const GuidedFilterParams& p);

}  // namespace uwr
