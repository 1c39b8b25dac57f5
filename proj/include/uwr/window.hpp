#pragma once

#include "uwr/field.hpp"

namespace uwr {

// Mean over the (2r+1)^2 window clipped to the image; each pixel divides by
// the number of pixels its clipped window actually covers.
ScalarField box_mean(const ScalarField& f, int radius);

// Max / min over the (2r+1)^2 window clipped to the image.
ScalarField window_max(const ScalarField& f, int radius);
ScalarField window_min(const ScalarField& f, int radius);

}  // namespace uwr
