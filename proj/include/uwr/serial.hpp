#pragma once

// Single-threaded reference versions of the parallel kernels. They share the
// discretization of their counterparts and exist so the OpenMP paths can be
// checked for bit-identical results and benchmarked against a baseline.

#include "uwr/field.hpp"

namespace uwr::serial {

VectorField gradient(const ScalarField& f);
ScalarField divergence(const VectorField& v);
ScalarField laplacian(const ScalarField& f);

ScalarField box_mean(const ScalarField& f, int radius);
ScalarField window_max(const ScalarField& f, int radius);
ScalarField window_min(const ScalarField& f, int radius);

}  // namespace uwr::serial
