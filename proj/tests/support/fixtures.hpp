#pragma once

#include <cstdint>
#include <random>

#include "uwr/field.hpp"

namespace uwr::testing {

using Rng = std::mt19937_64;

ScalarField random_field(int w, int h, Rng& rng, double lo = -1.0, double hi = 1.0);
VectorField random_vector_field(int w, int h, Rng& rng, double lo = -1.0, double hi = 1.0);
RgbImage random_image(int w, int h, Rng& rng, double lo = 0.0, double hi = 1.0);

// Known R*, L*, t and I = R* L* t + L* (1 - t). R* is a few smooth-edged
// periodic blobs on a background, L* a low-frequency periodic ripple, t a
// smooth field in [0.45, 0.9].
struct ForwardFixture {
  ScalarField R, L, t, I;
};
ForwardFixture forward_fixture(int n);

// A clear scene pushed through channel-dependent attenuation, a blue or green
// backscatter veil and uneven lighting, then requantized to 8 bits.
struct UnderwaterScene {
  RgbImage clear;
  RgbImage degraded;
};
UnderwaterScene underwater_scene(int w, int h, std::uint64_t seed);

}  // namespace uwr::testing
