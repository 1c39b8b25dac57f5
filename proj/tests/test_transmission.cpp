#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "uwr/error.hpp"
#include "uwr/transmission.hpp"

using namespace uwr;
using namespace uwr::testing;

TEST_CASE("raw transmission matches the exhaustive patch scan exactly") {
  Rng rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const RgbImage img = random_image(8, 8, rng);
    const RgbImage L = random_image(8, 8, rng, 0.05, 1.0);
    for (int patch : {1, 2, 7}) CHECK(raw_transmission(img, L, patch) == transmission_oracle(img, L, patch));
  }
}

TEST_CASE("transmission of simple scenes") {
  SUBCASE("black scene is fully transmissive") {
    const ScalarField t = raw_transmission(RgbImage(5, 5, 0.0), RgbImage(5, 5, 0.5), 1);
    for (double v : t.data()) CHECK(v == 1.0);
  }
  SUBCASE("image equal to illumination is opaque") {
    const ScalarField t = raw_transmission(RgbImage(5, 5, 0.4), RgbImage(5, 5, 0.4), 1);
    for (double v : t.data()) CHECK(v == 0.0);
  }
}

TEST_CASE("refined transmission stays in [t_min, 1]") {
  Rng rng(62);
  const TransmissionParams p;
  for (int trial = 0; trial < 5; ++trial) {
    const RgbImage img = random_image(24, 20, rng);
    const RgbImage L = random_image(24, 20, rng, 0.01, 1.0);
    const TransmissionStages s = estimate_transmission_stages(img, L, p, {4, 1e-3});
    CHECK(min_value(s.refined) >= p.t_min);
    CHECK(max_value(s.refined) <= 1.0);
    CHECK(min_value(s.raw) >= 0.0);
    CHECK(max_value(s.raw) <= 1.0);
  }
}

TEST_CASE("transmission rejects non-positive illumination and bad parameters") {
  RgbImage L(4, 4, 0.5);
  L.b(1, 1) = 0.0;
  CHECK_THROWS_AS(raw_transmission(RgbImage(4, 4, 0.2), L, 1), ParameterError);
  CHECK_THROWS_AS(raw_transmission(RgbImage(4, 4), RgbImage(5, 4, 0.5), 1), DimensionError);
  CHECK_THROWS_AS((TransmissionParams{0, 0.05}.validate()), ParameterError);
  CHECK_THROWS_AS((TransmissionParams{7, 1.0}.validate()), ParameterError);
}
