#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "uwr/error.hpp"
#include "uwr/illumination.hpp"

using namespace uwr;
using namespace uwr::testing;

TEST_CASE("local maximum illumination") {
  const IlluminationParams p;
  SUBCASE("constant channel") {
    const RgbImage out = local_max_illumination(RgbImage(8, 8, 0.4), p);
    for (double v : out.g.data()) CHECK(v == 0.4);
  }
  SUBCASE("impulse spreads over the 5x5 block, floor elsewhere") {
    RgbImage img(9, 9);
    img.r(4, 4) = 1.0;
    const RgbImage out = local_max_illumination(img, p);
    for (int i = 0; i < 9; ++i)
      for (int j = 0; j < 9; ++j) {
        const bool in_block = std::abs(i - 4) <= 2 && std::abs(j - 4) <= 2;
        CHECK(out.r(i, j) == (in_block ? 1.0 : p.floor));
      }
  }
  SUBCASE("random matches the window scan and dominates the input") {
    Rng rng(51);
    const RgbImage img = random_image(8, 8, rng);
    const RgbImage out = local_max_illumination(img, p);
    for (int c = 0; c < 3; ++c) {
      const ScalarField ref = window_max_oracle(img.channel(c), 2);
      for (std::size_t k = 0; k < ref.size(); ++k) {
        CHECK(out.channel(c)[k] == std::max(ref[k], p.floor));
        CHECK(out.channel(c)[k] >= img.channel(c)[k]);
      }
    }
  }
}

TEST_CASE("brightness mask") {
  SUBCASE("constant illumination gives an empty mask") {
    CHECK(sum(brightness_mask(RgbImage(6, 6, 0.5))) == 0.0);
  }
  SUBCASE("bright half against dark half") {
    RgbImage L(6, 4, 0.1);
    for (int c = 0; c < 3; ++c)
      for (int i = 0; i < 4; ++i)
        for (int j = 3; j < 6; ++j) L.channel(c)(i, j) = 0.9;
    const ScalarField m = brightness_mask(L);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 6; ++j) CHECK(m(i, j) == (j >= 3 ? 1.0 : 0.0));
  }
  SUBCASE("random matches a per-pixel threshold") {
    Rng rng(52);
    const RgbImage L = random_image(10, 7, rng);
    double global = 0.0;
    for (int c = 0; c < 3; ++c)
      for (double v : L.channel(c).data()) global += v;
    global /= 3.0 * 70.0;
    const ScalarField m = brightness_mask(L);
    for (std::size_t k = 0; k < m.size(); ++k) {
      const double avg = (L.r[k] + L.g[k] + L.b[k]) / 3.0;
      CHECK(m[k] == (avg > global ? 1.0 : 0.0));
    }
  }
}

TEST_CASE("gamma map") {
  const IlluminationParams p;
  SUBCASE("constant mask gives one half") {
    const ScalarField g = gamma_map(ScalarField(5, 5, 0.3), p);
    for (double v : g.data())
      CHECK(v == doctest::Approx(0.5).epsilon(1e-15));
  }
  SUBCASE("binary mask with mean one half") {
    ScalarField m(2, 1);
    m[1] = 1.0;
    const ScalarField g = gamma_map(m, p);
    CHECK(g[1] == doctest::Approx(1.0 - 0.5 * std::pow(0.8, 0.5)).epsilon(1e-14));
    CHECK(g[1] == doctest::Approx(0.55279).epsilon(1e-5));
    CHECK(g[0] < g[1]);
  }
  SUBCASE("values are legal exponents in (0,1)") {
    Rng rng(53);
    const ScalarField g = gamma_map(random_field(12, 12, rng, 0.0, 1.0), p);
    CHECK(min_value(g) > 0.0);
    CHECK(max_value(g) < 1.0);
  }
}

TEST_CASE("gamma application") {
  RgbImage L(2, 1, 0.25);
  L.r[1] = 1.0;
  const RgbImage half = apply_gamma(L, ScalarField(2, 1, 0.5));
  CHECK(half.r[0] == doctest::Approx(0.5));
  CHECK(half.r[1] == 1.0);
  CHECK(apply_gamma(L, ScalarField(2, 1, 1.0)) == L);

  Rng rng(54);
  const RgbImage R = random_image(6, 6, rng, 0.01, 1.0);
  const RgbImage up = apply_gamma(R, random_field(6, 6, rng, 0.1, 1.0));
  for (int c = 0; c < 3; ++c)
    for (std::size_t k = 0; k < 36; ++k) CHECK(up.channel(c)[k] >= R.channel(c)[k]);

  L.g[0] = 0.0;
  CHECK_THROWS_AS(apply_gamma(L, ScalarField(2, 1, 0.5)), ParameterError);
}

TEST_CASE("full illumination estimate") {
  const IlluminationParams p;
  const GuidedFilterParams gf{8, 1e-4};
  SUBCASE("constant image") {
    const RgbImage L = estimate_illumination(RgbImage(12, 12, 0.36), p, gf);
    for (int c = 0; c < 3; ++c)
      for (double v : L.channel(c).data()) CHECK(v == doctest::Approx(0.6).epsilon(1e-12));
  }
  SUBCASE("dark half is lifted more than the bright half") {
    RgbImage img(32, 16, 0.15);
    for (int c = 0; c < 3; ++c)
      for (int i = 0; i < 16; ++i)
        for (int j = 16; j < 32; ++j) img.channel(c)(i, j) = 0.8;
    const IlluminationStages s = estimate_illumination_stages(img, p, gf);
    double lift_dark = 0.0, lift_bright = 0.0;
    for (int i = 0; i < 16; ++i)
      for (int j = 0; j < 32; ++j) {
        const double lift = s.illumination.g(i, j) - s.initial.g(i, j);
        (j < 16 ? lift_dark : lift_bright) += lift;
      }
    CHECK(lift_dark > lift_bright);
    for (int i = 0; i < 16; ++i) CHECK(s.gamma(i, 2) < s.gamma(i, 29));
  }
  SUBCASE("output lies in [floor, 1]") {
    Rng rng(55);
    const RgbImage L = estimate_illumination(random_image(20, 20, rng), p, gf);
    for (int c = 0; c < 3; ++c) {
      CHECK(min_value(L.channel(c)) >= p.floor);
      CHECK(max_value(L.channel(c)) <= 1.0);
    }
  }
}

TEST_CASE("illumination parameters are validated") {
  CHECK_THROWS_AS((IlluminationParams{0, 0.8, 0.5, 1e-3}.validate()), ParameterError);
  CHECK_THROWS_AS((IlluminationParams{2, 1.0, 0.5, 1e-3}.validate()), ParameterError);
  CHECK_THROWS_AS((IlluminationParams{2, 0.8, 0.0, 1e-3}.validate()), ParameterError);
  CHECK_THROWS_AS((IlluminationParams{2, 0.8, 0.5, 0.0}.validate()), ParameterError);
}
