#pragma once

// No-reference and full-reference quality metrics: Shannon entropy of the
// 8-bit luminance histogram, UCIQE, and mean CIEDE2000 colour difference.

#include <optional>
#include <string>

#include "uwr/field.hpp"

namespace uwr {

struct Lab {
  double L = 0.0;
  double a = 0.0;
  double b = 0.0;
};

// sRGB in [0,1] to CIELab, D65 reference white.
Lab srgb_to_lab(double r, double g, double b);

// CIEDE2000 colour difference with kL = kC = kH = 1.
double delta_e_2000(const Lab& x, const Lab& y);

// Entropy in bits of the 256-bin histogram of round(255 * luma).
double entropy(const RgbImage& img);

struct UciqeTerms {
  double chroma_std = 0.0;          // population std of chroma
  double luminance_contrast = 0.0;  // 99% quantile minus 1% quantile of lightness
  double mean_saturation = 0.0;     // mean of chroma / lightness

  static constexpr double kChroma = 0.4680;
  static constexpr double kContrast = 0.2745;
  static constexpr double kSaturation = 0.2576;

  double score() const {
    return kChroma * chroma_std + kContrast * luminance_contrast + kSaturation * mean_saturation;
  }
};

// Lightness, a and b are each divided by 100 before the terms are formed.
UciqeTerms uciqe_terms(const RgbImage& img);
double uciqe(const RgbImage& img);

// Mean per-pixel CIEDE2000 between two sRGB images of equal size.
double ciede2000(const RgbImage& img, const RgbImage& ref);

struct MetricReport {
  std::string path;
  double entropy = 0.0;
  double uciqe = 0.0;
  std::optional<double> ciede2000;
};

MetricReport evaluate(const RgbImage& img, const RgbImage* reference = nullptr);

}  // namespace uwr
