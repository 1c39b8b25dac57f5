#pragma once

#include <filesystem>
#include <initializer_list>

#include "uwr/field.hpp"

namespace uwr {

// Reads an 8-bit PNG or JPEG as RGB scaled to [0,1] (value / 255). Grayscale
// files are expanded to three equal channels.
// Throws IoError when the file cannot be opened or decoded, FormatError when
// its signature is neither PNG nor JPEG.
RgbImage read_image(const std::filesystem::path& path);

// Writes an 8-bit RGB PNG; values are clamped to [0,1] and rounded.
void write_png(const std::filesystem::path& path, const RgbImage& img);
void write_png(const std::filesystem::path& path, const ScalarField& gray);

// Rounds every value to the nearest k/255 after clamping to [0,1].
RgbImage requantize(const RgbImage& img);

// Places images side by side, left to right. All must share a height.
RgbImage hconcat(std::initializer_list<const RgbImage*> images);

}  // namespace uwr
