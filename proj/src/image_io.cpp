#include "uwr/image_io.hpp"

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>

#include "uwr/error.hpp"

namespace uwr {

namespace {

enum class Signature { png, jpeg, other };

Signature sniff(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::array<unsigned char, 8> head{};
  in.read(reinterpret_cast<char*>(head.data()), head.size());
  const auto got = in.gcount();
  static constexpr std::array<unsigned char, 8> png{0x89, 'P', 'N', 'G', 0x0D, 0x0A, 0x1A, 0x0A};
  if (got == 8 && std::equal(png.begin(), png.end(), head.begin())) return Signature::png;
  if (got >= 3 && head[0] == 0xFF && head[1] == 0xD8 && head[2] == 0xFF) return Signature::jpeg;
  return Signature::other;
}

unsigned char to_byte(double v) {
  return static_cast<unsigned char>(std::lround(std::clamp(v, 0.0, 1.0) * 255.0));
}

}  // namespace

RgbImage read_image(const std::filesystem::path& path) {
  if (!std::filesystem::is_regular_file(path)) throw IoError("cannot open " + path.string());
  if (sniff(path) == Signature::other)
    throw FormatError(path.string() + ": not a PNG or JPEG file");

  const cv::Mat bgr = cv::imread(path.string(), cv::IMREAD_COLOR);
  if (bgr.empty() || bgr.type() != CV_8UC3) throw IoError("cannot decode " + path.string());

  RgbImage img(bgr.cols, bgr.rows);
  for (int i = 0; i < bgr.rows; ++i) {
    const auto* row = bgr.ptr<cv::Vec3b>(i);
    for (int j = 0; j < bgr.cols; ++j) {
      img.b(i, j) = row[j][0] / 255.0;
      img.g(i, j) = row[j][1] / 255.0;
      img.r(i, j) = row[j][2] / 255.0;
    }
  }
  return img;
}

void write_png(const std::filesystem::path& path, const RgbImage& img) {
  cv::Mat bgr(img.height(), img.width(), CV_8UC3);
  for (int i = 0; i < img.height(); ++i) {
    auto* row = bgr.ptr<cv::Vec3b>(i);
    for (int j = 0; j < img.width(); ++j)
      row[j] = cv::Vec3b(to_byte(img.b(i, j)), to_byte(img.g(i, j)), to_byte(img.r(i, j)));
  }
  if (!cv::imwrite(path.string(), bgr)) throw IoError("cannot write " + path.string());
}

void write_png(const std::filesystem::path& path, const ScalarField& gray) {
  write_png(path, RgbImage(gray, gray, gray));
}

RgbImage requantize(const RgbImage& img) {
  RgbImage out = img;
  for (int c = 0; c < 3; ++c)
    for (double& v : out.channel(c).data()) v = to_byte(v) / 255.0;
  return out;
}

RgbImage hconcat(std::initializer_list<const RgbImage*> images) {
  int width = 0, height = -1;
  for (const RgbImage* im : images) {
    if (height >= 0 && im->height() != height) throw DimensionError("hconcat: heights differ");
    height = im->height();
    width += im->width();
  }
  RgbImage out(width, std::max(height, 0));
  int offset = 0;
  for (const RgbImage* im : images) {
    for (int c = 0; c < 3; ++c)
      for (int i = 0; i < im->height(); ++i)
        for (int j = 0; j < im->width(); ++j) out.channel(c)(i, offset + j) = im->channel(c)(i, j);
    offset += im->width();
  }
  return out;
}

}  // namespace uwr
