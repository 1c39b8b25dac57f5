#pragma once

// Dense 2-D fields and the discrete differential operators shared by every
// stage of the restoration pipeline.
//
// Indexing is (row, col) with row = i = y and col = j = x everywhere.
// Storage is row-major. All arithmetic is double precision.

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace uwr {

class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(int width, int height, double value = 0.0);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }

  double& operator()(int row, int col) {
    return data_[static_cast<std::size_t>(row) * width_ + col];
  }
  double operator()(int row, int col) const {
    return data_[static_cast<std::size_t>(row) * width_ + col];
  }
  double& operator[](std::size_t k) { return data_[k]; }
  double operator[](std::size_t k) const { return data_[k]; }

  std::span<double> data() { return data_; }
  std::span<const double> data() const { return data_; }
  std::span<double> row(int r) {
    return std::span<double>(data_).subspan(static_cast<std::size_t>(r) * width_, width_);
  }
  std::span<const double> row(int r) const {
    return std::span<const double>(data_).subspan(static_cast<std::size_t>(r) * width_, width_);
  }

  bool same_shape(const ScalarField& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }
  bool all_finite() const;

  friend bool operator==(const ScalarField&, const ScalarField&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

struct VectorField {
  VectorField() = default;
  VectorField(int width, int height) : x(width, height), y(width, height) {}
  VectorField(ScalarField x_, ScalarField y_);

  int width() const { return x.width(); }
  int height() const { return x.height(); }
  bool same_shape(const ScalarField& f) const { return x.same_shape(f); }
  bool all_finite() const { return x.all_finite() && y.all_finite(); }

  friend bool operator==(const VectorField&, const VectorField&) = default;

  ScalarField x;
  ScalarField y;
};

struct RgbImage {
  RgbImage() = default;
  RgbImage(int width, int height, double value = 0.0)
      : r(width, height, value), g(width, height, value), b(width, height, value) {}
  RgbImage(ScalarField r_, ScalarField g_, ScalarField b_);

  int width() const { return r.width(); }
  int height() const { return r.height(); }
  bool empty() const { return r.empty(); }

  ScalarField& channel(int c) { return c == 0 ? r : (c == 1 ? g : b); }
  const ScalarField& channel(int c) const { return c == 0 ? r : (c == 1 ? g : b); }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

  ScalarField r;
  ScalarField g;
  ScalarField b;
};

// Throws DimensionError when the shapes differ.
void require_same_shape(const ScalarField& a, const ScalarField& b, const char* what);

// Forward differences; the derivative component is 0 on the last column
// (x) / last row (y), which realizes a replicate (Neumann) boundary.
VectorField gradient(const ScalarField& f);

// Backward differences, the negative adjoint of gradient():
// <gradient(f), v> == -<f, divergence(v)>.
ScalarField divergence(const VectorField& v);

// 5-point stencil with replicate boundary. Equals divergence(gradient(f)).
ScalarField laplacian(const ScalarField& f);

// Periodic counterparts used by the FFT-diagonalized subproblems.
VectorField gradient_periodic(const ScalarField& f);
ScalarField divergence_periodic(const VectorField& v);

// Reductions are accumulated per row and then summed in row order, so the
// result does not depend on the number of threads.
double sum(const ScalarField& f);
double mean(const ScalarField& f);
double inner(const ScalarField& a, const ScalarField& b);
double inner(const VectorField& a, const VectorField& b);
double norm(const ScalarField& f);
double norm(const VectorField& v);
double min_value(const ScalarField& f);
double max_value(const ScalarField& f);

// Pointwise |v|.
ScalarField magnitude(const VectorField& v);

ScalarField clamp(const ScalarField& f, double lo, double hi);
ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, const ScalarField& f);
VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator*(double s, const VectorField& v);

// Rec.601 luma 0.299 R + 0.587 G + 0.114 B.
ScalarField luminance(const RgbImage& img);
// Unweighted mean of the three channels.
ScalarField channel_average(const RgbImage& img);

}  // namespace uwr
