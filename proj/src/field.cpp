#include "uwr/field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "uwr/error.hpp"

namespace uwr {

ScalarField::ScalarField(int width, int height, double value)
    : width_(width), height_(height) {
  if (width < 0 || height < 0) throw DimensionError("negative field dimensions");
  data_.assign(static_cast<std::size_t>(width) * height, value);
}

bool ScalarField::all_finite() const {
  return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
}

VectorField::VectorField(ScalarField x_, ScalarField y_) : x(std::move(x_)), y(std::move(y_)) {
  require_same_shape(x, y, "VectorField components");
}

RgbImage::RgbImage(ScalarField r_, ScalarField g_, ScalarField b_)
    : r(std::move(r_)), g(std::move(g_)), b(std::move(b_)) {
  require_same_shape(r, g, "RgbImage channels");
  require_same_shape(r, b, "RgbImage channels");
}

void require_same_shape(const ScalarField& a, const ScalarField& b, const char* what) {
  if (!a.same_shape(b)) {
    throw DimensionError(std::string(what) + ": shape " + std::to_string(a.width()) + "x" +
                         std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                         std::to_string(b.height()));
  }
}

VectorField gradient(const ScalarField& f) {
  const int w = f.width(), h = f.height();
  VectorField g(w, h);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      g.x(i, j) = j + 1 < w ? f(i, j + 1) - f(i, j) : 0.0;
      g.y(i, j) = i + 1 < h ? f(i + 1, j) - f(i, j) : 0.0;
    }
  }
  return g;
}

ScalarField divergence(const VectorField& v) {
  const int w = v.width(), h = v.height();
  ScalarField d(w, h);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      double dx;
      if (w == 1) dx = 0.0;
      else if (j == 0) dx = v.x(i, j);
      else if (j == w - 1) dx = -v.x(i, j - 1);
      else dx = v.x(i, j) - v.x(i, j - 1);
      double dy;
      if (h == 1) dy = 0.0;
      else if (i == 0) dy = v.y(i, j);
      else if (i == h - 1) dy = -v.y(i - 1, j);
      else dy = v.y(i, j) - v.y(i - 1, j);
      d(i, j) = dx + dy;
    }
  }
  return d;
}

ScalarField laplacian(const ScalarField& f) {
  const int w = f.width(), h = f.height();
  ScalarField out(w, h);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < h; ++i) {
    const int up = std::max(i - 1, 0), down = std::min(i + 1, h - 1);
    for (int j = 0; j < w; ++j) {
      const int left = std::max(j - 1, 0), right = std::min(j + 1, w - 1);
      const double c = f(i, j);
      out(i, j) = (f(up, j) - c) + (f(down, j) - c) + (f(i, left) - c) + (f(i, right) - c);
    }
  }
  return out;
}

VectorField gradient_periodic(const ScalarField& f) {
  const int w = f.width(), h = f.height();
  VectorField g(w, h);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < h; ++i) {
    const int down = (i + 1) % h;
    for (int j = 0; j < w; ++j) {
      const int right = (j + 1) % w;
      g.x(i, j) = f(i, right) - f(i, j);
      g.y(i, j) = f(down, j) - f(i, j);
    }
  }
  return g;
}

ScalarField divergence_periodic(const VectorField& v) {
  const int w = v.width(), h = v.height();
  ScalarField d(w, h);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < h; ++i) {
    const int up = (i + h - 1) % h;
    for (int j = 0; j < w; ++j) {
      const int left = (j + w - 1) % w;
      d(i, j) = (v.x(i, j) - v.x(i, left)) + (v.y(i, j) - v.y(up, j));
    }
  }
  return d;
}

namespace {

template <typename RowFn>
double row_ordered_sum(int height, RowFn&& row_fn) {
  std::vector<double> partial(static_cast<std::size_t>(height), 0.0);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < height; ++i) partial[i] = row_fn(i);
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

}  // namespace

double sum(const ScalarField& f) {
  return row_ordered_sum(f.height(), [&](int i) {
    double s = 0.0;
    for (double x : f.row(i)) s += x;
    return s;
  });
}

double mean(const ScalarField& f) {
  if (f.empty()) throw DimensionError("mean of empty field");
  return sum(f) / static_cast<double>(f.size());
}

double inner(const ScalarField& a, const ScalarField& b) {
  require_same_shape(a, b, "inner");
  return row_ordered_sum(a.height(), [&](int i) {
    auto ra = a.row(i), rb = b.row(i);
    double s = 0.0;
    for (std::size_t j = 0; j < ra.size(); ++j) s += ra[j] * rb[j];
    return s;
  });
}

double inner(const VectorField& a, const VectorField& b) {
  return inner(a.x, b.x) + inner(a.y, b.y);
}

double norm(const ScalarField& f) { return std::sqrt(inner(f, f)); }
double norm(const VectorField& v) { return std::sqrt(inner(v, v)); }

double min_value(const ScalarField& f) {
  if (f.empty()) throw DimensionError("min of empty field");
  return *std::min_element(f.data().begin(), f.data().end());
}

double max_value(const ScalarField& f) {
  if (f.empty()) throw DimensionError("max of empty field");
  return *std::max_element(f.data().begin(), f.data().end());
}

ScalarField magnitude(const VectorField& v) {
  ScalarField m(v.width(), v.height());
  const std::size_t n = m.size();
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < n; ++k) m[k] = std::hypot(v.x[k], v.y[k]);
  return m;
}

namespace {

template <typename Op>
ScalarField zip(const ScalarField& a, const ScalarField& b, Op op) {
  require_same_shape(a, b, "elementwise op");
  ScalarField out(a.width(), a.height());
  const std::size_t n = out.size();
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < n; ++k) out[k] = op(a[k], b[k]);
  return out;
}

}  // namespace

ScalarField clamp(const ScalarField& f, double lo, double hi) {
  ScalarField out(f.width(), f.height());
  const std::size_t n = out.size();
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < n; ++k) out[k] = std::clamp(f[k], lo, hi);
  return out;
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return zip(a, b, [](double x, double y) { return x + y; });
}
ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return zip(a, b, [](double x, double y) { return x - y; });
}
ScalarField operator*(double s, const ScalarField& f) {
  ScalarField out = f;
  for (double& x : out.data()) x *= s;
  return out;
}
VectorField operator+(const VectorField& a, const VectorField& b) {
  return VectorField(a.x + b.x, a.y + b.y);
}
VectorField operator-(const VectorField& a, const VectorField& b) {
  return VectorField(a.x - b.x, a.y - b.y);
}
VectorField operator*(double s, const VectorField& v) { return VectorField(s * v.x, s * v.y); }

ScalarField luminance(const RgbImage& img) {
  ScalarField out(img.width(), img.height());
  const std::size_t n = out.size();
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < n; ++k)
    out[k] = 0.299 * img.r[k] + 0.587 * img.g[k] + 0.114 * img.b[k];
  return out;
}

ScalarField channel_average(const RgbImage& img) {
  ScalarField out(img.width(), img.height());
  const std::size_t n = out.size();
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < n; ++k) out[k] = (img.r[k] + img.g[k] + img.b[k]) / 3.0;
  return out;
}

}  // namespace uwr
