#include "uwr/window.hpp"

#include <algorithm>
#include <vector>

#include "uwr/error.hpp"

namespace uwr {

namespace {

void check_radius(int radius) {
  if (radius < 1) throw ParameterError("window radius must be >= 1");
}

// Separable running sums: a row pass followed by a column pass, each using a
// prefix array so the cost is independent of the radius.
ScalarField window_sums(const ScalarField& f, int radius) {
  const int w = f.width(), h = f.height();
  ScalarField rows(w, h);
#pragma omp parallel
  {
    std::vector<double> prefix(static_cast<std::size_t>(w) + 1);
#pragma omp for schedule(static)
    for (int i = 0; i < h; ++i) {
      prefix[0] = 0.0;
      for (int j = 0; j < w; ++j) prefix[j + 1] = prefix[j] + f(i, j);
      for (int j = 0; j < w; ++j) {
        const int lo = std::max(j - radius, 0), hi = std::min(j + radius, w - 1);
        rows(i, j) = prefix[hi + 1] - prefix[lo];
      }
    }
  }
  ScalarField out(w, h);
#pragma omp parallel
  {
    std::vector<double> prefix(static_cast<std::size_t>(h) + 1);
#pragma omp for schedule(static)
    for (int j = 0; j < w; ++j) {
      prefix[0] = 0.0;
      for (int i = 0; i < h; ++i) prefix[i + 1] = prefix[i] + rows(i, j);
      for (int i = 0; i < h; ++i) {
        const int lo = std::max(i - radius, 0), hi = std::min(i + radius, h - 1);
        out(i, j) = prefix[hi + 1] - prefix[lo];
      }
    }
  }
  return out;
}

template <typename Pick>
ScalarField window_extremum(const ScalarField& f, int radius, Pick pick) {
  const int w = f.width(), h = f.height();
  ScalarField rows(w, h);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      const int lo = std::max(j - radius, 0), hi = std::min(j + radius, w - 1);
      double v = f(i, lo);
      for (int k = lo + 1; k <= hi; ++k) v = pick(v, f(i, k));
      rows(i, j) = v;
    }
  }
  ScalarField out(w, h);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < h; ++i) {
    const int lo = std::max(i - radius, 0), hi = std::min(i + radius, h - 1);
    for (int j = 0; j < w; ++j) {
      double v = rows(lo, j);
      for (int k = lo + 1; k <= hi; ++k) v = pick(v, rows(k, j));
      out(i, j) = v;
    }
  }
  return out;
}

}  // namespace

ScalarField box_mean(const ScalarField& f, int radius) {
  check_radius(radius);
  ScalarField out = window_sums(f, radius);
  const int w = f.width(), h = f.height();
#pragma omp parallel for schedule(static)
  for (int i = 0; i < h; ++i) {
    const int rows = std::min(i + radius, h - 1) - std::max(i - radius, 0) + 1;
    for (int j = 0; j < w; ++j) {
      const int cols = std::min(j + radius, w - 1) - std::max(j - radius, 0) + 1;
      out(i, j) /= static_cast<double>(rows * cols);
    }
  }
  return out;
}

ScalarField window_max(const ScalarField& f, int radius) {
  check_radius(radius);
  return window_extremum(f, radius, [](double a, double b) { return std::max(a, b); });
}

ScalarField window_min(const ScalarField& f, int radius) {
  check_radius(radius);
  return window_extremum(f, radius, [](double a, double b) { return std::min(a, b); });
}

}  // namespace uwr
