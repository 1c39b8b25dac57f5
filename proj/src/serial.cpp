#include "uwr/serial.hpp"

#include <algorithm>
#include <vector>

#include "uwr/error.hpp"

namespace uwr::serial {

VectorField gradient(const ScalarField& f) {
  const int w = f.width(), h = f.height();
  VectorField g(w, h);
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
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      const double left = j > 0 ? v.x(i, j - 1) : 0.0;
      const double here_x = j + 1 < w ? v.x(i, j) : 0.0;
      const double up = i > 0 ? v.y(i - 1, j) : 0.0;
      const double here_y = i + 1 < h ? v.y(i, j) : 0.0;
      d(i, j) = (here_x - left) + (here_y - up);
    }
  }
  return d;
}

ScalarField laplacian(const ScalarField& f) {
  const int w = f.width(), h = f.height();
  ScalarField out(w, h);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      const double c = f(i, j);
      const double up = f(std::max(i - 1, 0), j);
      const double down = f(std::min(i + 1, h - 1), j);
      const double left = f(i, std::max(j - 1, 0));
      const double right = f(i, std::min(j + 1, w - 1));
      out(i, j) = (up - c) + (down - c) + (left - c) + (right - c);
    }
  }
  return out;
}

ScalarField box_mean(const ScalarField& f, int radius) {
  if (radius < 1) throw ParameterError("window radius must be >= 1");
  const int w = f.width(), h = f.height();
  ScalarField rows(w, h), out(w, h);
  std::vector<double> prefix;
  for (int i = 0; i < h; ++i) {
    prefix.assign(static_cast<std::size_t>(w) + 1, 0.0);
    for (int j = 0; j < w; ++j) prefix[j + 1] = prefix[j] + f(i, j);
    for (int j = 0; j < w; ++j)
      rows(i, j) = prefix[std::min(j + radius, w - 1) + 1] - prefix[std::max(j - radius, 0)];
  }
  for (int j = 0; j < w; ++j) {
    prefix.assign(static_cast<std::size_t>(h) + 1, 0.0);
    for (int i = 0; i < h; ++i) prefix[i + 1] = prefix[i] + rows(i, j);
    for (int i = 0; i < h; ++i)
      out(i, j) = prefix[std::min(i + radius, h - 1) + 1] - prefix[std::max(i - radius, 0)];
  }
  for (int i = 0; i < h; ++i) {
    const int nr = std::min(i + radius, h - 1) - std::max(i - radius, 0) + 1;
    for (int j = 0; j < w; ++j) {
      const int nc = std::min(j + radius, w - 1) - std::max(j - radius, 0) + 1;
      out(i, j) /= static_cast<double>(nr * nc);
    }
  }
  return out;
}

namespace {

template <typename Pick>
ScalarField extremum(const ScalarField& f, int radius, Pick pick) {
  if (radius < 1) throw ParameterError("window radius must be >= 1");
  const int w = f.width(), h = f.height();
  ScalarField out(w, h);
  for (int i = 0; i < h; ++i) {
    for (int j = 0; j < w; ++j) {
      double v = f(i, j);
      for (int a = std::max(i - radius, 0); a <= std::min(i + radius, h - 1); ++a)
        for (int b = std::max(j - radius, 0); b <= std::min(j + radius, w - 1); ++b)
          v = pick(v, f(a, b));
      out(i, j) = v;
    }
  }
  return out;
}

}  // namespace

ScalarField window_max(const ScalarField& f, int radius) {
  return extremum(f, radius, [](double a, double b) { return std::max(a, b); });
}

ScalarField window_min(const ScalarField& f, int radius) {
  return extremum(f, radius, [](double a, double b) { return std::min(a, b); });
}

}  // namespace uwr::serial
