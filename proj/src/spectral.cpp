#include "uwr/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include "uwr/error.hpp"

namespace uwr {

namespace {

// FFTW planning is not thread-safe; execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwBuffer {
  explicit FftwBuffer(std::size_t n)
      : data(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * n))) {
    if (!data) throw std::bad_alloc();
  }
  ~FftwBuffer() { fftw_free(data); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  fftw_complex* data;
};

}  // namespace

struct FftPlan::Impl {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

FftPlan::FftPlan(int width, int height) : width_(width), height_(height), impl_(std::make_unique<Impl>()) {
  if (width < 1 || height < 1) throw DimensionError("FFT of empty field");
  const std::size_t n = static_cast<std::size_t>(width) * height;
  FftwBuffer in(n), out(n);
  std::lock_guard lock(planner_mutex());
  impl_->forward = fftw_plan_dft_2d(height, width, in.data, out.data, FFTW_FORWARD, FFTW_ESTIMATE);
  impl_->backward = fftw_plan_dft_2d(height, width, in.data, out.data, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!impl_->forward || !impl_->backward) throw Error("FFTW planning failed");
}

FftPlan::~FftPlan() {
  if (!impl_) return;
  std::lock_guard lock(planner_mutex());
  if (impl_->forward) fftw_destroy_plan(impl_->forward);
  if (impl_->backward) fftw_destroy_plan(impl_->backward);
}

ComplexField FftPlan::forward(const ScalarField& f) const {
  if (f.width() != width_ || f.height() != height_)
    throw DimensionError("fft2_forward: field does not match plan size");
  const std::size_t n = f.size();
  FftwBuffer in(n), out(n);
  for (std::size_t k = 0; k < n; ++k) {
    in.data[k][0] = f[k];
    in.data[k][1] = 0.0;
  }
  fftw_execute_dft(impl_->forward, in.data, out.data);
  ComplexField F(width_, height_);
  for (std::size_t k = 0; k < n; ++k) F[k] = Complex(out.data[k][0], out.data[k][1]);
  return F;
}

ScalarField FftPlan::inverse(const ComplexField& F, double* max_imag) const {
  if (F.width() != width_ || F.height() != height_)
    throw DimensionError("fft2_inverse: spectrum does not match plan size");
  const std::size_t n = F.size();
  FftwBuffer in(n), out(n);
  for (std::size_t k = 0; k < n; ++k) {
    in.data[k][0] = F[k].real();
    in.data[k][1] = F[k].imag();
  }
  fftw_execute_dft(impl_->backward, in.data, out.data);
  const double scale = 1.0 / static_cast<double>(n);
  ScalarField f(width_, height_);
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    f[k] = out.data[k][0] * scale;
    worst = std::max(worst, std::abs(out.data[k][1] * scale));
  }
  if (max_imag) *max_imag = worst;
  return f;
}

ComplexField fft2_forward(const ScalarField& f) { return FftPlan(f.width(), f.height()).forward(f); }

ScalarField fft2_inverse(const ComplexField& F, double* max_imag) {
  return FftPlan(F.width(), F.height()).inverse(F, max_imag);
}

SpectralKernel::SpectralKernel(int width, int height, double ratio)
    : width_(width), height_(height), ratio_(ratio) {
  if (width < 1 || height < 1) throw DimensionError("spectral kernel of empty field");
  if (!(ratio > 0.0) || !std::isfinite(ratio))
    throw ParameterError("spectral kernel ratio must be positive and finite");
  const double two_pi = 2.0 * std::numbers::pi;
  cos_x_.resize(width);
  sin_x_.resize(width);
  for (int k = 0; k < width; ++k) {
    const double z = two_pi * k / width;
    cos_x_[k] = std::cos(z);
    sin_x_[k] = std::sin(z);
  }
  cos_y_.resize(height);
  sin_y_.resize(height);
  for (int k = 0; k < height; ++k) {
    const double z = two_pi * k / height;
    cos_y_[k] = std::cos(z);
    sin_y_[k] = std::sin(z);
  }
  plan_ = std::make_shared<const FftPlan>(width, height);
}

// Forward difference along an axis <-> (e^{iZ} - 1); backward <-> (1 - e^{-iZ}).
Complex SpectralKernel::a11(int, int col) const { return ratio_ + 2.0 * (1.0 - cos_x_[col]); }
Complex SpectralKernel::a22(int row, int) const { return ratio_ + 2.0 * (1.0 - cos_y_[row]); }

Complex SpectralKernel::a12(int row, int col) const {
  const Complex forward_x(cos_x_[col] - 1.0, sin_x_[col]);
  const Complex backward_y(1.0 - cos_y_[row], sin_y_[row]);
  return -forward_x * backward_y;
}

Complex SpectralKernel::a21(int row, int col) const {
  const Complex forward_y(cos_y_[row] - 1.0, sin_y_[row]);
  const Complex backward_x(1.0 - cos_x_[col], sin_x_[col]);
  return -forward_y * backward_x;
}

double SpectralKernel::determinant(int row, int col) const {
  return ratio_ * ratio_ - 2.0 * ratio_ * (cos_x_[col] + cos_y_[row] - 2.0);
}

VectorField solve_coupled_field(const ScalarField& h1, const ScalarField& h2,
                                const SpectralKernel& k, double* max_imag) {
  require_same_shape(h1, h2, "solve_coupled_field rhs");
  if (h1.width() != k.width() || h1.height() != k.height())
    throw DimensionError("solve_coupled_field: kernel does not match field size");

  const FftPlan& plan = k.plan();
  const ComplexField H1 = plan.forward(h1);
  const ComplexField H2 = plan.forward(h2);
  ComplexField P1(k.width(), k.height()), P2(k.width(), k.height());
  // The kernel rejects ratio <= 0, so det >= ratio^2 > 0 at every frequency.
#pragma omp parallel for schedule(static)
  for (int i = 0; i < k.height(); ++i) {
    for (int j = 0; j < k.width(); ++j) {
      const double det = k.determinant(i, j);
      P1(i, j) = (k.a22(i, j) * H1(i, j) - k.a12(i, j) * H2(i, j)) / det;
      P2(i, j) = (k.a11(i, j) * H2(i, j) - k.a21(i, j) * H1(i, j)) / det;
    }
  }
  double imag1 = 0.0, imag2 = 0.0;
  VectorField p(plan.inverse(P1, &imag1), plan.inverse(P2, &imag2));
  if (max_imag) *max_imag = std::max(imag1, imag2);
  return p;
}

VectorField apply_coupled_operator(const VectorField& p, double ratio) {
  const VectorField gd = gradient_periodic(divergence_periodic(p));
  return ratio * p - gd;
}

}  // namespace uwr
