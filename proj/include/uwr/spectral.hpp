#pragma once

// 2-D FFT utilities and the spectral solver for the coupled vector-field
// systems of the form
//
//     r * p - grad(div p) = h          (periodic forward grad / backward div)
//
// which arise from the p (r = mu4/mu3) and m (r = mu5/mu6) subproblems. Under
// periodic boundaries the operator is diagonalized by the DFT into one 2x2
// complex system per frequency, solved by Cramer's rule.
//
// FFT convention: forward unnormalized, inverse scaled by 1/(W*H).

#include <complex>
#include <memory>
#include <vector>

#include "uwr/field.hpp"

namespace uwr {

using Complex = std::complex<double>;

class ComplexField {
 public:
  ComplexField() = default;
  ComplexField(int width, int height) : width_(width), height_(height),
      data_(static_cast<std::size_t>(width) * height) {}

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }
  Complex& operator()(int row, int col) { return data_[static_cast<std::size_t>(row) * width_ + col]; }
  const Complex& operator()(int row, int col) const {
    return data_[static_cast<std::size_t>(row) * width_ + col];
  }
  Complex& operator[](std::size_t k) { return data_[k]; }
  const Complex& operator[](std::size_t k) const { return data_[k]; }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<Complex> data_;
};

// Owns a forward/backward FFTW plan pair for one size. Executing a plan is
// thread-safe, so a const FftPlan can be shared across threads.
class FftPlan {
 public:
  FftPlan(int width, int height);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  int width() const { return width_; }
  int height() const { return height_; }

  ComplexField forward(const ScalarField& f) const;
  // Real part of the scaled inverse. If max_imag is given it receives the
  // largest |imaginary part| that was discarded.
  ScalarField inverse(const ComplexField& F, double* max_imag = nullptr) const;

 private:
  struct Impl;
  int width_;
  int height_;
  std::unique_ptr<Impl> impl_;
};

ComplexField fft2_forward(const ScalarField& f);
ScalarField fft2_inverse(const ComplexField& F, double* max_imag = nullptr);

class SpectralKernel {
 public:
  // ratio: mu4/mu3 for the p subproblem, mu5/mu6 for the m subproblem.
  SpectralKernel(int width, int height, double ratio);

  int width() const { return width_; }
  int height() const { return height_; }
  double ratio() const { return ratio_; }

  // Frequency tables: Z_x = 2 pi k / width along columns, Z_y along rows.
  double cos_x(int col) const { return cos_x_[col]; }
  double sin_x(int col) const { return sin_x_[col]; }
  double cos_y(int row) const { return cos_y_[row]; }
  double sin_y(int row) const { return sin_y_[row]; }

  Complex a11(int row, int col) const;
  Complex a12(int row, int col) const;
  Complex a21(int row, int col) const;
  Complex a22(int row, int col) const;
  // a11*a22 - a12*a21, which simplifies to r^2 - 2r(cos Z_x + cos Z_y - 2).
  double determinant(int row, int col) const;

  const FftPlan& plan() const { return *plan_; }

 private:
  int width_;
  int height_;
  double ratio_;
  std::vector<double> cos_x_, sin_x_, cos_y_, sin_y_;
  std::shared_ptr<const FftPlan> plan_;
};

// Solves r*p - grad(div p) = (h1, h2) with periodic stencils.
VectorField solve_coupled_field(const ScalarField& h1, const ScalarField& h2,
                                const SpectralKernel& k, double* max_imag = nullptr);

// r*p - grad(div p), periodic stencils; the operator solve_coupled_field inverts.
VectorField apply_coupled_operator(const VectorField& p, double ratio);

}  // namespace uwr
