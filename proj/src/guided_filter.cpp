#include "uwr/guided_filter.hpp"

#include "uwr/error.hpp"

namespace uwr {

void GuidedFilterParams::validate() const {
  if (radius < 1) throw ParameterError("guided filter radius must be >= 1");
  if (!(eps > 0.0)) throw ParameterError("guided filter eps must be > 0");
}

ScalarField guided_filter(const ScalarField& guide, const ScalarField& input,
                          const GuidedFilterParams& p) {
  p.validate();
  require_same_shape(guide, input, "guided_filter");
  const int w = guide.width(), h = guide.height();
  const std::size_t n = guide.size();

  ScalarField gg(w, h), gi(w, h);
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < n; ++k) {
    gg[k] = guide[k] * guide[k];
    gi[k] = guide[k] * input[k];
  }
  const ScalarField mean_g = box_mean(guide, p.radius);
  const ScalarField mean_i = box_mean(input, p.radius);
  const ScalarField corr_gg = box_mean(gg, p.radius);
  const ScalarField corr_gi = box_mean(gi, p.radius);

  ScalarField a(w, h), b(w, h);
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < n; ++k) {
    const double var = corr_gg[k] - mean_g[k] * mean_g[k];
    const double cov = corr_gi[k] - mean_g[k] * mean_i[k];
    a[k] = cov / (var + p.eps);
    b[k] = mean_i[k] - a[k] * mean_g[k];
  }
  const ScalarField mean_a = box_mean(a, p.radius);
  const ScalarField mean_b = box_mean(b, p.radius);

  ScalarField out(w, h);
#pragma omp parallel for schedule(static)
  for (std::size_t k = 0; k < n; ++k) out[k] = mean_a[k] * guide[k] + mean_b[k];
  return out;
}

}  // namespace uwr
