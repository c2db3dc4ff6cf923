#include "levgas/noise.hpp"

#include <cmath>

namespace levgas {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

NoiseProcess::NoiseProcess(NoiseKind kind, int dim, double gamma, double sigma,
                           std::uint64_t seed)
    : kind_(kind),
      dim_(dim),
      gamma_(gamma),
      sigma_(sigma),
      current_(ComplexMatrix::Zero(dim, dim)),
      rng_(seed) {
  if (dim < 1) {
    throw DimensionMismatch("noise: dimension must be at least 1");
  }
  if (sigma < 0.0) {
    throw ConfigError("noise: sigma must be non-negative");
  }
  if (gamma < 0.0) {
    throw ConfigError("noise: gamma must be non-negative");
  }
}

NoiseProcess NoiseProcess::zero(int dim) {
  return NoiseProcess(NoiseKind::kNone, dim, 0.0, 0.0, 0);
}

NoiseProcess NoiseProcess::wiener(int dim, double sigma, std::uint64_t seed) {
  return NoiseProcess(NoiseKind::kWiener, dim, 0.0, sigma, seed);
}

NoiseProcess NoiseProcess::ornstein_uhlenbeck(int dim, double gamma, double sigma,
                                              std::uint64_t seed,
                                              const ComplexMatrix& dh0) {
  NoiseProcess p(NoiseKind::kOrnsteinUhlenbeck, dim, gamma, sigma, seed);
  if (dh0.size() != 0) {
    if (dh0.rows() != dim || dh0.cols() != dim) {
      throw DimensionMismatch("noise: initial dh dimension differs");
    }
    p.current_ = 0.5 * (dh0 + dh0.adjoint());
  }
  return p;
}

ComplexMatrix NoiseProcess::draw_hermitian_gaussian(double variance) {
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  const double scale = std::sqrt(variance);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int i = 0; i < dim_; ++i) {
    out(i, i) = Complex(scale * gauss(rng_), 0.0);
  }
  for (int i = 0; i < dim_; ++i) {
    for (int j = i + 1; j < dim_; ++j) {
      const double re = scale * gauss(rng_);
      const double im = scale * gauss(rng_);
      const Complex z(kInvSqrt2 * re, kInvSqrt2 * im);
      out(i, j) = z;
      out(j, i) = std::conj(z);
    }
  }
  return out;
}

NoiseIncrement NoiseProcess::step(double d_lambda) {
  if (kind_ == NoiseKind::kNone) {
    NoiseIncrement inc;
    inc.d_dh = ComplexMatrix::Zero(dim_, dim_);
    inc.dh_dot = ComplexMatrix::Zero(dim_, dim_);
    return inc;
  }
  if (!(d_lambda > 0.0)) {
    throw NonPositiveStep("noise: d_lambda must be positive, got " +
                          std::to_string(d_lambda));
  }
  NoiseIncrement inc;
  inc.d_dh = draw_hermitian_gaussian(sigma_ * sigma_ * d_lambda);
  if (kind_ == NoiseKind::kOrnsteinUhlenbeck && gamma_ != 0.0) {
    inc.d_dh += (-gamma_ * d_lambda) * current_;
  }
  inc.dh_dot = inc.d_dh / d_lambda;
  current_ += inc.d_dh;
  return inc;
}

}  // namespace levgas
