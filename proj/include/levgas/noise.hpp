#pragma once

#include <cstdint>
#include <random>

#include "levgas/errors.hpp"
#include "levgas/types.hpp"

namespace levgas {

enum class NoiseKind { kNone, kWiener, kOrnsteinUhlenbeck };

/// One step of the noise stream: the Hermitian increment accumulated over
/// d_lambda, and the rate d(dh)/d_lambda used by the stochastic equations
/// for that step.
struct NoiseIncrement {
  ComplexMatrix d_dh;
  ComplexMatrix dh_dot;
};

/// Stateful Hermitian noise source dh(lambda). The value `current` and every
/// increment are Hermitian with real diagonal by construction. A process is
/// single-owner mutable state: one process per trajectory, seeded streams
/// derived from a master seed when trajectories run concurrently.
class NoiseProcess {
 public:
  /// Identically-zero noise.
  static NoiseProcess zero(int dim);

  /// Hermitian Wiener process indexed by lambda. Diagonal increments are
  /// N(0, sigma^2 d_lambda); off-diagonal increments (x+iy)/sqrt(2) with
  /// x, y ~ N(0, sigma^2 d_lambda), conjugate-mirrored, so every entry has
  /// E|d(dh)_mn|^2 = sigma^2 d_lambda.
  static NoiseProcess wiener(int dim, double sigma, std::uint64_t seed);

  /// Mean-reverting process d(dh) = -gamma * dh * d_lambda + sigma * dW with
  /// the same Hermitian dW convention. gamma = 0 reduces to the Wiener
  /// process draw-for-draw.
  static NoiseProcess ornstein_uhlenbeck(int dim, double gamma, double sigma,
                                         std::uint64_t seed,
                                         const ComplexMatrix& dh0 = ComplexMatrix());

  /// Advance by d_lambda > 0 and return the increment for the step.
  /// kind == none accepts any d_lambda and returns zeros.
  NoiseIncrement step(double d_lambda);

  NoiseKind kind() const { return kind_; }
  int dim() const { return dim_; }
  double gamma() const { return gamma_; }
  double sigma() const { return sigma_; }
  const ComplexMatrix& current() const { return current_; }

 private:
  NoiseProcess(NoiseKind kind, int dim, double gamma, double sigma, std::uint64_t seed);

  /// Hermitian matrix of independent N(0, variance) entries in the
  /// convention above. Fixed draw order: diagonal first, then upper
  /// triangle row-major (real before imaginary part).
  ComplexMatrix draw_hermitian_gaussian(double variance);

  NoiseKind kind_;
  int dim_;
  double gamma_;
  double sigma_;
  ComplexMatrix current_;
  std::mt19937_64 rng_;
};

}  // namespace levgas
