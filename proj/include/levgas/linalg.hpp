#pragma once

#include "levgas/errors.hpp"
#include "levgas/types.hpp"

namespace levgas {

/// Eigendecomposition of a Hermitian operator. `values` are ascending and
/// column k of `vectors` belongs to values[k].
struct EigenSystem {
  RealVector values;
  ComplexMatrix vectors;

  int dim() const { return static_cast<int>(values.size()); }
};

/// Reference eigenvectors from a previous grid point, used to keep the
/// moving eigenbasis smooth (phase and ordering) across grid points.
struct GaugeFrame {
  ComplexMatrix vectors;

  int dim() const { return static_cast<int>(vectors.rows()); }
};

/// (A + A^dag)/2. Idempotent on Hermitian input.
template <typename Derived>
ComplexMatrix hermitize(const Eigen::MatrixBase<Derived>& a) {
  return 0.5 * (a + a.adjoint()).eval();
}

/// Largest entrywise deviation from Hermitian symmetry.
double max_nonhermiticity(const ComplexMatrix& a);

bool is_hermitian(const ComplexMatrix& a, double tol = kHermitianTol);

/// Diagonalize a Hermitian operator; ascending eigenvalues, unitary
/// eigenvectors. Throws NonHermitianInput if max |H - H^dag| entry exceeds
/// the tolerance.
EigenSystem eigh(const ComplexMatrix& h);

/// Permute and phase-rotate `fresh` so each column has real non-negative
/// overlap with the matching column of `frame`; eigenvalues are permuted
/// consistently. Throws AmbiguousAlignment when the best overlap drops
/// below 1/sqrt(2) or the max-overlap matching is not one-to-one.
EigenSystem gauge_align(const GaugeFrame& frame, const EigenSystem& fresh);

/// tr(rho^2).
double purity(const ComplexMatrix& rho);

}  // namespace levgas
