#include "levgas/linalg.hpp"

#include <cmath>
#include <vector>

namespace levgas {

double max_nonhermiticity(const ComplexMatrix& a) {
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return max_nonhermiticity(a) <= tol;
}

EigenSystem eigh(const ComplexMatrix& h) {
  if (h.rows() != h.cols()) {
    throw DimensionMismatch("eigh: matrix is not square");
  }
  const double dev = max_nonhermiticity(h);
  if (dev > kHermitianTol) {
    throw NonHermitianInput("eigh: max |H - H^dag| entry = " + std::to_string(dev));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitize(h));
  if (solver.info() != Eigen::Success) {
    throw Error("linalg", "eigh: eigendecomposition did not converge");
  }
  return EigenSystem{solver.eigenvalues(), solver.eigenvectors()};
}

EigenSystem gauge_align(const GaugeFrame& frame, const EigenSystem& fresh) {
  const int n = fresh.dim();
  if (frame.dim() != n) {
    throw DimensionMismatch("gauge_align: frame and fresh system differ in dimension");
  }
  const ComplexMatrix overlap = frame.vectors.adjoint() * fresh.vectors;

  // Match each fresh column to the reference column it overlaps most.
  std::vector<int> target(n, -1);
  std::vector<bool> used(n, false);
  for (int j = 0; j < n; ++j) {
    int best = 0;
    double best_mag = -1.0;
    for (int k = 0; k < n; ++k) {
      const double mag = std::abs(overlap(k, j));
      if (mag > best_mag) {
        best_mag = mag;
        best = k;
      }
    }
    if (best_mag < kAlignmentFloor) {
      throw AmbiguousAlignment("gauge_align: best overlap " + std::to_string(best_mag) +
                               " for column " + std::to_string(j) +
                               " is below 1/sqrt(2); grid too coarse near an anticrossing");
    }
    if (used[best]) {
      throw AmbiguousAlignment("gauge_align: columns compete for reference index " +
                               std::to_string(best));
    }
    used[best] = true;
    target[j] = best;
  }

  EigenSystem aligned;
  aligned.values.resize(n);
  aligned.vectors.resize(n, n);
  for (int j = 0; j < n; ++j) {
    const int k = target[j];
    const Complex o = overlap(k, j);
    if (o.imag() == 0.0 && o.real() > 0.0) {
      aligned.vectors.col(k) = fresh.vectors.col(j);
    } else {
      const Complex phase = std::polar(1.0, -std::arg(o));
      aligned.vectors.col(k) = fresh.vectors.col(j) * phase;
    }
    aligned.values[k] = fresh.values[j];
  }
  return aligned;
}

double purity(const ComplexMatrix& rho) {
  return (rho * rho).trace().real();
}

}  // namespace levgas
