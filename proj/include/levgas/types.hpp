#pragma once

#include <complex>

#include <Eigen/Dense>

namespace levgas {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Max entrywise |H - H^dag| accepted before an operator is rejected as
/// non-Hermitian.
inline constexpr double kHermitianTol = 1e-8;

/// Overlap below which eigenvector continuation between neighboring grid
/// points is considered ambiguous (1/sqrt(2)).
inline constexpr double kAlignmentFloor = 0.70710678118654752440;

/// Relative spectral-gap floor below which level initialization refuses to
/// define gas coordinates.
inline constexpr double kInitGapFloor = 1e-10;

}  // namespace levgas
