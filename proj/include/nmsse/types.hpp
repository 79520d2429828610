// types.hpp — shared scalar/matrix typedefs

#pragma once

#include <Eigen/Dense>
#include <complex>

namespace nmsse {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

}  // namespace nmsse
