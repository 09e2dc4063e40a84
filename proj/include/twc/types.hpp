#pragma once

#include <complex>

#include <Eigen/Dense>

namespace twc {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

// Library version embedded in every CLI output.
inline constexpr const char* kVersion = "0.1.0";

}  // namespace twc
