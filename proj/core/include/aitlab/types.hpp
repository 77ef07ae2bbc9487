#pragma once

#include <complex>

#include <Eigen/Dense>

namespace aitlab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Extended precision for long products of non-normal matrices.
using ComplexL = std::complex<long double>;
using MatrixL = Eigen::Matrix<ComplexL, Eigen::Dynamic, Eigen::Dynamic>;
using VectorL = Eigen::Matrix<ComplexL, Eigen::Dynamic, 1>;

}  // namespace aitlab
