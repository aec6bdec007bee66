#pragma once

#include <Eigen/Dense>

namespace glebd {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;

enum class ExecutionPolicy { serial, openmp };

}  // namespace glebd
