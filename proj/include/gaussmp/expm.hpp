#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

namespace gaussmp {

// Dense matrix exponential. Backed by Eigen's Pade scaling-and-squaring
// implementation (unsupported/MatrixFunctions), which delivers far better
// than the 1e-12 relative accuracy the state generators need.
inline Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& A) {
    return A.exp();
}

}  // namespace gaussmp
