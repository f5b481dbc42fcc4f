#pragma once

#include "shiftspace/types.hpp"

namespace shiftspace {

// Kronecker product A (x) B.
inline CMat kron(const CMat& A, const CMat& B) {
  CMat out(A.rows() * B.rows(), A.cols() * B.cols());
  for (Eigen::Index i = 0; i < A.rows(); ++i) {
    for (Eigen::Index j = 0; j < A.cols(); ++j) {
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
    }
  }
  return out;
}

// Row expansion Z (x) I_p used to map C^{Np} coefficient blocks to C^p values.
inline CMat kron_row(const Eigen::RowVectorXcd& Z, int p) {
  CMat out = CMat::Zero(p, Z.cols() * p);
  for (Eigen::Index n = 0; n < Z.cols(); ++n) {
    out.block(0, n * p, p, p) = Z(n) * CMat::Identity(p, p);
  }
  return out;
}

}  // namespace shiftspace
