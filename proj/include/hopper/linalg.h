// Copyright 2026 The Passive Hopper Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Small dense linear algebra: LU solves and a nonsymmetric eigenvalue solver.

#ifndef HOPPER_LINALG_H_
#define HOPPER_LINALG_H_

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/LU>

namespace hopper {

class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(const std::string& what, double condition_estimate)
      : std::runtime_error(what), condition_estimate_(condition_estimate) {}
  double condition_estimate() const { return condition_estimate_; }

 private:
  double condition_estimate_;
};

class EigenvalueError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reciprocal-condition threshold below which LuSolve reports singularity.
inline constexpr double kSingularConditionLimit = 1e12;

// Solves A x = b by LU with partial pivoting. Throws SingularMatrixError when
// the estimated 1-norm condition number exceeds kSingularConditionLimit.
template <typename MatrixType, typename VectorType>
Eigen::Matrix<double, MatrixType::RowsAtCompileTime, 1,
              Eigen::ColMajor, MatrixType::MaxRowsAtCompileTime, 1>
LuSolve(const Eigen::MatrixBase<MatrixType>& A,
        const Eigen::MatrixBase<VectorType>& b) {
  using Plain = typename MatrixType::PlainObject;
  if (A.rows() != A.cols() || A.rows() != b.rows()) {
    throw std::invalid_argument("LuSolve: dimension mismatch");
  }
  Eigen::PartialPivLU<Plain> lu(A.derived());
  const double rcond = lu.rcond();
  if (!(rcond * kSingularConditionLimit > 1.0)) {
    const double cond = rcond > 0.0 ? 1.0 / rcond
                                    : std::numeric_limits<double>::infinity();
    throw SingularMatrixError(
        "LuSolve: matrix is numerically singular (condition estimate " +
            std::to_string(cond) + ")",
        cond);
  }
  return lu.solve(b.derived());
}

// Eigenvalues of a real square matrix (n <= 8 is the supported range, larger
// inputs work but are not tuned). Uses Householder reduction to upper
// Hessenberg form followed by Francis double-shift QR. Complex conjugate pairs
// are adjacent (positive imaginary part first) and the list is sorted by
// descending magnitude. Throws EigenvalueError if QR does not converge.
std::vector<std::complex<double>> Eigenvalues(const Eigen::MatrixXd& A);

}  // namespace hopper

#endif  // HOPPER_LINALG_H_
